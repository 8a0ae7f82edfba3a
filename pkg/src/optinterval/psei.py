"""Maximum-eccentricity interval under a length lower bound (plain sequences).

For ``s_i = 1`` the eccentricity of ``[i, j]`` is ``hit(i, j) / sqrt(j-i+1)``.
:func:`compute_psei` first finds the largest sum over intervals of length
``>= L`` and then branches on its sign:

* zero - that interval is optimal;
* positive - the optimum is positive and is found by a hull scan over the
  prefix points (the score, truncated at zero, is quasiconvex);
* negative - the optimum is shorter than ``2L``, so it lies in one of the
  overlapping blocks ``[2kL+1, 2kL+4L]``; each block is solved from its
  maximum consecutive sums profile, computed by min-plus convolution.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from . import _kernels
from ._accel import USING_NUMBA, python_impl
from .core import (
    INT64_SAFE,
    Eccentricity,
    IndexInterval,
    PairSequence,
    PrefixSums,
    UsageError,
    build_prefix_sums,
    compare_ecc,
    exact_array,
    validate_sequence,
)
from .minplus import blocked_convolution_packed, top_marker

CASE_ZERO, CASE_POSITIVE, CASE_NEGATIVE = 1, 2, 3


def truncated_ecc(length: float, hit: float) -> float:
    """``hit / sqrt(length)`` for ``hit >= 0``, else 0 (quasiconvex on R+ x R)."""
    return hit / math.sqrt(length) if hit >= 0 else 0.0


@dataclass(frozen=True)
class Block:
    """Inclusive position range ``[start, end]``."""

    start: int
    end: int

    @property
    def length(self) -> int:
        return self.end - self.start + 1


def blocks(n: int, L: int) -> Iterator[Block]:
    """``[2kL+1, min(2kL+4L, n)]`` for ``k = 0 .. (n-L) // (2L)``.

    Every interval with length in ``[L, 2L-1]`` fits inside one of them.
    """
    for k in range((n - L) // (2 * L) + 1):
        yield Block(2 * k * L + 1, min(2 * k * L + 4 * L, n))


class MaxSumsProfile(Sequence):
    """``w[j]`` (1-based) = largest sum of ``j`` consecutive values."""

    def __init__(self, values):
        self.values = tuple(values)

    def __getitem__(self, j):
        if isinstance(j, slice):
            raise TypeError("profile does not support slicing")
        if not 1 <= j <= len(self.values):
            raise IndexError(j)
        return self.values[j - 1]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __eq__(self, other):
        return list(self) == list(other)

    def __repr__(self):
        return f"MaxSumsProfile({list(self.values)!r})"


def _prefix_list(values) -> list:
    acc = [values[0] - values[0]]
    for v in values:
        acc.append(acc[-1] + v)
    return acc


def _profile_from_prefix(P: np.ndarray, exact: bool) -> list:
    """Max consecutive sums of the sequence whose prefix sums are ``P``."""
    m = len(P) - 1
    if exact:
        P = exact_array([int(v) for v in P])
        kind = "int64" if P.dtype == np.int64 and int(np.abs(P).max()) < 2**60 else "object"
        if kind == "object":
            P = np.array([int(v) for v in P], dtype=object)
    else:
        P = np.asarray(P, dtype=np.float64)
        kind = "float"
    x = P
    y = -P[::-1]
    z = blocked_convolution_packed(np.ascontiguousarray(x), np.ascontiguousarray(y), top_marker(kind))
    conv = int if exact else float
    return [conv(-z[m - j]) for j in range(1, m + 1)]


def max_consecutive_sums(H: Sequence) -> MaxSumsProfile:
    """Profile ``(w_1, ..., w_m)`` through one min-plus convolution.

    With ``P`` the prefix sums of ``H``, ``x = P`` and ``y = -reversed(P)``,
    the convolution satisfies ``z_{m-j} = min_i P[i] - P[i+j]``, so
    ``w_j = -z_{m-j}``.
    """
    H = list(H)
    if not H:
        raise UsageError("max_consecutive_sums needs at least one value")
    exact = all(isinstance(v, (int, np.integer)) and not isinstance(v, bool) for v in H)
    P = _prefix_list([int(v) for v in H] if exact else [float(v) for v in H])
    return MaxSumsProfile(_profile_from_prefix(P, exact))


def _require_plain(D) -> PairSequence:
    D = D if isinstance(D, PairSequence) else validate_sequence(D)
    if not D.plain:
        raise UsageError("the eccentricity solver needs a plain sequence (all supports 1)")
    return D


def _check_L(L: int, n: int) -> None:
    if not isinstance(L, (int, np.integer)) or not 1 <= L <= n:
        raise UsageError(f"length bound must be an integer in 1..{n}, got {L!r}")


def _kernel_ph(prefix: PrefixSums):
    """``(ph, use_jit)``; exact int64 data goes to numba only if ``h^2 * n`` fits."""
    ph = prefix.ph
    if not prefix.exact:
        return ph, USING_NUMBA
    if ph.dtype == np.int64:
        span = 2 * int(np.abs(ph).max()) + 1
        if span * span * (prefix.n + 1) < INT64_SAFE:
            return ph, USING_NUMBA
    return [int(v) for v in ph], False


def _run(kernel, use_jit, ph, *args):
    if use_jit:
        return kernel(ph, *args)
    ph = ph.tolist() if isinstance(ph, np.ndarray) else ph
    return python_impl(kernel)(ph, *args)


def _interval(prefix: PrefixSums, i: int, j: int, value) -> IndexInterval:
    return IndexInterval(int(i), int(j), value)


def max_hit_min_length(prefix: PrefixSums, L: int) -> IndexInterval:
    """Interval of length ``>= L`` with the largest hit-sum (value = that sum)."""
    _check_L(L, prefix.n)
    ph, use_jit = _kernel_ph(prefix)
    i, j = _run(_kernels.max_sum_kernel, use_jit, ph, L)
    return _interval(prefix, i, j, prefix.hit(int(i), int(j)))


def max_ecc_positive_case(prefix: PrefixSums, L: int) -> IndexInterval:
    """Eccentricity maximiser when some interval of length ``>= L`` has positive sum."""
    _check_L(L, prefix.n)
    ph, use_jit = _kernel_ph(prefix)
    i, j = _run(_kernels.ecc_hull_kernel, use_jit, ph, L, prefix.exact)
    value = prefix.ecc(int(i), int(j))
    if not value.hit > 0:
        raise UsageError("no interval of the required length has a positive sum")
    return _interval(prefix, i, j, value)


def block_best(prefix: PrefixSums, block: Block, L: int):
    """Best interval with length in ``[L, 2L-1]`` inside ``block``.

    Ties go to the shorter length, then the earlier start.  Returns
    ``(interval, eccentricity)``.
    """
    if block.length < L or block.start < 1 or block.end > prefix.n:
        raise UsageError(f"block {block} cannot hold an interval of length {L}")
    exact = prefix.exact
    P = prefix.ph[block.start - 1:block.end + 1]
    P = P - P[0]
    w = _profile_from_prefix(P, exact)
    best_len = None
    for j in range(L, min(2 * L - 1, block.length) + 1):
        if best_len is None or compare_ecc(w[j - 1], j, w[best_len - 1], best_len) > 0:
            best_len = j
    sums = P[best_len:] - P[:-best_len]
    start = block.start + int(np.argmax(sums))
    end = start + best_len - 1
    value = prefix.ecc(start, end)
    return _interval(prefix, start, end, value), value


def driver_case(prefix: PrefixSums, L: int) -> int:
    """Which of the three branches :func:`compute_psei` takes."""
    best = max_hit_min_length(prefix, L).value
    return CASE_ZERO if best == 0 else CASE_POSITIVE if best > 0 else CASE_NEGATIVE


def compute_psei(D, L: int) -> IndexInterval:
    """Interval of length ``>= L`` maximising ``hit / sqrt(length)``.

    ``D`` must be plain.  The returned interval's ``value`` is an
    :class:`~optinterval.core.Eccentricity`.
    """
    D = _require_plain(D)
    _check_L(L, D.n)
    prefix = build_prefix_sums(D)
    top = max_hit_min_length(prefix, L)
    if top.value == 0:
        return _interval(prefix, top.start, top.end, prefix.ecc(top.start, top.end))
    if top.value > 0:
        return max_ecc_positive_case(prefix, L)
    best = None
    for block in blocks(D.n, L):
        cand, value = block_best(prefix, block, L)
        if best is None or value > best.value:
            best = cand
    return best
