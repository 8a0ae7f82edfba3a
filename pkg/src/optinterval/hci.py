"""Maximum-confidence interval under a hit-support lower bound.

Given pairs ``(h_i, s_i)`` with ``s_i > 0`` and a bound ``L_h``, find
``[i, j]`` maximising ``hit(i, j) / sup(i, j)`` subject to
``hit(i, j) >= L_h``.

The offline solver runs in linear time: one pass computes the rightmost
partner of every good index (a monotone deque of candidate left ends), and
a second pass walks the good indices calling BEST with non-decreasing
bounds.  BEST's jump target ``phi`` is read off a lower convex hull of the
boundary points ``(P_S[t], P_H[t])`` that is only ever extended on the right
and trimmed on the left, so the whole sweep is amortised O(n).
"""
from __future__ import annotations

import math
import numbers
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _kernels
from ._accel import USING_NUMBA, python_impl
from .core import (
    INT64_SAFE,
    IndexInterval,
    PairSequence,
    PrefixSums,
    UsageError,
    ValidationError,
    build_prefix_sums,
    compare_conf,
    validate_sequence,
)


@dataclass(frozen=True)
class HciAnswer:
    """Result of a confidence search; ``interval`` is None when nothing is feasible."""

    interval: Optional[IndexInterval]
    confidence: object = -math.inf

    @property
    def found(self) -> bool:
        return self.interval is not None


ABSENT = HciAnswer(None, -math.inf)


@dataclass(frozen=True, eq=False)
class RmpResult:
    """Rightmost partners: ``R[q]`` for good ``q``, ``-1`` for bad ``q`` (1-based)."""

    values: np.ndarray

    def __getitem__(self, q: int) -> int:
        if not 1 <= q <= len(self.values):
            raise IndexError(q)
        return int(self.values[q - 1])

    def __len__(self) -> int:
        return len(self.values)

    def tolist(self) -> list[int]:
        return [int(v) for v in self.values]

    def good_indices(self) -> list[int]:
        return [q for q, r in enumerate(self.values, 1) if r != -1]


def _coerce(D) -> PairSequence:
    return D if isinstance(D, PairSequence) else validate_sequence(D)


def _exact_bound(lh, exact: bool):
    """Integer-data bound equivalent to ``hit >= lh``."""
    if not exact:
        return float(lh)
    return math.ceil(Fraction(lh)) if not isinstance(lh, int) else lh


def _kernel_args(prefix: PrefixSums, *extra):
    """Arrays for the kernels plus the function flavour that can run them.

    int64 data is handed to the compiled kernels only when every product a
    comparison can form stays below 2**62; otherwise Python integers are used.
    """
    ph, ps = prefix.ph, prefix.ps
    if not prefix.exact:
        use_jit = USING_NUMBA
        return ph, ps, use_jit
    if ph.dtype == np.int64 and ps.dtype == np.int64 and len(ph) > 0:
        span = 2 * int(np.abs(ph).max()) + 1
        for e in extra:
            span = max(span, abs(int(e)) + 1)
        if 2 * span * (int(ps[-1]) + 1) < INT64_SAFE:
            return ph, ps, USING_NUMBA
    return [int(v) for v in ph], [int(v) for v in ps], False


def _call(kernel, use_jit: bool, *args):
    if use_jit:
        return kernel(*args)
    fn = python_impl(kernel)
    args = [a.tolist() if isinstance(a, np.ndarray) else a for a in args]
    return fn(*args)


def _clamp_lh(prefix: PrefixSums, lh):
    # no hit exceeds twice the largest |prefix|; keeps the bound int64-sized
    if prefix.exact and prefix.n:
        cap = 2 * max(abs(int(v)) for v in (prefix.ph.max(), prefix.ph.min())) + 1
        return min(lh, cap)
    return lh


def compute_rmp(prefix: PrefixSums, lh) -> RmpResult:
    """Rightmost partner of each good index; bad indices get -1.

    ``p`` in ``1..q`` is a partner of ``q`` when ``hit(p, q) >= lh``; ``0``
    is a partner of every ``q``.  Requires ``lh >= 0``.
    """
    if lh < 0:
        raise UsageError("compute_rmp needs L_h >= 0; normalise negative bounds first")
    lh = _clamp_lh(prefix, _exact_bound(lh, prefix.exact))
    ph, _, use_jit = _kernel_args(prefix, lh)
    R = _call(_kernels.rmp_kernel, use_jit, ph, lh)
    return RmpResult(np.asarray(R, dtype=np.int64)[1:])


def phi(prefix: PrefixSums, x: int, y: int) -> int:
    """Largest ``z`` in ``[x, y]`` minimising ``conf(x, z)`` (direct scan)."""
    if not 1 <= x <= y <= prefix.n:
        raise UsageError(f"phi needs 1 <= x <= y <= n, got x={x}, y={y}")
    best = x
    bh, bs = prefix.hit(x, x), prefix.sup(x, x)
    for z in range(x + 1, y + 1):
        h, s = prefix.hit(x, z), prefix.sup(x, z)
        if compare_conf(h, s, bh, bs) <= 0:
            best, bh, bs = z, h, s
    return best


class BestSession:
    """Consecutive BEST calls sharing a left pointer that never moves back.

    ``best_step(u, q)`` returns the largest ``p`` in ``[max(l, 1), u]``
    maximising ``conf(p, q)`` (``0`` when ``u == 0``) and moves ``l`` there.
    Calls must supply non-decreasing ``u`` with ``l <= u <= q``.

    ``ph`` and ``ps`` are boundary-indexed prefix sequences; they may be lists
    that grow between calls (the streaming solver relies on this).
    """

    def __init__(self, ph: Sequence, ps: Sequence, l: int = 0, exact: bool = True):
        if l < 0:
            raise UsageError("left pointer must be >= 0")
        self.ph = ph
        self.ps = ps
        self.exact = exact
        self.l = l
        self._last_u = l
        front = max(l - 1, 0)
        self._hull = deque([front])
        self._y = front

    @classmethod
    def for_prefix(cls, prefix: PrefixSums, l: int = 0) -> "BestSession":
        return cls(prefix.ph, prefix.ps, l, prefix.exact)

    def _val(self, seq, t):
        v = seq[t]
        return int(v) if self.exact else float(v)

    def _point(self, t):
        return self._val(self.ps, t), self._val(self.ph, t)

    def _extend_hull(self, upto: int) -> None:
        hull = self._hull
        while self._y < upto:
            self._y += 1
            cx, cy = self._point(self._y)
            while len(hull) >= 2:
                ax, ay = self._point(hull[-2])
                bx, by = self._point(hull[-1])
                if (bx - ax) * (cy - ay) - (by - ay) * (cx - ax) <= 0:
                    hull.pop()
                else:
                    break
            hull.append(self._y)

    def best_step(self, u: int, q: int) -> int:
        if u < self._last_u or u < self.l:
            raise UsageError(f"BEST bound u={u} moved backwards (l={self.l}, previous u={self._last_u})")
        if u > q or q > len(self.ph) - 1:
            raise UsageError(f"BEST needs u <= q <= n, got u={u}, q={q}")
        self._last_u = u
        if u == 0:
            return 0
        p = max(self.l, 1)
        self._extend_hull(u - 1)
        hull = self._hull
        hq, sq = self._val(self.ph, q), self._val(self.ps, q)
        while p < u:
            z = hull[1]
            s0, h0 = self._point(p - 1)
            hz, sz = self._val(self.ph, z), self._val(self.ps, z)
            if compare_conf(hz - h0, sz - s0, hq - h0, sq - s0) <= 0:
                p = z + 1
                hull.popleft()
            else:
                break
        self.l = p
        return p


def best_step(session: BestSession, u: int, q: int) -> int:
    return session.best_step(u, q)


def _answer(prefix: PrefixSums, i: int, j: int) -> HciAnswer:
    value = prefix.conf(i, j)
    return HciAnswer(IndexInterval(i, j, value), value)


def _solve_nonnegative(prefix: PrefixSums, lh) -> HciAnswer:
    lh = _clamp_lh(prefix, _exact_bound(lh, prefix.exact))
    ph, ps, use_jit = _kernel_args(prefix, lh)
    R = _call(_kernels.rmp_kernel, use_jit, ph, lh)
    alpha, beta = _call(_kernels.hci_kernel, use_jit, ph, ps, np.asarray(R, np.int64), prefix.exact)
    if alpha == 0:
        return ABSENT
    return _answer(prefix, int(alpha), int(beta))


@dataclass(frozen=True, eq=False)
class NegativeBoundPlan:
    """How a (possibly negative) bound is handled.

    ``kind`` is ``"unchanged"``, ``"reset"`` (bound replaced by 0) or
    ``"reduce"`` (solve ``reduced`` under support cap ``cap``).
    """

    kind: str
    lh: object
    reduced: Optional[PairSequence] = None
    cap: object = None


def normalize_negative_lh(D, lh) -> NegativeBoundPlan:
    D = _coerce(D)
    if lh >= 0:
        return NegativeBoundPlan("unchanged", lh)
    if D.n and any(h >= 0 for h in D.h):
        return NegativeBoundPlan("reset", 0)
    # every hit negative: swap roles, (h, s) -> (s, -h), and cap the new support
    swapped = [(s, -h) for h, s in zip(D.h.tolist(), D.s.tolist())]
    reduced = validate_sequence(swapped, D.mode)
    return NegativeBoundPlan("reduce", lh, reduced, -lh)


def max_conf_support_capped(D, cap) -> HciAnswer:
    """Maximum-confidence interval with ``sup(i, j) <= cap``.

    Scans every feasible left end for each right end: O(n * w) where ``w`` is
    the widest feasible window.
    """
    D = _coerce(D)
    if not cap > 0:
        raise UsageError("support cap must be positive")
    prefix = build_prefix_sums(D)
    if prefix.exact:
        cap = math.floor(Fraction(cap)) if not isinstance(cap, int) else cap
        cap = min(cap, int(prefix.ps[-1]) if prefix.n else cap)
    else:
        cap = float(cap)
    ph, ps, use_jit = _kernel_args(prefix, cap)
    alpha, beta = _call(_kernels.capped_kernel, use_jit, ph, ps, cap, prefix.exact)
    if alpha == 0:
        return ABSENT
    return _answer(prefix, int(alpha), int(beta))


def compute_hci(D, lh) -> HciAnswer:
    """Endorsed interval (``hit >= lh``) of maximum confidence, or ABSENT.

    Among optimal intervals the one with the earliest right end is reported.
    Negative ``lh`` is either reset to 0 (when some ``h_i >= 0``) or solved
    through the support-capped reduction.
    """
    D = _coerce(D)
    plan = normalize_negative_lh(D, lh)
    if plan.kind == "reduce":
        ans = max_conf_support_capped(plan.reduced, plan.cap)
        if not ans.found:
            return ABSENT
        return _answer(build_prefix_sums(D), ans.interval.start, ans.interval.end)
    return _solve_nonnegative(build_prefix_sums(D), plan.lh)


class PartnerDeque:
    """Incremental rightmost-partner computation over a growing prefix list."""

    def __init__(self, ph: Sequence, lh):
        self.ph = ph
        self.lh = lh
        self.rhat = 0
        self.candidates: deque[int] = deque()
        self.i = 0

    def advance(self) -> int:
        """Process the next position; returns its R value (-1 if bad)."""
        self.i += 1
        i, ph, C, lh = self.i, self.ph, self.candidates, self.lh
        while C and ph[C[-1] - 1] >= ph[i - 1]:
            C.pop()
        C.append(i)
        rhat = self.rhat
        if rhat == 0 or ph[i] - ph[rhat - 1] >= lh or ph[i] - ph[C[0] - 1] >= lh:
            while C and ph[i] - ph[C[0] - 1] >= lh:
                rhat = C.popleft()
            self.rhat = rhat
            return rhat
        return -1


class HciStream:
    """Online solver: after each :meth:`push` the answer covers the prefix so far.

    ``mode`` is ``"exact"``, ``"float"`` or ``None``; with ``None`` the stream
    is exact until the first non-integer value arrives and floating from then
    on.  Negative bounds are rejected (use :func:`compute_hci`).
    """

    def __init__(self, lh, mode: str | None = None):
        if lh < 0:
            raise UsageError("the online solver needs L_h >= 0; use compute_hci for negative bounds")
        if mode not in (None, "exact", "float"):
            raise UsageError(f"unknown numeric mode {mode!r}")
        self.mode = mode
        self.exact = mode != "float"
        self.lh_raw = lh
        self.ph: list = [0 if self.exact else 0.0]
        self.ps: list = [0 if self.exact else 0.0]
        self._partners = PartnerDeque(self.ph, _exact_bound(lh, self.exact))
        self._best = BestSession(self.ph, self.ps, 0, self.exact)
        self._incumbent: tuple[int, int] | None = None
        self.answer = ABSENT

    @property
    def n(self) -> int:
        return len(self.ph) - 1

    def _to_float(self) -> None:
        self.exact = False
        self.ph[:] = [float(v) for v in self.ph]
        self.ps[:] = [float(v) for v in self.ps]
        self._partners.lh = float(self.lh_raw)
        self._best.exact = False
        if self._incumbent is not None:
            i, j = self._incumbent
            value = self._conf(i, j)
            self.answer = HciAnswer(IndexInterval(i, j, value), value)

    def _conf(self, i, j):
        h, s = self.ph[j] - self.ph[i - 1], self.ps[j] - self.ps[i - 1]
        return Fraction(h, s) if self.exact else h / s

    def push(self, pair) -> HciAnswer:
        h, s = pair
        pos = self.n + 1
        if not s > 0:
            raise ValidationError(f"support must be positive (position {pos})", pos)
        integral = isinstance(h, numbers.Integral) and isinstance(s, numbers.Integral)
        if not integral and self.exact:
            if self.mode == "exact":
                raise ValidationError(f"exact mode needs integer values (position {pos})", pos)
            self._to_float()
        h, s = (int(h), int(s)) if self.exact else (float(h), float(s))
        self.ph.append(self.ph[-1] + h)
        self.ps.append(self.ps[-1] + s)
        q = pos
        r = self._partners.advance()
        if r > 0:
            l = self._best.best_step(r, q)
            inc = self._incumbent
            if inc is None or compare_conf(
                self.ph[q] - self.ph[l - 1], self.ps[q] - self.ps[l - 1],
                self.ph[inc[1]] - self.ph[inc[0] - 1], self.ps[inc[1]] - self.ps[inc[0] - 1],
            ) > 0:
                self._incumbent = (l, q)
                value = self._conf(l, q)
                self.answer = HciAnswer(IndexInterval(l, q, value), value)
        return self.answer

    def extend(self, pairs: Iterable) -> list[HciAnswer]:
        return [self.push(p) for p in pairs]


def hci_online_push(state: HciStream, pair) -> HciAnswer:
    return state.push(pair)
