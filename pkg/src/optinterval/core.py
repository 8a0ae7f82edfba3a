"""Number-pair sequences, prefix sums and exact score comparisons.

Positions are 1-based: an interval ``[i, j]`` covers pairs ``i..j``.  Prefix
arrays are indexed by boundary ``t`` (``0..n``), so ``hit(i, j)`` is
``ph[j] - ph[i - 1]``.

Two numeric modes exist.  In *exact* mode every hit and support is an
integer and every comparison between confidences or eccentricities is
decided by integer cross-multiplication.  In *float* mode values are
IEEE doubles and comparisons are direct.
"""
from __future__ import annotations

import math
import numbers
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, NamedTuple, Sequence, Union

import numpy as np

#: Magnitude limit for values stored in int64 arrays.  Keeps the sum of any
#: two stored values representable, which the kernels rely on.
INT64_SAFE = 2**62

Number = Union[int, float, Fraction]
KINDS = ("sup", "hit", "conf", "ecc")


class IntervalError(ValueError):
    """Base class for errors raised by this package."""


class ValidationError(IntervalError):
    """Input data violates a precondition (e.g. a non-positive support)."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position


class UsageError(IntervalError):
    """An API was called with arguments outside its contract."""


class NumberPair(NamedTuple):
    h: Number
    s: Number


def is_exact_number(x) -> bool:
    return isinstance(x, numbers.Rational)


def exact_array(values: Sequence[int]) -> np.ndarray:
    """int64 array when every value is comfortably in range, else an object array."""
    vals = [int(v) for v in values]
    if all(-INT64_SAFE < v < INT64_SAFE for v in vals):
        return np.array(vals, dtype=np.int64)
    out = np.empty(len(vals), dtype=object)
    out[:] = vals
    return out


@dataclass(frozen=True, eq=False)
class PairSequence:
    """Validated input sequence ``D = ((h_1, s_1), ..., (h_n, s_n))``."""

    h: np.ndarray
    s: np.ndarray
    plain: bool
    exact: bool

    def __len__(self) -> int:
        return len(self.h)

    @property
    def n(self) -> int:
        return len(self.h)

    @property
    def pairs(self) -> list[NumberPair]:
        conv = int if self.exact else float
        return [NumberPair(conv(a), conv(b)) for a, b in zip(self.h, self.s)]

    @property
    def mode(self) -> str:
        return "exact" if self.exact else "float"


def validate_sequence(raw_pairs: Iterable, mode: str | None = None) -> PairSequence:
    """Check supports and pick the numeric mode.

    ``mode`` is ``"exact"``, ``"float"`` or ``None`` (exact iff every value is
    integral).  Raises :class:`ValidationError` naming the 1-based position of
    the first offending pair.
    """
    if mode not in (None, "exact", "float"):
        raise UsageError(f"unknown numeric mode {mode!r}")
    if isinstance(raw_pairs, np.ndarray) and raw_pairs.dtype.kind in "iuf":
        if raw_pairs.ndim != 2 or raw_pairs.shape[1] != 2:
            raise ValidationError(f"expected an (n, 2) array, got shape {raw_pairs.shape}")
        return validate_arrays(raw_pairs[:, 0], raw_pairs[:, 1], mode)
    hs, ss = [], []
    for pos, pair in enumerate(raw_pairs, start=1):
        try:
            h, s = pair
        except (TypeError, ValueError):
            raise ValidationError(f"expected an (h, s) pair (position {pos})", pos) from None
        for v in (h, s):
            if isinstance(v, bool) or not isinstance(v, numbers.Real):
                raise ValidationError(f"non-numeric value {v!r} (position {pos})", pos)
            if not math.isfinite(v):
                raise ValidationError(f"non-finite value (position {pos})", pos)
        if not s > 0:
            raise ValidationError(f"support must be positive (position {pos})", pos)
        hs.append(h)
        ss.append(s)

    integral = all(isinstance(v, numbers.Integral) for v in hs) and all(
        isinstance(v, numbers.Integral) for v in ss
    )
    if mode == "exact" and not integral:
        bad = next(
            i for i, (a, b) in enumerate(zip(hs, ss), 1)
            if not (isinstance(a, numbers.Integral) and isinstance(b, numbers.Integral))
        )
        raise ValidationError(f"exact mode needs integer values (position {bad})", bad)
    exact = integral if mode is None else mode == "exact"

    if exact:
        h_arr, s_arr = exact_array(hs), exact_array(ss)
    else:
        h_arr = np.array([float(v) for v in hs], dtype=np.float64)
        s_arr = np.array([float(v) for v in ss], dtype=np.float64)
    plain = all(v == 1 for v in ss)
    return PairSequence(h=h_arr, s=s_arr, plain=plain, exact=exact)


def _first_bad(mask: np.ndarray) -> int:
    return int(np.argmax(mask)) + 1


def _int_column(col: np.ndarray) -> np.ndarray:
    if col.dtype.kind == "i" or col.dtype.itemsize < 8:
        col = col.astype(np.int64)
        if col.size == 0 or (col.min() > -INT64_SAFE and col.max() < INT64_SAFE):
            return col
    return exact_array(col.tolist())


def validate_arrays(h, s, mode: str | None = None) -> PairSequence:
    """Vectorised :func:`validate_sequence` for numeric numpy columns.

    Integer dtypes count as integral, float dtypes do not (as with Python
    ``int`` and ``float`` values).
    """
    h, s = np.asarray(h), np.asarray(s)
    if h.ndim != 1 or h.shape != s.shape:
        raise ValidationError(f"h and s must be 1-d of equal length, got {h.shape} and {s.shape}")
    if h.dtype.kind not in "iuf" or s.dtype.kind not in "iuf":
        return validate_sequence(list(zip(h.tolist(), s.tolist())), mode)
    for col in (h, s):
        if col.dtype.kind == "f" and not np.isfinite(col).all():
            pos = _first_bad(~np.isfinite(col))
            raise ValidationError(f"non-finite value (position {pos})", pos)
    if not (s > 0).all():
        pos = _first_bad(~(s > 0))
        raise ValidationError(f"support must be positive (position {pos})", pos)
    integral = h.dtype.kind in "iu" and s.dtype.kind in "iu"
    if mode == "exact" and not integral:
        pos = 1
        raise ValidationError(f"exact mode needs integer values (position {pos})", pos)
    exact = integral if mode is None else mode == "exact"
    if exact:
        h_arr, s_arr = _int_column(h), _int_column(s)
    else:
        h_arr, s_arr = h.astype(np.float64), s.astype(np.float64)
    plain = bool((s == 1).all())
    return PairSequence(h=h_arr, s=s_arr, plain=plain, exact=exact)


def _cumsum0(values: np.ndarray, exact: bool) -> np.ndarray:
    n = len(values)
    if not exact:
        out = np.zeros(n + 1, dtype=np.float64)
        np.cumsum(values, out=out[1:])
        return out
    if values.dtype == np.int64:
        bound = int(np.abs(values).max()) if n else 0
        if bound * (n + 1) < INT64_SAFE:
            out = np.zeros(n + 1, dtype=np.int64)
            np.cumsum(values, out=out[1:])
            return out
    acc = [0]
    for v in values:
        acc.append(acc[-1] + int(v))
    return exact_array(acc)


@dataclass(frozen=True, eq=False)
class PrefixSums:
    """Boundary-indexed prefix sums ``ph[t] = h_1 + ... + h_t`` (same for ``ps``)."""

    ph: np.ndarray
    ps: np.ndarray
    exact: bool

    @property
    def n(self) -> int:
        return len(self.ph) - 1

    def _check(self, i: int, j: int) -> None:
        if not (1 <= i <= j <= self.n):
            raise UsageError(f"interval [{i}, {j}] outside 1..{self.n}")

    def _num(self, x):
        return int(x) if self.exact else float(x)

    def hit(self, i: int, j: int):
        self._check(i, j)
        return self._num(self.ph[j]) - self._num(self.ph[i - 1])

    def sup(self, i: int, j: int):
        self._check(i, j)
        return self._num(self.ps[j]) - self._num(self.ps[i - 1])

    def conf(self, i: int, j: int):
        h, s = self.hit(i, j), self.sup(i, j)
        return Fraction(h, s) if self.exact else h / s

    def ecc(self, i: int, j: int) -> "Eccentricity":
        return Eccentricity(self.hit(i, j), self.sup(i, j))

    def score(self, i: int, j: int, kind: str):
        if kind not in KINDS:
            raise UsageError(f"unknown score kind {kind!r}")
        return getattr(self, kind)(i, j)

    def extend(self, pairs: Iterable) -> "PrefixSums":
        """Prefix sums of this sequence followed by ``pairs``."""
        ph = [self._num(v) for v in self.ph]
        ps = [self._num(v) for v in self.ps]
        for h, s in pairs:
            ph.append(ph[-1] + h)
            ps.append(ps[-1] + s)
        if self.exact:
            return PrefixSums(exact_array(ph), exact_array(ps), True)
        return PrefixSums(np.array(ph, float), np.array(ps, float), False)


def build_prefix_sums(seq: PairSequence) -> PrefixSums:
    return PrefixSums(_cumsum0(seq.h, seq.exact), _cumsum0(seq.s, seq.exact), seq.exact)


def score(prefix: PrefixSums, i: int, j: int, kind: str):
    """``sup``, ``hit``, ``conf`` or ``ecc`` of ``[i, j]`` in O(1)."""
    return prefix.score(i, j, kind)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def compare_conf(h1, s1, h2, s2) -> int:
    """Sign of ``h1/s1 - h2/s2`` (supports must be positive).

    Rational inputs are compared by cross-multiplication in Python integers
    or fractions, so no rounding ever happens; anything else is compared by
    quotient.
    """
    if all(is_exact_number(v) for v in (h1, s1, h2, s2)):
        h1, s1, h2, s2 = (_widen(v) for v in (h1, s1, h2, s2))
        return _sign(h1 * s2 - h2 * s1)
    return _sign(h1 / s1 - h2 / s2)


def compare_ecc(h1, l1, h2, l2) -> int:
    """Sign of ``h1/sqrt(l1) - h2/sqrt(l2)`` for positive ``l1``, ``l2``.

    Exact inputs never take a square root: differing signs decide directly,
    otherwise squared values are cross-multiplied (order reversed when both
    are negative).
    """
    if all(is_exact_number(v) for v in (h1, l1, h2, l2)):
        h1, l1, h2, l2 = (_widen(v) for v in (h1, l1, h2, l2))
        a, b = _sign(h1), _sign(h2)
        if a != b:
            return _sign(a - b)
        if a == 0:
            return 0
        c = _sign(h1 * h1 * l2 - h2 * h2 * l1)
        return c if a > 0 else -c
    return _sign(h1 / math.sqrt(l1) - h2 / math.sqrt(l2))


def _widen(v):
    # numpy integers would wrap on multiplication
    return int(v) if isinstance(v, numbers.Integral) else v


@total_ordering
class Eccentricity:
    """The value ``hit / sqrt(support)`` kept as its two components.

    Ordering and equality go through :func:`compare_ecc`, so values coming
    from integer data compare exactly.
    """

    __slots__ = ("hit", "support")

    def __init__(self, hit, support):
        if not support > 0:
            raise UsageError("eccentricity needs a positive support")
        self.hit = _widen(hit)
        self.support = _widen(support)

    def _cmp(self, other) -> int:
        if isinstance(other, Eccentricity):
            return compare_ecc(self.hit, self.support, other.hit, other.support)
        if isinstance(other, numbers.Real):
            return _sign(float(self) - other)
        return NotImplemented

    def __eq__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c == 0

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    __hash__ = None

    def __float__(self) -> float:
        return self.hit / math.sqrt(self.support)

    def __mul__(self, k):
        return Eccentricity(self.hit * k, self.support)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"Eccentricity({self.hit!r}/sqrt({self.support!r}) ~ {float(self):.6g})"


@dataclass(frozen=True)
class IndexInterval:
    """Inclusive 1-based interval ``[start, end]`` and the score it achieves."""

    start: int
    end: int
    value: object = None

    def __post_init__(self):
        if not 1 <= self.start <= self.end:
            raise UsageError(f"bad interval [{self.start}, {self.end}]")

    @property
    def length(self) -> int:
        return self.end - self.start + 1
