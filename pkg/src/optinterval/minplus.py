"""Min-plus (tropical) vectors, matrices and convolution.

``TOP`` is the absorbing infinity of the semiring.  Public functions take
plain sequences whose entries are numbers or ``TOP`` (``float('inf')`` is
accepted as an alias on input) and return lists in the same form.

Internally values are packed into one numpy array with a reserved ``top``
marker: ``+inf`` for float data, ``INT64_TOP`` for int64 data (finite
int64 entries are kept below ``2**61`` in magnitude so no finite sum can
reach it), and the ``TOP`` object itself for arbitrary-precision integers.
"""
from __future__ import annotations

import math
import numbers
from math import isqrt
from typing import Callable, Sequence

import numpy as np

from . import _kernels
from ._accel import USING_NUMBA
from .core import UsageError


class _Top:
    """Absorbing element: ``TOP + x == TOP`` and ``min(TOP, x) == x``."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "TOP"

    def __reduce__(self):
        return (_Top, ())

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("optinterval.TOP")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True


TOP = _Top()
INT64_TOP = np.iinfo(np.int64).max
_INT_LIMIT = 2**61

Backend = Callable[[np.ndarray, np.ndarray, object], np.ndarray]


def is_top(v) -> bool:
    return v is TOP or (isinstance(v, float) and v == math.inf)


def sat_add(a, b):
    """``a + b`` with ``TOP`` absorbing.  Float overflow raises OverflowError."""
    if is_top(a) or is_top(b):
        return TOP
    if isinstance(a, numbers.Integral) and isinstance(b, numbers.Integral):
        return int(a) + int(b)
    r = a + b
    if isinstance(r, float) and not math.isfinite(r):
        raise OverflowError(f"finite sum {a!r} + {b!r} overflowed")
    return r


# --------------------------------------------------------------------------
# packing


def _check_entry(v):
    if is_top(v):
        return
    if isinstance(v, bool) or not isinstance(v, numbers.Real):
        raise UsageError(f"not a min-plus value: {v!r}")
    if not math.isfinite(v):
        raise UsageError(f"only +inf/TOP may be non-finite, got {v!r}")


def _kind(values) -> str:
    """'int64', 'object' or 'float' storage for a flat collection of entries."""
    finite = [v for v in values if not is_top(v)]
    for v in finite:
        _check_entry(v)
    if all(isinstance(v, numbers.Integral) for v in finite):
        if all(-_INT_LIMIT < int(v) < _INT_LIMIT for v in finite):
            return "int64"
        return "object"
    return "float"


def _merge_kinds(*kinds: str) -> str:
    if "float" in kinds:
        return "float"
    if "object" in kinds:
        return "object"
    return "int64"


def top_marker(kind: str):
    return {"int64": INT64_TOP, "float": math.inf, "object": TOP}[kind]


def pack(values, kind: str, shape=None) -> np.ndarray:
    top = top_marker(kind)
    flat = [top if is_top(v) else v for v in values]
    if kind == "int64":
        arr = np.array([int(v) if v is not top else top for v in flat], dtype=np.int64)
    elif kind == "float":
        arr = np.array([float(v) for v in flat], dtype=np.float64)
    else:
        arr = np.empty(len(flat), dtype=object)
        arr[:] = [v if v is TOP else int(v) for v in flat]
    return arr.reshape(shape) if shape is not None else arr


def unpack(arr: np.ndarray, kind: str) -> list:
    top = top_marker(kind)
    conv = int if kind != "float" else float
    if arr.ndim == 1:
        return [TOP if v == top else conv(v) for v in arr]
    return [unpack(row, kind) for row in arr]


def _rows(M) -> list[list]:
    rows = [list(r) for r in M]
    if not rows or not rows[0]:
        raise UsageError("matrices need at least one row and one column")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise UsageError("ragged matrix")
    return rows


def _pack_matrices(*mats):
    rows = [_rows(M) for M in mats]
    kind = _merge_kinds(*(_kind([v for r in rs for v in r]) for rs in rows))
    packed = [pack([v for r in rs for v in r], kind, (len(rs), len(rs[0]))) for rs in rows]
    return packed, kind


def _pack_vectors(x, y):
    x, y = list(x), list(y)
    if len(x) != len(y):
        raise UsageError(f"length mismatch: {len(x)} vs {len(y)}")
    if not x:
        raise UsageError("vectors must be non-empty")
    kind = _merge_kinds(_kind(x), _kind(y))
    return pack(x, kind), pack(y, kind), kind


# --------------------------------------------------------------------------
# square-product backends


def naive_numba_backend(B: np.ndarray, C: np.ndarray, top) -> np.ndarray:
    return _kernels.minplus_product_kernel(B, C, top)


def naive_numpy_backend(B: np.ndarray, C: np.ndarray, top) -> np.ndarray:
    return _kernels.minplus_product_numpy(B, C, top)


def naive_backend(B: np.ndarray, C: np.ndarray, top) -> np.ndarray:
    """Cubic triple loop; compiled when numba is on and the dtype allows it."""
    if USING_NUMBA and B.dtype != object:
        return naive_numba_backend(B, C, top)
    return naive_numpy_backend(B, C, top)


def _product(B, C, top, backend: Backend | None):
    return (backend or naive_backend)(B, C, top)


def square_product_packed(B, C, top, backend: Backend | None = None) -> np.ndarray:
    if B.ndim != 2 or B.shape[0] != B.shape[1] or B.shape != C.shape:
        raise UsageError(f"square product needs equal d x d operands, got {B.shape} and {C.shape}")
    return _product(B, C, top, backend)


def rect_product_packed(B, C, top, d: int | None = None, backend: Backend | None = None):
    """Rectangular product through ``ceil(m/d)`` square ``d x d`` products.

    Rows of ``B`` and columns of ``C`` are padded up to ``d`` and the shared
    dimension is cut into width-``d`` chunks (the last padded), all with
    ``top``.  Partial results are combined by entrywise min in chunk order.
    """
    r, m = B.shape
    m2, c = C.shape
    if m != m2:
        raise UsageError(f"inner dimensions differ: {B.shape} x {C.shape}")
    if d is None:
        d = max(r, c)
    if d < max(r, c):
        raise UsageError(f"block size {d} smaller than the outer dimensions {r}, {c}")
    chunks = -(-m // d)
    Bp = np.full((d, chunks * d), top, dtype=B.dtype)
    Bp[:r, :m] = B
    Cp = np.full((chunks * d, d), top, dtype=C.dtype)
    Cp[:m, :c] = C
    out = None
    for k in range(chunks):
        part = _product(
            np.ascontiguousarray(Bp[:, k * d:(k + 1) * d]),
            np.ascontiguousarray(Cp[k * d:(k + 1) * d, :]),
            top,
            backend,
        )
        out = part if out is None else np.minimum(out, part) if B.dtype != object else _objmin(out, part)
    return out[:r, :c]


def _objmin(a, b):
    out = np.empty_like(a)
    for idx in np.ndindex(a.shape):
        out[idx] = b[idx] if b[idx] < a[idx] else a[idx]
    return out


def square_min_plus_product(B, C, backend: Backend | None = None) -> list[list]:
    """``D[i][j] = min_k B[i][k] + C[k][j]`` for two ``d x d`` matrices."""
    (Bp, Cp), kind = _pack_matrices(B, C)
    return unpack(square_product_packed(Bp, Cp, top_marker(kind), backend), kind)


def rect_min_plus_product(B, C, d: int | None = None, backend: Backend | None = None) -> list[list]:
    """Min-plus product of an ``r x m`` and an ``m x c`` matrix via square blocks."""
    (Bp, Cp), kind = _pack_matrices(B, C)
    return unpack(rect_product_packed(Bp, Cp, top_marker(kind), d, backend), kind)


def direct_rect_product(B, C) -> list[list]:
    """Straight double loop over the definition (reference for the blocked form)."""
    B, C = _rows(B), _rows(C)
    if len(B[0]) != len(C):
        raise UsageError("inner dimensions differ")
    out = []
    for row in B:
        out_row = []
        for j in range(len(C[0])):
            best = TOP
            for k, b in enumerate(row):
                s = sat_add(b, C[k][j])
                if s is not TOP and (best is TOP or s < best):
                    best = s
            out_row.append(best)
        out.append(out_row)
    return out


# --------------------------------------------------------------------------
# convolution


def block_size(n: int) -> int:
    """``ceil(sqrt(n))`` for ``n >= 1``."""
    return isqrt(n - 1) + 1


def block_matrices_packed(x: np.ndarray, y: np.ndarray, top):
    n = len(x)
    d = block_size(n)
    r = -(-n // d)
    B = np.full((r, 2 * n - 1), top, dtype=x.dtype)
    for i in range(r):
        lead = n - 1 - i * d
        B[i, lead:lead + n] = x
    C = np.full((2 * n - 1, d), top, dtype=y.dtype)
    y_rev = y[::-1]
    for j in range(d):
        C[j:j + n, j] = y_rev
    return B, C


def build_block_matrices(x: Sequence, y: Sequence):
    """The two padded matrices whose min-plus product holds the convolution.

    With ``d = ceil(sqrt(n))`` and ``r = ceil(n / d)``: row ``i`` of ``B`` is
    ``n-1-i*d`` TOPs, then ``x``, then ``i*d`` TOPs; column ``j`` of ``C`` is
    ``j`` TOPs, then ``y`` reversed, then ``n-1-j`` TOPs.
    """
    xp, yp, kind = _pack_vectors(x, y)
    B, C = block_matrices_packed(xp, yp, top_marker(kind))
    return unpack(B, kind), unpack(C, kind)


def block_product_packed(x, y, top, backend: Backend | None = None):
    n = len(x)
    d = block_size(n)
    B, C = block_matrices_packed(x, y, top)
    return rect_product_packed(B, C, top, d, backend), d


def blocked_convolution_packed(x, y, top, backend: Backend | None = None) -> np.ndarray:
    D, d = block_product_packed(x, y, top, backend)
    n = len(x)
    k = np.arange(n)
    return D[k // d, k % d]


def block_product(x: Sequence, y: Sequence, backend: Backend | None = None):
    """``(D, d)``: the product matrix and block size; ``z_k = D[k // d][k % d]``."""
    xp, yp, kind = _pack_vectors(x, y)
    D, d = block_product_packed(xp, yp, top_marker(kind), backend)
    return unpack(D, kind), d


def blocked_convolution(x: Sequence, y: Sequence, backend: Backend | None = None) -> list:
    """Min-plus convolution ``z_k = min_{i<=k} x_i + y_{k-i}`` through one blocked product."""
    xp, yp, kind = _pack_vectors(x, y)
    return unpack(blocked_convolution_packed(xp, yp, top_marker(kind), backend), kind)


def naive_convolution(x: Sequence, y: Sequence) -> list:
    """Quadratic evaluation of the convolution, vectorised over ``i`` for each ``k``."""
    xp, yp, kind = _pack_vectors(x, y)
    top = top_marker(kind)
    n = len(xp)
    if kind == "object":
        z = []
        for k in range(n):
            best = TOP
            for i in range(k + 1):
                s = sat_add(xp[i], yp[k - i])
                if s is not TOP and (best is TOP or s < best):
                    best = s
            z.append(best)
        return z
    z = np.empty(n, dtype=xp.dtype)
    for k in range(n):
        a = xp[:k + 1]
        b = yp[k::-1]
        ok = (a != top) & (b != top)
        z[k] = (a[ok] + b[ok]).min() if ok.any() else top
    return unpack(z, kind)
