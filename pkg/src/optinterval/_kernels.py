"""Hot loops.

Every function here is written in the numba-compatible subset of Python.
With numba enabled they are compiled; otherwise (or for object arrays of
arbitrary-precision integers) the plain Python body runs.  Positions follow
the package convention: prefix arrays are indexed by boundary ``0..n``.

``exact`` selects integer cross-multiplication over quotient comparison;
callers guarantee int64 products cannot overflow before passing int64
arrays with ``exact=True``.
"""
import numpy as np

from ._accel import jitable, njit


@jitable
def conf_cmp(h1, s1, h2, s2, exact):
    if exact:
        a = h1 * s2
        b = h2 * s1
        if a > b:
            return 1
        if a < b:
            return -1
        return 0
    x = h1 / s1
    y = h2 / s2
    if x > y:
        return 1
    if x < y:
        return -1
    return 0


@jitable
def _sgn(x):
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


@jitable
def ecc_cmp(h1, l1, h2, l2, exact):
    if exact:
        a = _sgn(h1)
        b = _sgn(h2)
        if a != b:
            return 1 if a > b else -1
        if a == 0:
            return 0
        # int() widens numpy scalars to Python ints on the uncompiled path
        x = h1 * h1 * int(l2)
        y = h2 * h2 * int(l1)
        c = 1 if x > y else (-1 if x < y else 0)
        return c if a > 0 else -c
    x = h1 / np.sqrt(l1)
    y = h2 / np.sqrt(l2)
    if x > y:
        return 1
    if x < y:
        return -1
    return 0


@jitable
def turn(ax, ay, bx, by, cx, cy, exact):
    """Orientation of a -> b -> c: 1 left turn, -1 right turn, 0 collinear."""
    if exact:
        u = int(bx - ax) * (cy - ay)
        v = (by - ay) * int(cx - ax)
        if u > v:
            return 1
        if u < v:
            return -1
        return 0
    d = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    if d > 0:
        return 1
    if d < 0:
        return -1
    return 0


# --------------------------------------------------------------------------
# hit-constrained confidence


@njit
def rmp_kernel(ph, lh):
    """Rightmost partner of every good index, -1 for bad ones (slot 0 unused)."""
    n = len(ph) - 1
    R = np.full(n + 1, -1, np.int64)
    C = np.empty(n + 1, np.int64)
    head = 0
    tail = 0
    rhat = 0
    for i in range(1, n + 1):
        # keep candidate boundaries ph[c - 1] strictly increasing
        while tail > head and ph[C[tail - 1] - 1] >= ph[i - 1]:
            tail -= 1
        C[tail] = i
        tail += 1
        if rhat == 0 or ph[i] - ph[rhat - 1] >= lh or ph[i] - ph[C[head] - 1] >= lh:
            while tail > head and ph[i] - ph[C[head] - 1] >= lh:
                rhat = C[head]
                head += 1
            R[i] = rhat
    return R


@njit
def hci_kernel(ph, ps, R, exact):
    """Sweep good indices left to right, calling BEST with monotone bounds.

    The lower convex hull of boundary points ``(ps[t], ph[t])`` for
    ``t in [l - 1, u - 1]`` is kept in ``hull[head:tail]``; its second vertex
    is the jump target (largest minimiser of the prefix confidence from
    ``l``).  Returns ``(alpha, beta)``; ``(0, 0)`` means no endorsed interval.
    """
    n = len(ph) - 1
    hull = np.empty(n + 1, np.int64)
    hull[0] = 0
    head = 0
    tail = 1
    y = 0
    l = 0
    alpha = 0
    beta = 0
    bh = ph[0] - ph[0]
    bs = ps[0] - ps[0]
    for q in range(1, n + 1):
        u = R[q]
        if u <= 0:
            continue
        if l == 0:
            l = 1
        while y < u - 1:
            y += 1
            while tail - head >= 2:
                a = hull[tail - 2]
                b = hull[tail - 1]
                if turn(ps[a], ph[a], ps[b], ph[b], ps[y], ph[y], exact) <= 0:
                    tail -= 1
                else:
                    break
            hull[tail] = y
            tail += 1
        p = l
        while p < u:
            z = hull[head + 1]
            h0 = ph[p - 1]
            s0 = ps[p - 1]
            if conf_cmp(ph[z] - h0, ps[z] - s0, ph[q] - h0, ps[q] - s0, exact) <= 0:
                p = z + 1
                head += 1
            else:
                break
        l = p
        h = ph[q] - ph[l - 1]
        s = ps[q] - ps[l - 1]
        if alpha == 0 or conf_cmp(h, s, bh, bs, exact) > 0:
            bh = h
            bs = s
            alpha = l
            beta = q
    return alpha, beta


@njit
def capped_kernel(ph, ps, cap, exact):
    """Max-confidence interval among those with support <= cap (scan per end)."""
    n = len(ph) - 1
    alpha = 0
    beta = 0
    bh = ph[0] - ph[0]
    bs = ps[0] - ps[0]
    lo = 1
    for j in range(1, n + 1):
        while lo <= j and ps[j] - ps[lo - 1] > cap:
            lo += 1
        for i in range(j, lo - 1, -1):
            h = ph[j] - ph[i - 1]
            s = ps[j] - ps[i - 1]
            if alpha == 0 or conf_cmp(h, s, bh, bs, exact) > 0:
                bh = h
                bs = s
                alpha = i
                beta = j
    return alpha, beta


# --------------------------------------------------------------------------
# length-constrained eccentricity


@njit
def max_sum_kernel(ph, L):
    """Interval of length >= L with the largest sum: running prefix minimum."""
    n = len(ph) - 1
    best_t = 0
    bi = 0
    bj = 0
    bv = ph[0] - ph[0]
    for j in range(L, n + 1):
        t = j - L
        if ph[t] < ph[best_t]:
            best_t = t
        v = ph[j] - ph[best_t]
        if bi == 0 or v > bv:
            bv = v
            bi = best_t + 1
            bj = j
    return bi, bj


@njit
def ecc_hull_kernel(ph, L, exact):
    """Interval of length >= L maximising ``hit / sqrt(length)``.

    For each right end ``j`` only vertices of the lower hull of
    ``(t, ph[t])``, ``t <= j - L``, are tried.  Correct whenever the optimum
    is positive (the truncated objective is quasiconvex and non-increasing in
    ``ph[t]``).
    """
    n = len(ph) - 1
    hull = np.empty(n + 1, np.int64)
    tail = 0
    bi = 0
    bj = 0
    bh = ph[0] - ph[0]
    bl = 1
    for j in range(L, n + 1):
        t = j - L
        while tail >= 2:
            a = hull[tail - 2]
            b = hull[tail - 1]
            if turn(a, ph[a], b, ph[b], t, ph[t], exact) <= 0:
                tail -= 1
            else:
                break
        hull[tail] = t
        tail += 1
        top = ph[j]
        for k in range(tail):
            v = hull[k]
            h = top - ph[v]
            if bi == 0 or ecc_cmp(h, j - v, bh, bl, exact) > 0:
                bh = h
                bl = j - v
                bi = v + 1
                bj = j
    return bi, bj


# --------------------------------------------------------------------------
# min-plus products


@njit
def minplus_product_kernel(B, C, top):
    """Naive (min, +) product; entries equal to ``top`` are absorbing."""
    r, m = B.shape
    c = C.shape[1]
    out = np.full((r, c), top, B.dtype)
    for i in range(r):
        for k in range(m):
            b = B[i, k]
            if b == top:
                continue
            for j in range(c):
                v = C[k, j]
                if v == top:
                    continue
                s = b + v
                if s < out[i, j]:
                    out[i, j] = s
    return out


def minplus_product_numpy(B, C, top, max_block=1 << 22):
    """Vectorised (min, +) product, processed in row slabs to bound memory."""
    r, m = B.shape
    c = C.shape[1]
    b_top = B == top
    c_top = C == top
    zero = B.dtype.type(0) if B.dtype != object else 0
    Bz = np.where(b_top, zero, B)
    Cz = np.where(c_top, zero, C)
    out = np.empty((r, c), dtype=B.dtype)
    step = max(1, max_block // max(1, m * c))
    for lo in range(0, r, step):
        hi = min(r, lo + step)
        s = Bz[lo:hi, :, None] + Cz[None, :, :]
        s = np.where(b_top[lo:hi, :, None] | c_top[None, :, :], top, s)
        out[lo:hi] = s.min(axis=1) if m else top
    return out
