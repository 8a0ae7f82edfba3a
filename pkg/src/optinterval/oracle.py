"""Brute-force references.

Each function evaluates its definition literally over all candidates, with
its own exact arithmetic (Python integers and fractions), and shares nothing
with the fast paths beyond the input containers.  Float inputs are accepted
and converted to exact rationals.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .core import IndexInterval, PairSequence, validate_sequence
from .hci import HciAnswer
from .minplus import TOP, is_top


def _pairs(D):
    D = D if isinstance(D, PairSequence) else validate_sequence(D)
    conv = int if D.exact else Fraction
    return [(conv(h), conv(s)) for h, s in zip(D.h.tolist(), D.s.tolist())]


def _prefix(values):
    out = [0]
    for v in values:
        out.append(out[-1] + v)
    return out


def _ratio_gt(h1, s1, h2, s2) -> bool:
    """h1/s1 > h2/s2 for positive denominators."""
    return h1 * s2 > h2 * s1


def _ecc_gt(h1, l1, h2, l2) -> bool:
    """h1/sqrt(l1) > h2/sqrt(l2), via the signed squares h*|h|/l."""
    return h1 * abs(h1) * l2 > h2 * abs(h2) * l1


def _ecc_key(h, length) -> Fraction:
    # strictly increasing in h / sqrt(length)
    return Fraction(h * abs(h), length)


def _bound(lh, pairs):
    """``hit >= lh`` rewritten as ``hit >= ceil(lh)`` when all hits are integers."""
    lh = Fraction(lh)
    if all(isinstance(h, int) for h, _ in pairs):
        return math.ceil(lh)
    return lh


def _as_number(x: Fraction):
    return int(x) if x.denominator == 1 else x


def brute_hci_all(D, lh):
    """``(best confidence, [all optimal intervals])``; ``(None, [])`` if infeasible."""
    pairs = _pairs(D)
    PH = _prefix(h for h, _ in pairs)
    PS = _prefix(s for _, s in pairs)
    lh = _bound(lh, pairs)
    best, where = None, []
    n = len(pairs)
    for j in range(1, n + 1):
        for i in range(1, j + 1):
            h = PH[j] - PH[i - 1]
            if h < lh:
                continue
            s = PS[j] - PS[i - 1]
            if best is None or _ratio_gt(h, s, *best):
                best, where = (h, s), [(i, j)]
            elif not _ratio_gt(best[0], best[1], h, s):
                where.append((i, j))
    return (None if best is None else Fraction(best[0]) / best[1]), where


def brute_hci(D, lh) -> HciAnswer:
    """Exhaustive maximum-confidence endorsed interval (earliest end, then smallest start)."""
    best, where = brute_hci_all(D, lh)
    if best is None:
        return HciAnswer(None)
    i, j = where[0]
    return HciAnswer(IndexInterval(i, j, best), best)


def brute_hci_prefix_values(D, lh) -> list:
    """Optimal confidence on every prefix (None where infeasible), in one O(n^2) sweep."""
    pairs = _pairs(D)
    PH = _prefix(h for h, _ in pairs)
    PS = _prefix(s for _, s in pairs)
    lh = _bound(lh, pairs)
    best, out = None, []
    for j in range(1, len(pairs) + 1):
        for i in range(1, j + 1):
            h = PH[j] - PH[i - 1]
            if h >= lh:
                s = PS[j] - PS[i - 1]
                if best is None or _ratio_gt(h, s, *best):
                    best = (h, s)
        out.append(None if best is None else Fraction(best[0]) / best[1])
    return out


def brute_conf_capped(D, cap):
    """Best confidence among intervals with support <= cap (None if none)."""
    pairs = _pairs(D)
    PH = _prefix(h for h, _ in pairs)
    PS = _prefix(s for _, s in pairs)
    best = None
    for j in range(1, len(pairs) + 1):
        for i in range(1, j + 1):
            s = PS[j] - PS[i - 1]
            if s <= cap:
                h = PH[j] - PH[i - 1]
                if best is None or _ratio_gt(h, s, *best):
                    best = (h, s)
    return None if best is None else Fraction(best[0]) / best[1]


def brute_rmp(D, lh) -> list[int]:
    """Per index: rightmost partner if good, else -1 (partners scanned directly)."""
    pairs = _pairs(D)
    PH = _prefix(h for h, _ in pairs)
    lh = _bound(lh, pairs)
    out, ideal = [], 0
    for q in range(1, len(pairs) + 1):
        r = 0
        for p in range(q, 0, -1):
            if PH[q] - PH[p - 1] >= lh:
                r = p
                break
        ideal = max(ideal, r)
        out.append(r if r == ideal else -1)
    return out


def brute_phi(D, x: int, y: int) -> int:
    """Largest ``z`` in ``[x, y]`` minimising ``conf(x, z)``."""
    pairs = _pairs(D)
    best, arg = None, None
    h = s = 0
    for z in range(x, y + 1):
        h += pairs[z - 1][0]
        s += pairs[z - 1][1]
        if best is None or not _ratio_gt(h, s, *best):
            best, arg = (h, s), z
    return arg


def brute_best(D, l: int, u: int, q: int) -> int:
    """Largest ``p`` in ``[max(l, 1), u]`` maximising ``conf(p, q)``; 0 if ``u == 0``."""
    if u == 0:
        return 0
    pairs = _pairs(D)
    best, arg = None, None
    for p in range(max(l, 1), u + 1):
        seg = pairs[p - 1:q]
        h, s = sum(v for v, _ in seg), sum(v for _, v in seg)
        if best is None or not _ratio_gt(best[0], best[1], h, s):
            best, arg = (h, s), p
    return arg


def brute_psei_all(D, L: int):
    """``(best key, [optimal intervals])`` where key orders like ``hit / sqrt(length)``."""
    pairs = _pairs(D)
    PH = _prefix(h for h, _ in pairs)
    n = len(pairs)
    best, where = None, []
    for j in range(1, n + 1):
        for i in range(1, j - L + 2):
            h, ln = PH[j] - PH[i - 1], j - i + 1
            if best is None or _ecc_gt(h, ln, *best):
                best, where = (h, ln), [(i, j)]
            elif not _ecc_gt(best[0], best[1], h, ln):
                where.append((i, j))
    return (None if best is None else _ecc_key(*best)), where


def brute_psei(D, L: int) -> IndexInterval:
    """Exhaustive amble interval of maximum eccentricity (value = exact (hit, length))."""
    from .core import Eccentricity

    pairs = _pairs(D)
    _, where = brute_psei_all(D, L)
    i, j = where[0]
    hit = sum(h for h, _ in pairs[i - 1:j])
    return IndexInterval(i, j, Eccentricity(_as_number(hit), j - i + 1))


def brute_psei_by_bound(h: Sequence[int]) -> list:
    """Best eccentricity key for every bound ``L = 1..n`` from one pass over all intervals."""
    PH = _prefix(h)
    n = len(h)
    by_len = [None] * (n + 1)
    for j in range(1, n + 1):
        for i in range(1, j + 1):
            ln = j - i + 1
            s = PH[j] - PH[i - 1]
            if by_len[ln] is None or s > by_len[ln]:
                by_len[ln] = s
    out = [None] * (n + 2)
    for ln in range(n, 0, -1):
        k = _ecc_key(by_len[ln], ln)
        out[ln] = k if out[ln + 1] is None or k > out[ln + 1] else out[ln + 1]
    return out[1:n + 1]


def ecc_key(hit, length) -> Fraction:
    """Exact monotone key for ``hit / sqrt(length)`` (for comparing against oracles)."""
    return _ecc_key(Fraction(hit), length)


def brute_convolution(x: Sequence, y: Sequence) -> list:
    n = len(x)
    z = []
    for k in range(n):
        best = TOP
        for i in range(k + 1):
            a, b = x[i], y[k - i]
            if is_top(a) or is_top(b):
                continue
            if best is TOP or a + b < best:
                best = a + b
        z.append(best)
    return z


def brute_max_sums(H: Sequence) -> list:
    """``w[ln - 1]`` = largest sum of ``ln`` consecutive values, by running sums from every start."""
    m = len(H)
    out = [None] * m
    for p in range(m):
        acc = 0
        for q in range(p, m):
            acc += H[q]
            ln = q - p
            if out[ln] is None or acc > out[ln]:
                out[ln] = acc
    return out
