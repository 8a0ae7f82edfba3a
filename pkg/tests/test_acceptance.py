"""Acceptance criteria 1-10, each at its stated size and tolerance.

Every criterion prints one PASS/FAIL line (collected into the pytest
terminal summary).  Run standalone with ``python tests/test_acceptance.py``.
"""
import io
import json
import os
import statistics
import sys
import time
from decimal import Decimal, localcontext
from fractions import Fraction

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from optinterval import oracle  # noqa: E402
from optinterval.cli import run_cli  # noqa: E402
from optinterval.core import build_prefix_sums, validate_arrays, validate_sequence  # noqa: E402
from optinterval.hci import HciStream, compute_hci, compute_rmp, normalize_negative_lh  # noqa: E402
from optinterval.minplus import TOP, block_product, blocked_convolution, naive_convolution  # noqa: E402
from optinterval.psei import (  # noqa: E402
    CASE_NEGATIVE,
    CASE_POSITIVE,
    CASE_ZERO,
    compute_psei,
    driver_case,
    max_consecutive_sums,
    truncated_ecc,
)

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # standalone run
    ACCEPTANCE_LINES = []

SEED = 20261016


def report(num, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num:>2}: {title} -- {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def rng_for(num):
    return np.random.default_rng(SEED + num)


def pairs_of(h, s):
    return [(int(a), int(b)) for a, b in zip(h, s)]


# --------------------------------------------------------------------------


def criterion_1():
    rng = rng_for(1)
    t0 = time.perf_counter()
    bad, paths = 0, {"unchanged": 0, "reset": 0, "reduce": 0}
    for k in range(10_000):
        n = int(rng.integers(1, 61))
        # every fifth instance has only negative hits so the reduction runs
        hi = -1 if k % 5 == 0 else 10
        pairs = pairs_of(rng.integers(-10, hi + 1, n), rng.integers(1, 6, n))
        lh = int(rng.integers(-20, 21))
        paths[normalize_negative_lh(pairs, lh).kind] += 1
        got, ref = compute_hci(pairs, lh), oracle.brute_hci(pairs, lh)
        if got.found != ref.found or (got.found and got.confidence != ref.confidence):
            bad += 1
        elif got.found:
            P = build_prefix_sums(validate_sequence(pairs))
            bad += P.hit(got.interval.start, got.interval.end) < lh
    secs = time.perf_counter() - t0
    ok = bad == 0 and secs <= 60 and min(paths.values()) > 0
    report(1, "HCI = brute force (10,000 instances)", ok,
           f"mismatches={bad}, paths={paths}, {secs:.1f}s (limit 60s)")


def criterion_2():
    rng = rng_for(2)
    bad = checked = 0
    for _ in range(1000):
        n = int(rng.integers(1, 201))
        pairs = pairs_of(rng.integers(-10, 11, n), rng.integers(1, 6, n))
        lh = int(rng.integers(0, 21))
        stream = HciStream(lh)
        for q, pair in enumerate(pairs, start=1):
            on = stream.push(pair)
            off = compute_hci(pairs[:q], lh)
            checked += 1
            if on.found != off.found or (on.found and on.confidence != off.confidence):
                bad += 1
    report(2, "online = offline after every push (1,000 instances)", bad == 0,
           f"mismatches={bad} over {checked} prefixes")


def criterion_3():
    rng = rng_for(3)
    bad = 0
    for _ in range(10_000):
        n = int(rng.integers(1, 51))
        pairs = pairs_of(rng.integers(-10, 11, n), rng.integers(1, 6, n))
        lh = int(rng.integers(0, 21))
        R = compute_rmp(build_prefix_sums(validate_sequence(pairs)), lh).tolist()
        bad += R != oracle.brute_rmp(pairs, lh)
    reg = compute_rmp(build_prefix_sums(validate_sequence([(2, 1), (-1, 1), (3, 1)])), 3).tolist()
    hop = compute_hci([(5, 1), (-1, 1), (20, 100)], 20)
    hop_ok = hop.found and (hop.interval.start, hop.interval.end) == (1, 3)
    ok = bad == 0 and reg == [0, 0, 3] and hop_ok
    hop_text = f"[{hop.interval.start},{hop.interval.end}]" if hop.found else "absent"
    report(3, "RMP = brute force incl. good/bad (10,000 instances)", ok,
           f"mismatches={bad}, regression R={reg}, sentinel hop -> {hop_text}")


def criterion_4():
    rng = rng_for(4)
    bad = total = 0
    cases = {CASE_ZERO: 0, CASE_POSITIVE: 0, CASE_NEGATIVE: 0}
    for k in range(5000):
        n = int(rng.integers(1, 65))
        kind = k % 4
        if kind == 0:
            h = rng.integers(-10, 11, n)
        elif kind == 1:
            h = rng.integers(-10, 3, n)
        elif kind == 2:
            h = rng.integers(-10, 1, n)
        else:
            h = np.where(rng.random(n) < 0.7, 0, rng.integers(-10, 0, n))
        h = [int(v) for v in h]
        D = validate_sequence([(v, 1) for v in h])
        P = build_prefix_sums(D)
        keys = oracle.brute_psei_by_bound(h)
        for L in range(1, n + 1):
            total += 1
            cases[driver_case(P, L)] += 1
            iv = compute_psei(D, L)
            key = oracle.ecc_key(iv.value.hit, iv.value.support)
            same = key == keys[L - 1] and iv.length >= L and iv.value == P.ecc(iv.start, iv.end)
            bad += not same
    ok = bad == 0 and all(c > 0 for c in cases.values())
    report(4, "PSEI = brute force, every L (5,000 instances)", ok,
           f"mismatches={bad} over {total} (instance, L) pairs; "
           f"case counts zero={cases[CASE_ZERO]} positive={cases[CASE_POSITIVE]} negative={cases[CASE_NEGATIVE]}")


def criterion_5():
    rng = rng_for(5)
    bad = tops = 0
    for _ in range(1000):
        n = int(rng.integers(1, 301))
        x = [TOP if r < 0.1 else int(v) for r, v in zip(rng.random(n), rng.integers(-100, 101, n))]
        y = [TOP if r < 0.1 else int(v) for r, v in zip(rng.random(n), rng.integers(-100, 101, n))]
        tops += sum(v is TOP for v in x + y)
        bad += blocked_convolution(x, y) != naive_convolution(x, y)
    map_bad = 0
    for n in range(1, 101):
        x = [int(v) for v in rng.integers(-100, 101, n)]
        y = [int(v) for v in rng.integers(-100, 101, n)]
        D, d = block_product(x, y)
        z = oracle.brute_convolution(x, y)
        map_bad += sum(D[k // d][k % d] != z[k] for k in range(n))
    ok = bad == 0 and map_bad == 0 and tops > 0
    report(5, "blocked = naive convolution; z_k = D[k//d][k%d]", ok,
           f"1,000 vectors: mismatches={bad} ({tops} TOP entries); index map n=1..100: bad={map_bad}")


def criterion_6():
    rng = rng_for(6)
    bad = ends = 0
    sizes = [1, 2, 300] + [int(v) for v in rng.integers(1, 301, 200)]
    for m in sizes:
        H = [int(v) for v in rng.integers(-100, 101, m)]
        w = list(max_consecutive_sums(H))
        bad += w != oracle.brute_max_sums(H)
        ends += w[0] != max(H) or w[-1] != sum(H)
    report(6, "max consecutive sums = direct O(m^2), m <= 300", bad == 0 and ends == 0,
           f"{len(sizes)} profiles: mismatches={bad}, endpoint failures={ends}")


def criterion_7():
    rng = rng_for(7)
    accepted = tried = violations = 0
    while accepted < 10_000:
        tried += 1
        n = int(rng.integers(1, 41))
        h = [int(v) for v in rng.integers(-10, 4, n)]
        L = int(rng.integers(1, n + 1))
        P = [0]
        for v in h:
            P.append(P[-1] + v)
        top = max(P[j] - P[i] for j in range(L, n + 1) for i in range(0, j - L + 1))
        if top >= 0:
            continue
        accepted += 1
        _, where = oracle.brute_psei_all([(v, 1) for v in h], L)
        violations += any(j - i + 1 >= 2 * L for i, j in where)
    report(7, "negative case optimum shorter than 2L (10,000 instances)", violations == 0,
           f"violations={violations} ({tried} drawn, {accepted} with negative constrained max)")


def _f_exact(l: Fraction, h: Fraction) -> Decimal:
    if h < 0:
        return Decimal(0)
    return (Decimal(h.numerator) / Decimal(h.denominator)) / (
        Decimal(l.numerator) / Decimal(l.denominator)).sqrt()


def criterion_8():
    rng = rng_for(8)
    N = 100_000
    l = 1e6 - rng.uniform(0, 1e6, (N, 2))  # (0, 1e6]
    h = rng.uniform(-1e6, 1e6, (N, 2))
    lam = rng.uniform(0, 1, N)
    worst = Decimal("-Infinity")
    lib_err = 0.0
    with localcontext() as ctx:
        ctx.prec = 50
        for k in range(N):
            u = (Fraction(l[k, 0]), Fraction(h[k, 0]))
            v = (Fraction(l[k, 1]), Fraction(h[k, 1]))
            t = Fraction(lam[k])
            mid = (t * u[0] + (1 - t) * v[0], t * u[1] + (1 - t) * v[1])
            fu, fv, fm = _f_exact(*u), _f_exact(*v), _f_exact(*mid)
            worst = max(worst, fm - max(fu, fv))
            ref = float(fu)
            lib_err = max(lib_err, abs(truncated_ecc(l[k, 0], h[k, 0]) - ref) / max(1.0, abs(ref)))
    ok = worst <= Decimal("1e-12") and lib_err <= 1e-12
    report(8, "quasiconvexity of truncated eccentricity (10^5 triples)", ok,
           f"max f(mid) - max(f(u), f(v)) = {float(worst):.3e} (limit 1e-12); "
           f"library f rel. error {lib_err:.1e}")


def _time(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def criterion_9():
    rng = rng_for(9)
    compute_hci([(1, 1), (2, 2)], 1)
    compute_psei([(1, 1), (-2, 1), (-3, 1)], 2)
    compute_psei([(-1, 1), (-2, 1), (-3, 1)], 1)
    times = {}
    for n in (250_000, 500_000, 1_000_000):
        h, s = rng.integers(-10, 11, n), rng.integers(1, 6, n)
        times[n] = _time(lambda: compute_hci(validate_arrays(h, s), 50), 5)
    r1 = times[500_000] / times[250_000]
    r2 = times[1_000_000] / times[500_000]
    n, L = 200_000, 512
    psei = {}
    for label, hi in (("positive", 10), ("negative", 2)):
        hv = rng.integers(-10, hi + 1, n)
        t0 = time.perf_counter()
        D = validate_arrays(hv, np.ones_like(hv))
        compute_psei(D, L)
        psei[label] = time.perf_counter() - t0
        psei[label + "_case"] = driver_case(build_prefix_sums(D), L)
    ok = (times[1_000_000] <= 5 and r1 <= 3 and r2 <= 3
          and psei["positive"] <= 30 and psei["negative"] <= 30
          and psei["positive_case"] == CASE_POSITIVE and psei["negative_case"] == CASE_NEGATIVE)
    report(9, "performance smoke", ok,
           f"hci n=1e6 {times[1_000_000]:.3f}s (limit 5s), doubling ratios {r1:.2f}, {r2:.2f} (limit 3); "
           f"psei n=2e5 L=512: case 2 {psei['positive']:.2f}s, case 3 {psei['negative']:.2f}s (limit 30s)")


# --- criterion 10 ----------------------------------------------------------


def _cli(argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = run_cli(argv, io.StringIO(stdin), out, err)
    return code, out.getvalue()


def _fmt_value(value, exact):
    if hasattr(value, "support"):  # eccentricity
        if not exact:
            return format(float(value), ".17g")
        with localcontext() as ctx:
            ctx.prec = 60
            dec = Decimal(value.hit) / Decimal(value.support).sqrt()
        return json.dumps(format(dec, ".17g"))
    if exact:
        f = Fraction(value)
        return json.dumps(f"{f.numerator}/{f.denominator}")
    return format(float(value), ".17g")


def _record(iv, exact):
    if iv is None:
        return "null"
    body = {"start": iv.start, "end": iv.end, "value": "@"}
    return json.dumps(body, separators=(",", ":")).replace('"@"', _fmt_value(iv.value, exact))


def _draw_values(rng, n, use_float, lo=-10, hi=10):
    if use_float:
        return [float(np.round(v, 3)) for v in rng.uniform(lo, hi, n)]
    return [int(v) for v in rng.integers(lo, hi + 1, n)]


def _csv(pairs):
    return "".join(f"{h!r},{s!r}\n" for h, s in pairs)


def criterion_10(tmpdir):
    rng = rng_for(10)
    stats = {}

    def tally(name, same, code):
        s = stats.setdefault(name, [0, 0])
        s[0] += not same
        s[1] += code != 0

    for k in range(100):
        use_float = k % 5 == 4
        n = int(rng.integers(1, 41))
        pairs = list(zip(_draw_values(rng, n, use_float), _draw_values(rng, n, use_float, 1, 5)))
        pairs = [(h, s if s > 0 else 1) for h, s in pairs]
        D = validate_sequence(pairs)
        text = _csv(pairs)

        lh = int(rng.integers(-20, 21))
        ans = compute_hci(D, lh)
        code, out = _cli(["--check", "hci", "--lh", str(lh)], text)
        tally("hci", out == _record(ans.interval, D.exact) + "\n", code)

        lh = int(rng.integers(0, 21))
        stream = HciStream(lh)
        want = "".join(_record(stream.push(p).interval, stream.exact) + "\n" for p in pairs)
        code, out = _cli(["hci", "--lh", str(lh), "--stream", "--check"], text)
        tally("hci --stream", out == want, code)

        plain = [(h, 1) for h, _ in pairs]
        Dp = validate_sequence(plain)
        L = int(rng.integers(1, n + 1))
        code, out = _cli(["psei", "--ls", str(L), "--check"], _csv(plain))
        tally("psei", out == _record(compute_psei(Dp, L), Dp.exact) + "\n", code)

        H = [h for h, _ in pairs]
        w = list(max_consecutive_sums(H))
        want = "".join((str(v) if Dp.exact else format(v, ".17g")) + "\n" for v in w)
        code, out = _cli(["maxsums", "--check"], "".join(f"{h!r}\n" for h in H))
        tally("maxsums", out == want, code)

        m = int(rng.integers(1, 120))
        x = [TOP if r < 0.1 else v for r, v in zip(rng.random(m), _draw_values(rng, m, use_float, -100, 100))]
        y = [TOP if r < 0.1 else v for r, v in zip(rng.random(m), _draw_values(rng, m, use_float, -100, 100))]
        xf, yf = os.path.join(tmpdir, f"x{k}"), os.path.join(tmpdir, f"y{k}")
        for path, vec in ((xf, x), (yf, y)):
            with open(path, "w") as fh:
                fh.write("".join(("inf" if v is TOP else repr(v)) + "\n" for v in vec))
        z = blocked_convolution(x, y)
        want = "".join(("inf" if v is TOP else str(v) if not use_float else format(v, ".17g")) + "\n" for v in z)
        code, out = _cli(["convolve", "--x", xf, "--y", yf, "--check"])
        tally("convolve", out == want, code)

    ok = all(s == [0, 0] for s in stats.values())
    detail = ", ".join(f"{name}: {s[0]} diffs / {s[1]} nonzero exits" for name, s in stats.items())
    report(10, "CLI output = library output, --check exits 0 (100 inputs each)", ok, detail)


# --------------------------------------------------------------------------

CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda f: f.__name__)
def test_criterion(criterion):
    criterion()


def test_criterion_10(tmp_path):
    criterion_10(str(tmp_path))


if __name__ == "__main__":
    import tempfile

    failed = 0
    for crit in CRITERIA:
        try:
            crit()
        except AssertionError:
            failed += 1
    with tempfile.TemporaryDirectory() as d:
        try:
            criterion_10(d)
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
