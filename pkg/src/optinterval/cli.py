"""Command-line front end.

    optinterval [--input PATH] [--format csv|jsonl] [--exact|--float] [--check] COMMAND ...

Commands: ``hci --lh NUM [--stream]``, ``psei --ls INT``,
``convolve --x FILE --y FILE [--naive]``, ``maxsums``, ``bench --sizes LIST``.
Global options may also follow the command name.

Exit status: 0 on success (a ``null`` result included), 2 for invalid input or
usage, 3 when ``--check`` finds a disagreement with the brute-force oracle.
"""
from __future__ import annotations

import argparse
import contextlib
import json
import math
import sys
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import IO, Iterable, Iterator, Sequence

from . import oracle
from .core import Eccentricity, IntervalError, PairSequence, validate_sequence
from .hci import HciAnswer, HciStream, compute_hci
from .minplus import TOP, blocked_convolution, is_top, naive_convolution
from .psei import compute_psei, max_consecutive_sums

CHECK_LIMIT = 2000
EXIT_OK, EXIT_INPUT, EXIT_MISMATCH = 0, 2, 3


class InputError(Exception):
    """Bad input or usage; reported on stderr with exit status 2."""


class CheckFailed(Exception):
    """The oracle disagreed with a fast path."""


# --------------------------------------------------------------------------
# parsing


def parse_number(token: str):
    token = token.strip()
    try:
        return int(token)
    except ValueError:
        pass
    value = float(token)
    if not math.isfinite(value):
        raise ValueError(token)
    return value


def _parse_line(line: str, fmt: str, lineno: int):
    if fmt == "jsonl":
        try:
            obj = json.loads(line)
            h, s = obj["h"], obj.get("s", 1)
        except (ValueError, KeyError, TypeError, AttributeError):
            raise InputError(f"malformed JSON record (line {lineno})") from None
        for v in (h, s):
            if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
                raise InputError(f"non-numeric value (line {lineno})")
    else:
        fields = line.split(",")
        if len(fields) > 2:
            raise InputError(f"expected 'h' or 'h,s' (line {lineno})")
        try:
            h = parse_number(fields[0])
            s = parse_number(fields[1]) if len(fields) == 2 else 1
        except ValueError:
            raise InputError(f"cannot parse number (line {lineno})") from None
    if not s > 0:
        raise InputError(f"support must be positive (line {lineno})")
    return h, s


def iter_pairs(lines: Iterable[str], fmt: str = "csv") -> Iterator[tuple]:
    """Yield ``(h, s)`` per non-blank line; ``#`` starts a comment line."""
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield _parse_line(line, fmt, lineno)


def read_pairs(source: Iterable[str], fmt: str = "csv", mode: str | None = None) -> PairSequence:
    pairs = list(iter_pairs(source, fmt))
    try:
        return validate_sequence(pairs, mode)
    except IntervalError as exc:
        raise InputError(str(exc).replace("position", "line")) from None


def read_values(path: str) -> list:
    """One value per line; ``inf`` stands for TOP."""
    out = []
    try:
        fh = open(path)
    except OSError as exc:
        raise InputError(f"cannot open {path}: {exc.strerror}") from None
    with fh:
        for lineno, raw in enumerate(fh, start=1):
            tok = raw.strip()
            if not tok or tok.startswith("#"):
                continue
            if tok.lower() in ("inf", "+inf", "top"):
                out.append(TOP)
                continue
            try:
                out.append(parse_number(tok))
            except ValueError:
                raise InputError(f"cannot parse number in {path} (line {lineno})") from None
    return out


# --------------------------------------------------------------------------
# rendering


def format_float(v: float) -> str:
    return format(float(v), ".17g")


def format_ecc_exact(value: Eccentricity) -> str:
    with localcontext() as ctx:
        ctx.prec = 60
        dec = Decimal(value.hit) / Decimal(value.support).sqrt()
        return format(dec, ".17g")


def render_value(value, exact: bool) -> str:
    if isinstance(value, Eccentricity):
        return json.dumps(format_ecc_exact(value)) if exact else format_float(float(value))
    if exact:
        frac = Fraction(value)
        return json.dumps(f"{frac.numerator}/{frac.denominator}")
    return format_float(value)


def render_interval(interval, exact: bool) -> str:
    """One result record: ``{"start":i,"end":j,"value":v}`` or ``null``."""
    if interval is None:
        return "null"
    return '{"start":%d,"end":%d,"value":%s}' % (
        interval.start, interval.end, render_value(interval.value, exact))


def render_scalar(v, exact: bool) -> str:
    if is_top(v):
        return "inf"
    return str(int(v)) if exact else format_float(v)


# --------------------------------------------------------------------------
# checks


def _close(a, b, exact: bool) -> bool:
    if exact:
        return a == b
    a, b = float(a), float(b)
    return a == b or abs(a - b) <= 1e-9 * max(abs(a), abs(b), 1e-300)


def _too_big(n: int, err: IO) -> bool:
    if n > CHECK_LIMIT:
        print(f"warning: skipping --check, n={n} exceeds {CHECK_LIMIT}", file=err)
        return True
    return False


def _check_hci(D: PairSequence, lh, answer: HciAnswer, err: IO) -> None:
    if _too_big(D.n, err):
        return
    ref = oracle.brute_hci(D, lh)
    if ref.found != answer.found or (ref.found and not _close(answer.confidence, ref.confidence, D.exact)):
        raise CheckFailed(f"hci: solver {answer.confidence} vs oracle {ref.confidence}")


def _check_psei(D: PairSequence, L: int, result, err: IO) -> None:
    if _too_big(D.n, err):
        return
    ref = oracle.brute_psei(D, L)
    ok = result.length >= L and (
        result.value == ref.value if D.exact else _close(float(result.value), float(ref.value), False))
    if not ok:
        raise CheckFailed(f"psei: solver {result.value!r} vs oracle {ref.value!r}")


def _check_values(name: str, got: Sequence, ref: Sequence, exact: bool, err: IO) -> None:
    if _too_big(len(got), err):
        return
    for k, (a, b) in enumerate(zip(got, ref)):
        if is_top(a) or is_top(b):
            ok = is_top(a) and is_top(b)
        else:
            ok = _close(a, b, exact)
        if not ok:
            raise CheckFailed(f"{name}: entry {k} solver {a!r} vs oracle {b!r}")
    if len(got) != len(ref):
        raise CheckFailed(f"{name}: length {len(got)} vs oracle {len(ref)}")


# --------------------------------------------------------------------------
# commands


def _mode(args) -> str | None:
    return "exact" if args.exact else "float" if args.float else None


def _open_input(args, stdin: IO) -> IO:
    if args.input in (None, "-"):
        return stdin
    try:
        return open(args.input)
    except OSError as exc:
        raise InputError(f"cannot open {args.input}: {exc.strerror}") from None


def _parse_bound(text: str):
    try:
        return parse_number(text)
    except ValueError:
        raise InputError(f"not a number: {text!r}") from None


def cmd_hci(args, stdin, out, err) -> int:
    lh = _parse_bound(args.lh)
    src = _open_input(args, stdin)
    if args.stream:
        return _stream_hci(args, lh, src, out, err)
    D = read_pairs(src, args.format, _mode(args))
    answer = compute_hci(D, lh)
    out.write(render_interval(answer.interval, D.exact) + "\n")
    if args.check:
        _check_hci(D, lh, answer, err)
    return EXIT_OK


def _stream_hci(args, lh, src, out, err) -> int:
    if lh < 0:
        raise InputError("--stream needs --lh >= 0; run without --stream for negative bounds")
    state = HciStream(lh, _mode(args))
    seen, values = [], []
    try:
        for h, s in iter_pairs(src, args.format):
            answer = state.push((h, s))
            out.write(render_interval(answer.interval, state.exact) + "\n")
            out.flush()
            if args.check:
                seen.append((h, s))
                values.append(answer.confidence if answer.found else None)
    except IntervalError as exc:
        raise InputError(str(exc).replace("position", "line")) from None
    if args.check and not _too_big(len(seen), err):
        D = validate_sequence(seen, "exact" if state.exact else "float")
        ref = oracle.brute_hci_prefix_values(D, lh)
        for q, (a, b) in enumerate(zip(values, ref), start=1):
            if (a is None) != (b is None) or (a is not None and not _close(a, b, state.exact)):
                raise CheckFailed(f"hci --stream: prefix {q} solver {a} vs oracle {b}")
    return EXIT_OK


def cmd_psei(args, stdin, out, err) -> int:
    D = read_pairs(_open_input(args, stdin), args.format, _mode(args))
    L = args.ls
    if not D.plain:
        raise InputError("psei needs a plain sequence (every support equal to 1)")
    if not 1 <= L <= D.n:
        raise InputError(f"--ls must be in 1..{D.n}")
    result = compute_psei(D, L)
    out.write(render_interval(result, D.exact) + "\n")
    if args.check:
        _check_psei(D, L, result, err)
    return EXIT_OK


def cmd_maxsums(args, stdin, out, err) -> int:
    D = read_pairs(_open_input(args, stdin), args.format, _mode(args))
    if D.n == 0:
        raise InputError("maxsums needs at least one value")
    H = D.h.tolist()
    w = list(max_consecutive_sums(H))
    for v in w:
        out.write(render_scalar(v, D.exact) + "\n")
    if args.check:
        _check_values("maxsums", w, oracle.brute_max_sums(H), D.exact, err)
    return EXIT_OK


def cmd_convolve(args, stdin, out, err) -> int:
    x, y = read_values(args.x), read_values(args.y)
    if len(x) != len(y) or not x:
        raise InputError(f"--x and --y need the same non-zero length ({len(x)} vs {len(y)})")
    values = [v for v in x + y if not is_top(v)]
    exact = all(isinstance(v, int) for v in values)
    if args.exact and not exact:
        raise InputError("exact mode needs integer values")
    if args.float:
        exact = False
        x = [v if is_top(v) else float(v) for v in x]
        y = [v if is_top(v) else float(v) for v in y]
    z = naive_convolution(x, y) if args.naive else blocked_convolution(x, y)
    for v in z:
        out.write(render_scalar(v, exact) + "\n")
    if args.check:
        _check_values("convolve", z, oracle.brute_convolution(x, y), exact, err)
    return EXIT_OK


def parse_sizes(text: str) -> list[int]:
    sizes = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        try:
            value = float(tok) if any(c in tok for c in ".eE") else int(tok)
        except ValueError:
            raise InputError(f"bad size {tok!r}") from None
        if value < 1 or value != int(value):
            raise InputError(f"bad size {tok!r}")
        sizes.append(int(value))
    return sizes


def cmd_bench(args, stdin, out, err) -> int:
    from .bench import run_bench, write_report

    rows = run_bench(parse_sizes(args.sizes), seed=args.seed)
    write_report(rows, out)
    return EXIT_OK


# --------------------------------------------------------------------------
# argument parsing


def _global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--input", default=d("-"), help="input file, '-' for stdin")
    parser.add_argument("--format", choices=("csv", "jsonl"), default=d("csv"))
    mode = parser.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", default=d(False), help="exact integer arithmetic")
    mode.add_argument("--float", action="store_true", default=d(False), help="64-bit floating point")
    parser.add_argument("--check", action="store_true", default=d(False),
                        help=f"cross-check against brute force (n <= {CHECK_LIMIT})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="optinterval", description=__doc__.split("\n\n")[0])
    _global_options(parser, suppress=False)
    shared = argparse.ArgumentParser(add_help=False)
    _global_options(shared, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hci", parents=[shared], help="max confidence subject to hit >= LH")
    p.add_argument("--lh", required=True, help="hit-support lower bound")
    p.add_argument("--stream", action="store_true", help="emit one result per input line")
    p.set_defaults(func=cmd_hci)

    p = sub.add_parser("psei", parents=[shared], help="max eccentricity subject to length >= LS")
    p.add_argument("--ls", required=True, type=int, help="length lower bound")
    p.set_defaults(func=cmd_psei)

    p = sub.add_parser("convolve", parents=[shared], help="min-plus convolution of two vectors")
    p.add_argument("--x", required=True, help="file with one value per line ('inf' = TOP)")
    p.add_argument("--y", required=True)
    p.add_argument("--naive", action="store_true", help="quadratic evaluation instead of blocked products")
    p.set_defaults(func=cmd_convolve)

    p = sub.add_parser("maxsums", parents=[shared], help="best sum for every window length")
    p.set_defaults(func=cmd_maxsums)

    p = sub.add_parser("bench", parents=[shared], help="time the fast paths on random data")
    p.add_argument("--sizes", required=True, help="comma-separated instance sizes")
    p.add_argument("--seed", type=int, default=12345)
    p.set_defaults(func=cmd_bench)
    return parser


def run_cli(argv: Sequence[str] | None = None, stdin: IO | None = None,
            stdout: IO | None = None, stderr: IO | None = None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_INPUT
    try:
        return args.func(args, stdin, stdout, stderr)
    except InputError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    except IntervalError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    except CheckFailed as exc:
        print(f"check failed: {exc}", file=stderr)
        return EXIT_MISMATCH


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
