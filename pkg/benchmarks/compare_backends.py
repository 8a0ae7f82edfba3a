"""Compare the numba kernels with the pure numpy/Python fallback.

Runs ``optinterval bench`` twice in fresh interpreters, once with
OPTINTERVAL_DISABLE_NUMBA=0 and once with =1, and prints a side-by-side table.

    python benchmarks/compare_backends.py --sizes 1000,10000,100000
"""
import argparse
import csv
import io
import os
import subprocess
import sys


def run(sizes, seed, disable):
    env = dict(os.environ, OPTINTERVAL_DISABLE_NUMBA="1" if disable else "0")
    cmd = [sys.executable, "-m", "optinterval", "bench", "--sizes", sizes, "--seed", str(seed)]
    out = subprocess.run(cmd, env=env, check=True, capture_output=True, text=True).stdout
    return {(int(r["size"]), r["subcommand"]): float(r["seconds"]) for r in csv.DictReader(io.StringIO(out))}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="1000,3000,10000")
    ap.add_argument("--seed", type=int, default=12345)
    args = ap.parse_args(argv)

    fast = run(args.sizes, args.seed, disable=False)
    slow = run(args.sizes, args.seed, disable=True)
    print(f"{'size':>9} {'subcommand':<10} {'numba s':>10} {'numpy s':>10} {'speedup':>8}")
    for key in sorted(fast):
        a, b = fast[key], slow[key]
        ratio = b / a if a > 0 else float("inf")
        print(f"{key[0]:>9} {key[1]:<10} {a:>10.4f} {b:>10.4f} {ratio:>7.1f}x")


if __name__ == "__main__":
    main()
