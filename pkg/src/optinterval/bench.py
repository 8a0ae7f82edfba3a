"""Timing harness for the fast paths.

Instances are drawn from ``numpy.random.default_rng(seed + size)`` so a
given ``(seed, size)`` always produces the same data.  Each kernel is run
once on a tiny instance first so compilation time stays out of the report.
"""
from __future__ import annotations

import csv
import time
from math import isqrt
from typing import IO, NamedTuple, Sequence

import numpy as np

from .core import validate_arrays
from .hci import compute_hci
from .minplus import blocked_convolution_packed, top_marker
from .psei import compute_psei

SUBCOMMANDS = ("hci", "psei", "convolve")


class BenchRow(NamedTuple):
    size: int
    subcommand: str
    seconds: float


def make_instances(size: int, seed: int = 12345) -> dict:
    rng = np.random.default_rng(seed + size)
    h = rng.integers(-10, 11, size)
    s = rng.integers(1, 6, size)
    plain = rng.integers(-10, 11, size)
    x = rng.integers(-1000, 1001, size)
    y = rng.integers(-1000, 1001, size)
    return {
        "hci": (validate_arrays(h, s), max(1, size // 100)),
        "psei": (validate_arrays(plain, np.ones_like(plain)), max(1, isqrt(size))),
        "convolve": (x, y),
    }


def _run(name: str, inst) -> None:
    if name == "hci":
        compute_hci(*inst)
    elif name == "psei":
        compute_psei(*inst)
    else:
        blocked_convolution_packed(inst[0], inst[1], top_marker("int64"))


def _warm_up() -> None:
    inst = make_instances(64, seed=0)
    for name in SUBCOMMANDS:
        _run(name, inst[name])


def run_bench(sizes: Sequence[int], seed: int = 12345) -> list[BenchRow]:
    rows: list[BenchRow] = []
    if not sizes:
        return rows
    _warm_up()
    for size in sizes:
        inst = make_instances(size, seed)
        for name in SUBCOMMANDS:
            t0 = time.perf_counter()
            _run(name, inst[name])
            rows.append(BenchRow(size, name, time.perf_counter() - t0))
    return rows


def write_report(rows: Sequence[BenchRow], out: IO) -> None:
    """CSV with a ``size,subcommand,seconds`` header; nothing at all for no rows."""
    if not rows:
        return
    w = csv.writer(out, lineterminator="\n")
    w.writerow(BenchRow._fields)
    for r in rows:
        w.writerow((r.size, r.subcommand, f"{r.seconds:.6f}"))
