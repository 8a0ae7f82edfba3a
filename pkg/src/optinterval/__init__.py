"""Constrained optimal intervals in number-pair sequences.

Maximum-confidence intervals under a hit lower bound (offline and online),
maximum-eccentricity intervals under a length lower bound, and the min-plus
convolution they are built on.  Brute-force references live in
:mod:`optinterval.oracle`.
"""
from .core import (
    Eccentricity,
    IndexInterval,
    IntervalError,
    PairSequence,
    PrefixSums,
    UsageError,
    ValidationError,
    build_prefix_sums,
    compare_conf,
    compare_ecc,
    validate_arrays,
    validate_sequence,
)
from .hci import HciAnswer, HciStream, compute_hci, compute_rmp, max_conf_support_capped
from .minplus import TOP, blocked_convolution, naive_convolution
from .psei import compute_psei, max_consecutive_sums

__all__ = [
    "Eccentricity", "IndexInterval", "IntervalError", "PairSequence", "PrefixSums",
    "UsageError", "ValidationError", "build_prefix_sums", "compare_conf", "compare_ecc",
    "validate_arrays", "validate_sequence", "HciAnswer", "HciStream", "compute_hci",
    "compute_rmp", "max_conf_support_capped", "TOP", "blocked_convolution",
    "naive_convolution", "compute_psei", "max_consecutive_sums",
]
