"""Rational cohomology of simple SL2-modules in positive characteristic."""

from .engine import DimCache, cache_load, cache_save, ext_dim, h_dim, is_maximally_untwisted
from .enumerate import (
    CheckReport,
    ScanResult,
    cross_check_wq,
    gamma_lower_bound,
    scan_cohomological,
    scan_untwisted,
    verify_theorem_a,
)
from .families import Shift, Twist, Zero, evaluate, expand, render, to_symbolic, wq_families
from .weights import Prime, decompose, frobenius_twist, is_linked, linked_to_zero, padic_digits, shift

__version__ = "0.1.0"
