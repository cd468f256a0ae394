from dirty_mac_lab.gap.sweep import SweepRanges, run_sweep, sample_sweep, summarize
from dirty_mac_lab.gap.verify import (
    GapCase,
    GapReport,
    analytic_gap_bounds,
    classify_case,
    shrink_check,
    verify_theorems,
)

__all__ = [
    "GapCase",
    "GapReport",
    "SweepRanges",
    "analytic_gap_bounds",
    "classify_case",
    "run_sweep",
    "sample_sweep",
    "shrink_check",
    "summarize",
    "verify_theorems",
]
