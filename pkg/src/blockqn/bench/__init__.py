"""Experiment runner and relative-cost profile computation."""

from .fstop import ReferenceFailed, ZERO_LEVEL, compute_fstop, reference_config, success_threshold
from .grid import GridResult, Metric, run_grid
from .profiles import (
    CostMatrix,
    EmptyInput,
    ProfileCurve,
    performance_profile,
    write_profile_csv,
    write_profile_svg,
)

__all__ = [
    "CostMatrix",
    "EmptyInput",
    "GridResult",
    "Metric",
    "ProfileCurve",
    "ReferenceFailed",
    "ZERO_LEVEL",
    "compute_fstop",
    "performance_profile",
    "reference_config",
    "run_grid",
    "success_threshold",
    "write_profile_csv",
    "write_profile_svg",
]
