"""Quasi-Newton solvers with block curvature updates.

The solvers keep an inverse curvature approximation and refresh it either
from classical gradient differences or from the true Hessian's action on
blocks of recent steps, with a pivot-based filter guarding the block
update.  A benchmark harness runs solver-by-problem grids and computes
relative-cost profile curves.
"""

from .linalg import (
    COMPARE_TOL,
    DegenerateFactor,
    LdltFactor,
    LinalgError,
    NotPositiveDefinite,
    RECONSTRUCT_TOL,
    SymMatrix,
    det_spd,
    ldlt,
    solve_spd,
)
from .linesearch import (
    LineSearchParams,
    LineSearchResult,
    LineSearchStatus,
    NotDescent,
    wolfe_search,
)
from .oracle import (
    EvalCounters,
    NonFiniteValue,
    ObjectiveOracle,
    check_gradient,
    check_hess_action,
    default_fd_step,
)
from .solvers import (
    Method,
    RunTrace,
    SolverConfig,
    StepRecord,
    Termination,
    default_block_size,
    default_rolling_window,
    solve,
    solve_bfgs,
    solve_block_bfgs,
    solve_rolling_block_bfgs,
    solve_variant,
)
from .updates import (
    CurvatureViolation,
    FilterResult,
    InverseApprox,
    SingularBlock,
    StepBlock,
    block_update_direct,
    block_update_inverse,
    cautious_gate,
    filter_steps,
    li_fukushima_modify,
    powell_damp,
    secant_update,
)

__version__ = "0.1.0"

__all__ = [
    "COMPARE_TOL",
    "CurvatureViolation",
    "DegenerateFactor",
    "EvalCounters",
    "FilterResult",
    "InverseApprox",
    "LdltFactor",
    "LinalgError",
    "LineSearchParams",
    "LineSearchResult",
    "LineSearchStatus",
    "Method",
    "NonFiniteValue",
    "NotDescent",
    "NotPositiveDefinite",
    "ObjectiveOracle",
    "RECONSTRUCT_TOL",
    "RunTrace",
    "SingularBlock",
    "SolverConfig",
    "StepBlock",
    "StepRecord",
    "SymMatrix",
    "Termination",
    "block_update_direct",
    "block_update_inverse",
    "cautious_gate",
    "check_gradient",
    "check_hess_action",
    "default_block_size",
    "default_fd_step",
    "default_rolling_window",
    "det_spd",
    "filter_steps",
    "ldlt",
    "li_fukushima_modify",
    "powell_damp",
    "secant_update",
    "solve",
    "solve_bfgs",
    "solve_block_bfgs",
    "solve_rolling_block_bfgs",
    "solve_spd",
    "solve_variant",
    "wolfe_search",
]
