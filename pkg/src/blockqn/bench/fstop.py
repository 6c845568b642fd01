"""Success thresholds for declaring a problem solved."""

from __future__ import annotations

from typing import Optional

import numpy as np

from ..oracle import ObjectiveOracle
from ..solvers import Method, SolverConfig, Termination, solve

# Below this magnitude the optimal value is treated as zero and the
# threshold becomes absolute.
ZERO_LEVEL = 1e-10


class ReferenceFailed(Exception):
    """The reference run made no progress from the starting point."""


def success_threshold(f_best: float, eps: float = 0.01) -> float:
    """f_best + eps * |f_best|, absolute ZERO_LEVEL when f_best is ~zero."""
    if abs(f_best) < ZERO_LEVEL:
        return f_best + ZERO_LEVEL
    return f_best + eps * abs(f_best)


def reference_config() -> SolverConfig:
    """High-budget classical method used to estimate the optimal value."""
    return SolverConfig(method=Method.BFGS, grad_tol=1e-9, max_steps=50000)


def compute_fstop(
    oracle: ObjectiveOracle, x0: np.ndarray, reference_cfg: Optional[SolverConfig] = None
) -> float:
    """Threshold derived from a near-optimal value of a reference run."""
    cfg = reference_cfg if reference_cfg is not None else reference_config()
    trace = solve(oracle.fresh(), x0, cfg)
    if trace.n_steps == 0 and trace.termination is Termination.LINE_SEARCH_FAIL:
        raise ReferenceFailed("reference run could not leave the starting point")
    return success_threshold(trace.best_f())
