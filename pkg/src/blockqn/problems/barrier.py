"""Logarithmic-barrier surrogates of inequality-constrained QPs.

A standard-form QP (equality constraints plus nonnegativity) is reduced
to an unconstrained problem over the null space of the equality matrix,
with the bound constraints replaced by a weighted log barrier.  The
reduced objective is +inf outside its open domain; the line search treats
that as a rejected step.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.optimize

from ..linalg import SymMatrix, sym_part
from ..oracle import ObjectiveOracle

# Barrier weight used throughout the benchmark problems.
DEFAULT_BARRIER_WEIGHT = 1000.0
_RANK_TOL = 1e-10


class Infeasible(Exception):
    """No strictly positive feasible point could be found."""


class RankDeficient(Exception):
    """The equality constraint matrix does not have full row rank."""


@dataclass
class QpStandardForm:
    """min 1/2 x^T Q x + c^T x  subject to  A x = b, x >= 0."""

    q_mat: np.ndarray
    c: np.ndarray
    a_mat: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        self.q_mat = self.q_mat.full() if isinstance(self.q_mat, SymMatrix) else np.asarray(self.q_mat, dtype=float)
        self.c = np.asarray(self.c, dtype=float)
        self.a_mat = np.asarray(self.a_mat, dtype=float)
        self.b = np.asarray(self.b, dtype=float)


@dataclass
class BarrierProblem:
    """Reduced unconstrained barrier objective over the null-space variable."""

    qbar: np.ndarray
    cbar: np.ndarray
    abar: np.ndarray
    bbar: np.ndarray
    mu: float

    def __post_init__(self):
        self.qbar = self.qbar.full() if isinstance(self.qbar, SymMatrix) else np.asarray(self.qbar, dtype=float)
        self.cbar = np.asarray(self.cbar, dtype=float)
        self.abar = np.asarray(self.abar, dtype=float)
        self.bbar = np.asarray(self.bbar, dtype=float)
        if self.mu <= 0.0:
            raise ValueError("barrier weight must be positive")

    @property
    def dim(self) -> int:
        return self.abar.shape[1]


def _strictly_feasible_point(a: np.ndarray, b: np.ndarray, nullbasis: np.ndarray) -> np.ndarray:
    """Find x with A x = b and x > 0 by maximizing the smallest component."""
    x_part, *_ = np.linalg.lstsq(a, b, rcond=None)
    if np.min(x_part) > 1e-9:
        return x_part
    # Maximize t subject to x_part + N z >= t over (z, t).
    n, s = nullbasis.shape
    c_obj = np.zeros(s + 1)
    c_obj[-1] = -1.0
    a_ub = np.hstack([-nullbasis, np.ones((n, 1))])
    bounds = [(None, None)] * s + [(None, np.max(np.abs(x_part)) + 1.0)]
    res = scipy.optimize.linprog(c_obj, A_ub=a_ub, b_ub=x_part, bounds=bounds, method="highs")
    if not res.success or res.x[-1] <= 1e-9:
        raise Infeasible("no strictly positive point satisfies the equalities")
    return x_part + nullbasis @ res.x[:-1]


def reduce_qp_to_barrier(
    qp: QpStandardForm, mu: float = DEFAULT_BARRIER_WEIGHT, x0: np.ndarray | None = None
) -> BarrierProblem:
    """Eliminate the equality constraints and install the log barrier.

    With N an orthonormal basis of the null space of A and x0 a strictly
    positive solution of A x = b, the reduced data are Qbar = N^T Q N,
    cbar = N^T (c + Q x0), bbar = x0 and the constraint matrix -N, so the
    origin of the reduced variable is strictly interior.
    """
    a = qp.a_mat
    p, n = a.shape
    u, sv, vt = np.linalg.svd(a)
    rank = int(np.sum(sv > _RANK_TOL * max(1.0, sv[0] if sv.size else 0.0)))
    if rank < p:
        raise RankDeficient(f"equality matrix has rank {rank} < {p}")
    if rank == n:
        raise Infeasible("equality constraints leave no degrees of freedom")
    nullbasis = vt[rank:].T  # orthonormal, n x (n - rank)

    if x0 is None:
        x0 = _strictly_feasible_point(a, qp.b, nullbasis)
    else:
        x0 = np.asarray(x0, dtype=float)
        if np.linalg.norm(a @ x0 - qp.b) > 1e-8 * max(1.0, np.linalg.norm(qp.b)):
            raise Infeasible("supplied point does not satisfy the equalities")
        if np.min(x0) <= 0.0:
            raise Infeasible("supplied point is not strictly positive")

    qbar = sym_part(nullbasis.T @ qp.q_mat @ nullbasis)
    cbar = nullbasis.T @ (qp.c + qp.q_mat @ x0)
    return BarrierProblem(qbar, cbar, -nullbasis, x0, mu)


def barrier_oracle(bp: BarrierProblem) -> ObjectiveOracle:
    """Oracle for the reduced barrier objective.

    F(y) = 1/2 y^T Qbar y + cbar^T y - mu * sum log(bbar - Abar y), with
    value +inf outside the open domain.  The gradient and Hessian action
    are only requested at interior points.
    """
    qbar, cbar, abar, bbar, mu = bp.qbar, bp.cbar, bp.abar, bp.bbar, bp.mu
    s = bp.dim
    if np.min(bbar) <= 0.0:
        raise ValueError("constraint offsets must be strictly positive")
    # Splitting log(b - u) into log(b) + log1p(-u/b) keeps the variable
    # part of the barrier accurate near the interior point; forming the
    # residual first would round at the scale of b and the weight mu
    # amplifies that rounding beyond the decreases the line search must
    # certify near a tight-tolerance minimum.
    log_offset = float(np.sum(np.log(bbar)))

    def residual(y):
        return bbar - abar @ y

    def eval_f(y):
        u = (abar @ y) / bbar
        if np.max(u) >= 1.0:
            return np.inf
        return float(
            0.5 * (y @ (qbar @ y)) + cbar @ y - mu * (log_offset + np.sum(np.log1p(-u)))
        )

    def eval_grad(y):
        r = residual(y)
        if np.min(r) <= 0.0:
            return np.full(s, np.nan)
        return qbar @ y + cbar + mu * (abar.T @ (1.0 / r))

    def eval_hess_action(y, v):
        r = residual(y)
        if np.min(r) <= 0.0:
            return np.full((s, v.shape[1]), np.nan)
        weights = 1.0 / (r * r)
        return qbar @ v + mu * (abar.T @ (weights[:, None] * (abar @ v)))

    def eval_hess(y):
        r = residual(y)
        if np.min(r) <= 0.0:
            return np.full((s, s), np.nan)
        weights = 1.0 / (r * r)
        return qbar + mu * (abar.T @ (weights[:, None] * abar))

    return ObjectiveOracle(s, eval_f, eval_grad, eval_hess_action, eval_hess, name="barrier")
