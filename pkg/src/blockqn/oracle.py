"""Objective-function interface and finite-difference verification.

Every problem is exposed as an ObjectiveOracle providing the value, the
gradient, and the Hessian acting on a block of directions.  Taking a block
in one call lets implementations batch the column products; a single
vector is simply the one-column case.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np


class NonFiniteValue(Exception):
    """An evaluation produced a non-finite value where one was required."""


@dataclass
class EvalCounters:
    """Work counters: function values, gradients, Hessian-action columns."""

    n_f: int = 0
    n_grad: int = 0
    n_hess_action_cols: int = 0

    def copy(self) -> "EvalCounters":
        return EvalCounters(self.n_f, self.n_grad, self.n_hess_action_cols)

    def delta_since(self, base: "EvalCounters") -> "EvalCounters":
        return EvalCounters(
            self.n_f - base.n_f,
            self.n_grad - base.n_grad,
            self.n_hess_action_cols - base.n_hess_action_cols,
        )

    def as_dict(self) -> dict:
        return {
            "n_f": self.n_f,
            "n_grad": self.n_grad,
            "n_hess_action_cols": self.n_hess_action_cols,
        }


class ObjectiveOracle:
    """Uniform objective interface: value, gradient, Hessian action.

    The callables must be pure in the argument; the oracle itself only
    mutates its counters.  Hessian-action calls are charged one unit per
    column.  Concurrent use should give each worker its own ``fresh()``
    clone and merge counters afterwards.
    """

    def __init__(
        self,
        dim: int,
        eval_f: Callable[[np.ndarray], float],
        eval_grad: Callable[[np.ndarray], np.ndarray],
        eval_hess_action: Callable[[np.ndarray, np.ndarray], np.ndarray],
        eval_hess: Optional[Callable[[np.ndarray], np.ndarray]] = None,
        name: str = "",
    ):
        if dim < 1:
            raise ValueError("dimension must be positive")
        self.dim = dim
        self.eval_f = eval_f
        self.eval_grad = eval_grad
        self.eval_hess_action = eval_hess_action
        self.eval_hess = eval_hess
        self.name = name
        self.counters = EvalCounters()

    def f(self, x: np.ndarray) -> float:
        self.counters.n_f += 1
        return float(self.eval_f(np.asarray(x, dtype=float)))

    def grad(self, x: np.ndarray) -> np.ndarray:
        self.counters.n_grad += 1
        return np.asarray(self.eval_grad(np.asarray(x, dtype=float)), dtype=float)

    def hess_action(self, x: np.ndarray, directions: np.ndarray) -> np.ndarray:
        """Product of the Hessian at x with a block of direction columns."""
        v = np.asarray(directions, dtype=float)
        if v.ndim == 1:
            v = v[:, None]
        if v.shape[0] != self.dim:
            raise ValueError("direction block has wrong row count")
        self.counters.n_hess_action_cols += v.shape[1]
        out = np.asarray(self.eval_hess_action(np.asarray(x, dtype=float), v), dtype=float)
        return out.reshape(self.dim, v.shape[1])

    def hess(self, x: np.ndarray) -> np.ndarray:
        if self.eval_hess is None:
            raise NotImplementedError("oracle does not expose a dense Hessian")
        return np.asarray(self.eval_hess(np.asarray(x, dtype=float)), dtype=float)

    @property
    def has_hess(self) -> bool:
        return self.eval_hess is not None

    def fresh(self) -> "ObjectiveOracle":
        """Clone sharing the callables but with zeroed counters."""
        return ObjectiveOracle(
            self.dim, self.eval_f, self.eval_grad, self.eval_hess_action,
            self.eval_hess, self.name,
        )


def default_fd_step(x: np.ndarray) -> float:
    """Central-difference step balancing curvature error against round-off."""
    return 1e-5 * (1.0 + float(np.linalg.norm(x)))


def check_gradient(oracle: ObjectiveOracle, x: np.ndarray, h: float | None = None) -> float:
    """Max componentwise relative error of the gradient vs central differences.

    The denominator for component i is max(1, |g_i|) with g the analytic
    gradient.  Raises NonFiniteValue if any evaluation is non-finite.
    """
    x = np.asarray(x, dtype=float)
    if h is None:
        h = default_fd_step(x)
    if h <= 0.0:
        raise ValueError("step must be positive")
    g = oracle.grad(x)
    if not np.all(np.isfinite(g)):
        raise NonFiniteValue("analytic gradient is not finite")
    worst = 0.0
    e = np.zeros_like(x)
    for i in range(x.size):
        e[i] = h
        f_plus = oracle.f(x + e)
        f_minus = oracle.f(x - e)
        e[i] = 0.0
        if not (np.isfinite(f_plus) and np.isfinite(f_minus)):
            raise NonFiniteValue(f"objective not finite near component {i}")
        g_num = (f_plus - f_minus) / (2.0 * h)
        worst = max(worst, abs(g_num - g[i]) / max(1.0, abs(g[i])))
    return worst


def check_hess_action(
    oracle: ObjectiveOracle, x: np.ndarray, v: np.ndarray, h: float | None = None
) -> float:
    """Relative Euclidean error of the Hessian action vs differenced gradients."""
    x = np.asarray(x, dtype=float)
    v = np.asarray(v, dtype=float)
    if h is None:
        h = default_fd_step(x)
    if h <= 0.0:
        raise ValueError("step must be positive")
    action = oracle.hess_action(x, v[:, None])[:, 0]
    g_plus = oracle.grad(x + h * v)
    g_minus = oracle.grad(x - h * v)
    if not (np.all(np.isfinite(g_plus)) and np.all(np.isfinite(g_minus))):
        raise NonFiniteValue("gradient not finite at displaced points")
    numeric = (g_plus - g_minus) / (2.0 * h)
    diff = float(np.linalg.norm(action - numeric))
    denom = float(np.linalg.norm(numeric))
    if diff == 0.0:
        return 0.0
    return diff / denom if denom > 0.0 else diff
