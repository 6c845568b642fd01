"""Classification losses with analytic gradients and Hessian actions."""

from __future__ import annotations

import numpy as np
from scipy.special import expit

from ..linalg import SymMatrix
from ..oracle import ObjectiveOracle
from .datasets import SparseDataset


class DimensionMismatch(Exception):
    """Operands have incompatible dimensions."""


def _as_square(matrix, n: int, what: str) -> np.ndarray:
    full = matrix.full() if isinstance(matrix, SymMatrix) else np.asarray(matrix, dtype=float)
    if full.shape != (n, n):
        raise DimensionMismatch(f"{what} must be {n}x{n}, got {full.shape}")
    return full


def logistic_oracle(data: SparseDataset, reg) -> ObjectiveOracle:
    """Regularized log-loss for binary labels.

    f(w) = -(1/m) sum_i log p(y_i | x_i, w) + (1/2m) w^T Q w, with the
    per-point probability the sigmoid of the signed score.  The log term
    is evaluated through log(1 + exp(.)) so large scores cannot overflow.
    """
    x = data.features
    y = np.asarray(data.labels, dtype=float)
    m, n = x.shape
    q = _as_square(reg, n, "regularizer")
    sign = 1.0 - 2.0 * y  # maps label 1 -> -1, label 0 -> +1

    def eval_f(w):
        z = x @ w
        return float(np.mean(np.logaddexp(0.0, sign * z)) + 0.5 * (w @ (q @ w)) / m)

    def eval_grad(w):
        p = expit(x @ w)
        return (x.T @ (p - y)) / m + (q @ w) / m

    def eval_hess_action(w, v):
        p = expit(x @ w)
        weights = p * (1.0 - p)
        return (x.T @ (weights[:, None] * (x @ v))) / m + (q @ v) / m

    def eval_hess(w):
        p = expit(x @ w)
        weights = p * (1.0 - p)
        return np.asarray((x.T @ x.multiply(weights[:, None])).toarray()) / m + q / m

    return ObjectiveOracle(n, eval_f, eval_grad, eval_hess_action, eval_hess, name="logistic")


def tanh_oracle(data: SparseDataset) -> ObjectiveOracle:
    """Hyperbolic-tangent loss, generally non-convex.

    f(w) = (1/m) sum_i (1 - tanh(y_i x_i^T w)) + (1/2m) ||w||^2.  Unlike
    the log loss, the label enters multiplicatively, so points with label
    0 contribute a constant.
    """
    x = data.features
    y = np.asarray(data.labels, dtype=float)
    m, n = x.shape

    def eval_f(w):
        t = np.tanh(y * (x @ w))
        return float(np.mean(1.0 - t) + 0.5 * (w @ w) / m)

    def eval_grad(w):
        t = np.tanh(y * (x @ w))
        # 1 - t^2 is the derivative of tanh, stable for any argument
        return (x.T @ (-y * (1.0 - t * t))) / m + w / m

    def eval_hess_action(w, v):
        t = np.tanh(y * (x @ w))
        weights = 2.0 * y * y * t * (1.0 - t * t)
        return (x.T @ (weights[:, None] * (x @ v))) / m + v / m

    return ObjectiveOracle(n, eval_f, eval_grad, eval_hess_action, name="tanh")
