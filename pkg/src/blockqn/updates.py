"""Curvature-approximation updates.

Two families live here.  The block family updates the inverse
approximation so that it reproduces the true Hessian's action on a set of
recent step directions, after filtering out directions whose elimination
pivot is too small relative to the step length.  The secant family is the
classical rank-two update plus its non-convex safeguards: the cautious
gate, the residual modification, and damping.

Solvers keep the inverse form, so the search direction is a plain
matrix-vector product; the direct form exists to cross-check the inverse
update and the determinant identity in tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import (
    DegenerateFactor,
    LdltFactor,
    NotPositiveDefinite,
    SymMatrix,
    ldlt,
    solve_spd,
    sym_part,
)


class SingularBlock(Exception):
    """The filtered direction block produced a singular inner system."""


class CurvatureViolation(Exception):
    """A secant update was requested with non-positive curvature."""


@dataclass(frozen=True)
class InverseApprox:
    """Symmetric positive definite approximation of the inverse Hessian."""

    h: SymMatrix

    @classmethod
    def identity(cls, n: int, scale: float = 1.0) -> "InverseApprox":
        return cls(SymMatrix.identity(n, scale))

    def full(self) -> np.ndarray:
        return self.h.full()


@dataclass
class StepBlock:
    """The steps of one block, their gradients, and the Hessian action.

    The Hessian action is evaluated once, at the block's final point, for
    all step columns together.
    """

    s_cols: np.ndarray
    g_cols: np.ndarray
    gs_cols: np.ndarray
    block_index: int = 0

    def __post_init__(self):
        self.s_cols = np.atleast_2d(np.asarray(self.s_cols, dtype=float))
        self.g_cols = np.atleast_2d(np.asarray(self.g_cols, dtype=float))
        self.gs_cols = np.atleast_2d(np.asarray(self.gs_cols, dtype=float))
        if self.s_cols.shape != self.gs_cols.shape:
            raise ValueError("step and Hessian-action blocks must have equal shape")
        if self.s_cols.shape[1] == 0:
            raise ValueError("block must contain at least one step")


@dataclass
class FilterResult:
    """Surviving step columns with the factorization of their inner matrix."""

    kept_indices: list[int]
    d_cols: np.ndarray
    gd_cols: np.ndarray
    ldlt_of_dgd: LdltFactor = field(repr=False)

    @property
    def empty(self) -> bool:
        return len(self.kept_indices) == 0

    @property
    def n_kept(self) -> int:
        return len(self.kept_indices)

    @classmethod
    def from_directions(cls, d_cols: np.ndarray, gd_cols: np.ndarray) -> "FilterResult":
        """Wrap an unfiltered direction block, factoring its inner matrix."""
        d_cols = np.atleast_2d(np.asarray(d_cols, dtype=float))
        gd_cols = np.atleast_2d(np.asarray(gd_cols, dtype=float))
        inner = sym_part(d_cols.T @ gd_cols)
        return cls(list(range(d_cols.shape[1])), d_cols, gd_cols, ldlt(inner))


def filter_steps(block: StepBlock, tau: float, always_keep_first: bool = False) -> FilterResult:
    """Select step columns whose elimination pivot clears the threshold.

    Builds the unpivoted triangular factorization of the steps' inner
    curvature matrix column by column.  Column i survives iff its pivot
    satisfies pivot >= tau * ||s_i||^2; a rejected column is removed along
    with its partial multiplier row and examination resumes at the same
    position.  With ``always_keep_first`` the first step is kept
    unconditionally, which callers should only request when the objective
    is strongly convex.

    An empty result is valid: the caller then leaves its approximation
    unchanged.
    """
    if tau <= 0.0:
        raise ValueError("tau must be positive")
    s = block.s_cols
    inner = sym_part(s.T @ block.gs_cols)
    norms2 = np.sum(s * s, axis=0)
    q = s.shape[1]

    kept: list[int] = []
    pivots: list[float] = []
    cand = list(range(q))
    mult: dict[int, list[float]] = {j: [] for j in cand}

    pos = 0
    while pos < len(cand):
        j = cand[pos]
        row = mult[j]
        sigma2 = inner[j, j] - sum(l * l * p for l, p in zip(row, pivots))
        forced = always_keep_first and j == 0 and not kept
        if forced or sigma2 >= tau * norms2[j]:
            for jj in cand[pos + 1:]:
                cross = inner[jj, j] - sum(
                    a * b * p for a, b, p in zip(mult[jj], row, pivots)
                )
                mult[jj].append(cross / sigma2)
            kept.append(j)
            pivots.append(sigma2)
            pos += 1
        else:
            del cand[pos]
            del mult[j]

    n_kept = len(kept)
    lower = np.eye(n_kept)
    for r in range(n_kept):
        lower[r, :r] = mult[kept[r]]
    factor = LdltFactor(lower, np.array(pivots))
    return FilterResult(kept, s[:, kept], block.gs_cols[:, kept], factor)


def block_update_inverse(h: InverseApprox, filt: FilterResult) -> InverseApprox:
    """Project the inverse approximation onto matrices matching the
    Hessian's action on the filtered directions.

    Returns H+ = D C^-1 D^T + (I - D C^-1 (GD)^T) H (I - GD C^-1 D^T) with
    C = D^T G D, evaluated in expanded form so the cost stays quadratic in
    the dimension.  H+ is symmetric positive definite whenever H is and C
    is.
    """
    if filt.empty:
        raise ValueError("cannot update from an empty filter result")
    factor = filt.ldlt_of_dgd
    if not factor.is_positive:
        raise SingularBlock("inner curvature matrix is not positive definite")
    hf = h.full()
    d = filt.d_cols
    gd = filt.gd_cols
    try:
        u = factor.solve(d.T).T  # D C^-1
    except NotPositiveDefinite as exc:
        raise SingularBlock(str(exc)) from exc
    m = hf @ gd
    w = gd.T @ m
    hp = hf + u @ d.T - u @ m.T - m @ u.T + u @ w @ u.T
    return InverseApprox(SymMatrix.from_full(hp, symmetrize=True))


def block_update_direct(b, filt: FilterResult) -> SymMatrix:
    """Direct-form counterpart of the inverse block update.

    B+ = B - BD (D^T B D)^-1 D^T B + GD (D^T G D)^-1 (GD)^T.  Used to
    verify inverse consistency and the determinant identity; the solve
    path never calls it.
    """
    if filt.empty:
        raise ValueError("cannot update from an empty filter result")
    bf = b.full() if isinstance(b, SymMatrix) else np.asarray(b, dtype=float)
    d = filt.d_cols
    gd = filt.gd_cols
    bd = bf @ d
    try:
        corr_b = bd @ solve_spd(sym_part(d.T @ bd), bd.T)
        corr_g = gd @ filt.ldlt_of_dgd.solve(gd.T)
    except (NotPositiveDefinite, DegenerateFactor) as exc:
        raise SingularBlock(str(exc)) from exc
    return SymMatrix.from_full(bf - corr_b + corr_g, symmetrize=True)


def secant_update(h: InverseApprox, s: np.ndarray, y: np.ndarray) -> InverseApprox:
    """Classical rank-two inverse update enforcing H+ y = s."""
    s = np.asarray(s, dtype=float)
    y = np.asarray(y, dtype=float)
    ys = float(y @ s)
    if ys <= 0.0:
        raise CurvatureViolation(f"curvature {ys:.3e} is not positive")
    hf = h.full()
    hy = hf @ y
    rho = 1.0 / ys
    hp = (
        hf
        - rho * (np.outer(s, hy) + np.outer(hy, s))
        + rho * (rho * float(y @ hy) + 1.0) * np.outer(s, s)
    )
    return InverseApprox(SymMatrix.from_full(hp, symmetrize=True))


def cautious_gate(s, y, g, eps: float, exponent: float) -> bool:
    """Whether observed curvature is large enough to allow an update."""
    s = np.asarray(s, dtype=float)
    y = np.asarray(y, dtype=float)
    ss = float(s @ s)
    if ss == 0.0:
        raise ValueError("step must be nonzero")
    gnorm = float(np.linalg.norm(g))
    return float(y @ s) / ss >= eps * gnorm**exponent


def li_fukushima_modify(s, y, eps: float) -> np.ndarray:
    """Shift the gradient difference to guarantee positive curvature.

    Returns z = y + r s with r = max(0, eps - <y,s>/||s||^2), so that
    <z,s> >= eps ||s||^2 always holds.
    """
    s = np.asarray(s, dtype=float)
    y = np.asarray(y, dtype=float)
    ss = float(s @ s)
    if ss == 0.0:
        raise ValueError("step must be nonzero")
    if eps <= 0.0:
        raise ValueError("eps must be positive")
    r = max(0.0, eps - float(y @ s) / ss)
    return y + r * s


def powell_damp(s, y, b_action_s, phi: float) -> np.ndarray:
    """Blend the gradient difference with B s to keep curvature positive.

    With theta = 1 when <y,s> >= phi s^T B s and
    theta = (1-phi) s^T B s / (s^T B s - <y,s>) otherwise, returns
    z = theta y + (1-theta) B s, which satisfies <z,s> >= phi s^T B s.
    """
    if not 0.0 < phi < 1.0:
        raise ValueError("phi must lie in (0, 1)")
    s = np.asarray(s, dtype=float)
    y = np.asarray(y, dtype=float)
    bs = np.asarray(b_action_s, dtype=float)
    sbs = float(s @ bs)
    if sbs <= 0.0:
        raise ValueError("s^T B s must be positive")
    ys = float(y @ s)
    if ys >= phi * sbs:
        return y.copy()
    theta = (1.0 - phi) * sbs / (sbs - ys)
    return theta * y + (1.0 - theta) * bs
