"""Dense symmetric linear-algebra kernels.

The factorization here is deliberately unpivoted: the step-filtering
procedure eliminates columns in their original order, and pivoting would
change which columns survive.  Near-singular inputs are the filter's
problem to handle, not this module's.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

# Tolerances shared by the test suite.  Factor round-trips must hold to
# RECONSTRUCT_TOL (relative); derived-value comparisons use COMPARE_TOL.
RECONSTRUCT_TOL = 1e-10
COMPARE_TOL = 1e-8


class LinalgError(Exception):
    """Base class for failures in this module."""


class DegenerateFactor(LinalgError):
    """A zero or negative pivot appeared where positivity was required."""


class NotPositiveDefinite(LinalgError):
    """The matrix passed to an SPD-only operation is not positive definite."""


class SymMatrix:
    """Symmetric matrix stored as its packed upper triangle.

    Symmetry is structural: only one triangle is kept, so a SymMatrix can
    never drift out of symmetry.  ``full()`` expands to a dense symmetric
    array for use with numpy.
    """

    __slots__ = ("dim", "packed")

    def __init__(self, dim: int, packed: np.ndarray):
        if dim < 1:
            raise ValueError("dimension must be positive")
        packed = np.asarray(packed, dtype=float)
        if packed.shape != (dim * (dim + 1) // 2,):
            raise ValueError("packed triangle has wrong length")
        if not np.all(np.isfinite(packed)):
            raise ValueError("entries must be finite")
        self.dim = dim
        self.packed = packed

    @classmethod
    def from_full(cls, a, symmetrize: bool = False) -> "SymMatrix":
        a = np.asarray(a, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("expected a square matrix")
        if symmetrize:
            a = 0.5 * (a + a.T)
        elif not np.allclose(a, a.T, rtol=0.0, atol=COMPARE_TOL * max(1.0, np.abs(a).max())):
            raise ValueError("matrix is not symmetric")
        n = a.shape[0]
        return cls(n, a[np.triu_indices(n)])

    @classmethod
    def identity(cls, n: int, scale: float = 1.0) -> "SymMatrix":
        return cls.from_full(scale * np.eye(n))

    @classmethod
    def diagonal(cls, d) -> "SymMatrix":
        return cls.from_full(np.diag(np.asarray(d, dtype=float)))

    def full(self) -> np.ndarray:
        out = np.zeros((self.dim, self.dim))
        iu = np.triu_indices(self.dim)
        out[iu] = self.packed
        out = out + out.T
        out[np.diag_indices(self.dim)] *= 0.5
        return out


@dataclass
class LdltFactor:
    """Factorization A = L diag(pivots) L^T with unit lower-triangular L.

    Pivots are stored as computed and may be non-positive when the strict
    flag was off; ``solve`` refuses to use such a factor.
    """

    lower: np.ndarray
    pivots: np.ndarray

    @property
    def dim(self) -> int:
        return self.pivots.shape[0]

    @property
    def is_positive(self) -> bool:
        return bool(np.all(self.pivots > 0.0))

    def reconstruct(self) -> np.ndarray:
        return (self.lower * self.pivots) @ self.lower.T

    def det(self) -> float:
        return float(np.prod(self.pivots))

    def solve(self, b: np.ndarray) -> np.ndarray:
        """Solve A x = b using the stored factor."""
        if not self.is_positive:
            raise NotPositiveDefinite("factor has a non-positive pivot")
        b = np.asarray(b, dtype=float)
        squeeze = b.ndim == 1
        rhs = b.reshape(self.dim, -1)
        y = scipy.linalg.solve_triangular(self.lower, rhs, lower=True, unit_diagonal=True)
        y /= self.pivots[:, None]
        x = scipy.linalg.solve_triangular(self.lower.T, y, lower=False, unit_diagonal=True)
        return x[:, 0] if squeeze else x


def _as_sym_array(a) -> np.ndarray:
    if isinstance(a, SymMatrix):
        return a.full()
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    return a


def ldlt(a, require_spd: bool = False) -> LdltFactor:
    """Unpivoted L-Sigma-L^T factorization of a symmetric matrix.

    With ``require_spd`` a zero or negative pivot raises DegenerateFactor;
    otherwise pivots are returned as computed, sign included.  Columns are
    eliminated strictly in the given order.
    """
    m = _as_sym_array(a)
    n = m.shape[0]
    lower = np.eye(n)
    pivots = np.zeros(n)
    for j in range(n):
        d = m[j, j] - (lower[j, :j] ** 2) @ pivots[:j]
        if require_spd and d <= 0.0:
            raise DegenerateFactor(f"pivot {j} is {d:.6e}")
        pivots[j] = d
        if j + 1 < n:
            rest = m[j + 1:, j] - lower[j + 1:, :j] @ (lower[j, :j] * pivots[:j])
            if d != 0.0:
                lower[j + 1:, j] = rest / d
            # A zero pivot leaves the multipliers at zero; the factor is
            # then unusable for solves, which is what the caller checks.
    return LdltFactor(lower, pivots)


def solve_spd(a, b) -> np.ndarray:
    """Solve a x = b for symmetric positive definite a."""
    try:
        factor = ldlt(a, require_spd=True)
    except DegenerateFactor as exc:
        raise NotPositiveDefinite(str(exc)) from exc
    return factor.solve(b)


def det_spd(a) -> float:
    """Determinant of a symmetric positive definite matrix via its pivots."""
    try:
        factor = ldlt(a, require_spd=True)
    except DegenerateFactor as exc:
        raise NotPositiveDefinite(str(exc)) from exc
    return factor.det()


def sym_part(a: np.ndarray) -> np.ndarray:
    """Symmetrize a square array, controlling round-off drift."""
    return 0.5 * (a + a.T)
