"""Inexact line search enforcing sufficient decrease and curvature.

The search always tries the unit step first and returns it whenever it is
admissible.  Otherwise it brackets by doubling and zooms with cubic
interpolation, falling back to bisection when the interpolant is unusable
or its minimizer lands outside the central 10-90% of the bracket.

A non-finite trial value is treated as a sufficient-decrease failure and
shrinks the bracket; this is how objectives that are infinite outside
their domain (log barriers) are handled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple, Optional

import numpy as np

from .oracle import ObjectiveOracle


class NotDescent(Exception):
    """The supplied direction is not a descent direction."""


class LineSearchStatus(Enum):
    CONVERGED = "converged"
    MAX_EVALS = "max_evals"
    FAILED = "failed"


@dataclass
class LineSearchParams:
    alpha: float = 0.1
    beta: float = 0.75
    max_evals: int = 50
    lambda_min: float = 1e-14
    lambda_max: float = 1e8

    def __post_init__(self):
        if not 0.0 < self.alpha < 0.5:
            raise ValueError("alpha must lie in (0, 1/2)")
        if not self.alpha < self.beta < 1.0:
            raise ValueError("beta must lie in (alpha, 1)")
        if self.max_evals < 1:
            raise ValueError("max_evals must be at least 1")
        if not 0.0 < self.lambda_min < self.lambda_max:
            raise ValueError("need 0 < lambda_min < lambda_max")


@dataclass
class LineSearchResult:
    lam: float
    f_new: float
    g_new: Optional[np.ndarray]
    n_evals: int
    status: LineSearchStatus


class _Point(NamedTuple):
    t: float
    f: float
    g: Optional[np.ndarray]
    fp: Optional[float]  # directional derivative; None when f is non-finite


def _cubic_candidate(lo: _Point, hi: _Point) -> Optional[float]:
    """Minimizer of the cubic Hermite interpolant on [lo.t, hi.t]."""
    if hi.fp is None or not math.isfinite(hi.f):
        return None
    d1 = lo.fp + hi.fp - 3.0 * (lo.f - hi.f) / (lo.t - hi.t)
    disc = d1 * d1 - lo.fp * hi.fp
    if disc < 0.0:
        return None
    d2 = math.sqrt(disc)
    denom = hi.fp - lo.fp + 2.0 * d2
    if denom == 0.0:
        return None
    t = hi.t - (hi.t - lo.t) * (hi.fp + d2 - d1) / denom
    return t if math.isfinite(t) else None


def wolfe_search(
    oracle: ObjectiveOracle,
    x: np.ndarray,
    d: np.ndarray,
    f0: float,
    g0: np.ndarray,
    params: LineSearchParams,
) -> LineSearchResult:
    """Find a step satisfying both the decrease and curvature conditions.

    f0 and g0 must be the value and gradient at x.  The gradient at a trial
    point is only evaluated when the value there is finite.
    """
    x = np.asarray(x, dtype=float)
    d = np.asarray(d, dtype=float)
    gd0 = float(g0 @ d)
    if gd0 >= 0.0:
        raise NotDescent(f"directional derivative {gd0:.3e} is not negative")

    evals = 0

    def trial(t: float) -> _Point:
        nonlocal evals
        evals += 1
        f = oracle.f(x + t * d)
        if math.isfinite(f):
            g = oracle.grad(x + t * d)
            return _Point(t, f, g, float(g @ d))
        return _Point(t, f, None, None)

    def armijo_ok(p: _Point) -> bool:
        return math.isfinite(p.f) and p.f <= f0 + params.alpha * p.t * gd0

    def wolfe_ok(p: _Point) -> bool:
        return p.fp is not None and p.fp >= params.beta * gd0

    def result(p: _Point, status: LineSearchStatus) -> LineSearchResult:
        return LineSearchResult(p.t, p.f, p.g, evals, status)

    lo = _Point(0.0, f0, np.asarray(g0, dtype=float), gd0)
    hi: Optional[_Point] = None

    # Bracketing: the unit step is examined first, then doubled while it
    # keeps satisfying the decrease condition with a too-negative slope.
    t = 1.0
    while evals < params.max_evals:
        cur = trial(t)
        if not armijo_ok(cur):
            hi = cur
            break
        if wolfe_ok(cur):
            return result(cur, LineSearchStatus.CONVERGED)
        lo = cur
        t *= 2.0
        if t > params.lambda_max:
            return result(lo, LineSearchStatus.FAILED)
    if hi is None:
        return result(lo, LineSearchStatus.MAX_EVALS)

    # Zoom: lo satisfies the decrease condition with slope below the
    # curvature threshold, hi fails the decrease condition (or is not
    # finite), so an admissible step lies strictly between them.
    while evals < params.max_evals:
        width = hi.t - lo.t
        if width < params.lambda_min:
            return result(lo, LineSearchStatus.FAILED)
        cand = _cubic_candidate(lo, hi)
        if cand is None or not lo.t + 0.1 * width <= cand <= lo.t + 0.9 * width:
            cand = lo.t + 0.5 * width
        cur = trial(cand)
        if not armijo_ok(cur):
            hi = cur
        elif wolfe_ok(cur):
            return result(cur, LineSearchStatus.CONVERGED)
        else:
            lo = cur
    return result(lo, LineSearchStatus.MAX_EVALS)
