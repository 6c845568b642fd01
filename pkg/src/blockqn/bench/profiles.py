"""Relative-cost profile curves over a solver-by-problem cost matrix.

For each problem the best (smallest) finite cost sets the baseline; a
solver's curve value at ratio r is the fraction of problems it solved
within a factor r of that baseline.  Unsolved entries are non-finite and
never satisfy the ratio test.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np


class EmptyInput(Exception):
    """No usable problems or solvers were supplied."""


@dataclass
class CostMatrix:
    solvers: list[str]
    problems: list[str]
    t: np.ndarray  # shape (n_problems, n_solvers); np.inf marks unsolved
    dropped: list[str] = field(default_factory=list)

    def __post_init__(self):
        self.t = np.asarray(self.t, dtype=float)
        if self.t.shape != (len(self.problems), len(self.solvers)):
            raise ValueError("cost table shape does not match labels")

    def drop_unsolved(self) -> "CostMatrix":
        """Remove problems no solver solved, recording their names."""
        solved = np.isfinite(self.t).any(axis=1)
        dropped = self.dropped + [p for p, ok in zip(self.problems, solved) if not ok]
        keep = [p for p, ok in zip(self.problems, solved) if ok]
        return CostMatrix(list(self.solvers), keep, self.t[solved], dropped)

    def write_csv(self, path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["problem"] + list(self.solvers))
            for name, row in zip(self.problems, self.t):
                writer.writerow([name] + ["inf" if not np.isfinite(v) else repr(v) for v in row])

    @classmethod
    def read_csv(cls, path) -> "CostMatrix":
        with open(path, "r", newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
        if not rows or len(rows[0]) < 2:
            raise EmptyInput(f"no cost data in {path}")
        solvers = rows[0][1:]
        problems = [r[0] for r in rows[1:]]
        t = np.array([[float(v) for v in r[1:]] for r in rows[1:]])
        return cls(solvers, problems, t)


@dataclass
class ProfileCurve:
    solver: str
    breakpoints: np.ndarray  # sorted ratios >= 1
    values: np.ndarray  # fraction of problems solved within each ratio

    def value_at(self, r: float) -> float:
        """Step-function evaluation; 0 below the first breakpoint."""
        idx = np.searchsorted(self.breakpoints, r, side="right") - 1
        return float(self.values[idx]) if idx >= 0 else 0.0

    @property
    def solved_fraction(self) -> float:
        return float(self.values[-1]) if self.values.size else 0.0


def performance_profile(costs: CostMatrix) -> list[ProfileCurve]:
    """Curves of the fraction of problems solved within a cost ratio."""
    if costs.t.size == 0:
        raise EmptyInput("cost matrix is empty")
    work = costs.drop_unsolved()
    n_problems = len(work.problems)
    if n_problems == 0:
        raise EmptyInput("every problem was unsolved")
    best = np.min(np.where(np.isfinite(work.t), work.t, np.inf), axis=1)

    curves = []
    for s, name in enumerate(work.solvers):
        col = work.t[:, s]
        with np.errstate(invalid="ignore", divide="ignore"):
            ratios = np.where(best > 0.0, col / best, np.where(col == 0.0, 1.0, np.inf))
        ratios = np.where(np.isfinite(col), ratios, np.inf)
        finite = np.sort(ratios[np.isfinite(ratios)])
        breakpoints = np.unique(np.concatenate([[1.0], finite]))
        values = np.array([np.mean(ratios <= r) for r in breakpoints])
        curves.append(ProfileCurve(name, breakpoints, values))
    return curves


def write_profile_csv(curves: list[ProfileCurve], path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["solver", "r", "rho"])
        for curve in curves:
            for r, rho in zip(curve.breakpoints, curve.values):
                writer.writerow([curve.solver, repr(float(r)), repr(float(rho))])


def write_profile_svg(curves: list[ProfileCurve], path, title: str = "") -> None:
    """Render the curves as step functions into an SVG file."""
    import matplotlib

    matplotlib.use("Agg", force=False)
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    rmax = 1.0
    for curve in curves:
        if curve.breakpoints.size:
            rmax = max(rmax, float(curve.breakpoints[-1]))
    for curve in curves:
        bp = np.concatenate([curve.breakpoints, [rmax * 1.05]])
        vals = np.concatenate([curve.values, curve.values[-1:]])
        ax.step(bp, vals, where="post", label=curve.solver)
    ax.set_xlabel("cost ratio r")
    ax.set_ylabel("fraction of problems solved")
    ax.set_xlim(1.0, rmax * 1.05 if rmax > 1.0 else 2.0)
    ax.set_ylim(0.0, 1.05)
    if title:
        ax.set_title(title)
    ax.legend(loc="lower right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)
