"""Solver-by-problem experiment grids."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from ..problems.synth import SuiteEntry
from ..solvers import RunTrace, SolverConfig, solve
from .fstop import success_threshold
from .profiles import CostMatrix


class Metric(Enum):
    STEPS = "steps"
    CPU_TIME = "cpu"


@dataclass
class GridResult:
    costs_by_eps: dict[float, CostMatrix]
    traces: dict[tuple[str, str], Optional[RunTrace]]  # (problem, solver) -> trace
    dropped: list[str] = field(default_factory=list)


def _run_one(entry: SuiteEntry, cfg: SolverConfig, timed: bool) -> Optional[RunTrace]:
    name, oracle, x0 = entry
    try:
        if timed:
            solve(oracle.fresh(), x0, cfg)  # warm-up excluded from timing
        return solve(oracle.fresh(), x0, cfg)
    except Exception:
        return None


def run_grid(
    suite: list[SuiteEntry],
    solver_cfgs: list[tuple[str, SolverConfig]],
    epsilon_list: list[float],
    metric: Metric = Metric.STEPS,
    parallelism: int = 1,
) -> GridResult:
    """Run every solver on every problem and tabulate threshold-crossing
    costs for each relative accuracy.

    The per-problem target is the best objective any solver reached; a
    solver's cost at accuracy eps is the first step (or elapsed seconds)
    at which its trace crosses the eps-relative threshold above that
    target.  Failed runs count as unsolved and never abort the grid.
    Timing measurements force serial execution and exclude a warm-up run.
    """
    if not suite or not solver_cfgs or not epsilon_list:
        raise ValueError("suite, solvers, and epsilon list must be non-empty")
    timed = metric is Metric.CPU_TIME
    if timed:
        parallelism = 1

    pairs = [(p_idx, s_idx) for p_idx in range(len(suite)) for s_idx in range(len(solver_cfgs))]

    def work(pair):
        p_idx, s_idx = pair
        return _run_one(suite[p_idx], solver_cfgs[s_idx][1], timed)

    if parallelism > 1:
        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            outcomes = list(pool.map(work, pairs))
    else:
        outcomes = [work(pair) for pair in pairs]

    traces: dict[tuple[str, str], Optional[RunTrace]] = {}
    for (p_idx, s_idx), trace in zip(pairs, outcomes):
        traces[(suite[p_idx][0], solver_cfgs[s_idx][0])] = trace

    problem_names = [name for name, _, _ in suite]
    solver_names = [name for name, _ in solver_cfgs]

    costs_by_eps: dict[float, CostMatrix] = {}
    dropped: list[str] = []
    for eps in epsilon_list:
        t = np.full((len(suite), len(solver_cfgs)), np.inf)
        for p_idx, pname in enumerate(problem_names):
            run_traces = [traces[(pname, s)] for s in solver_names]
            finite = [tr.best_f() for tr in run_traces if tr is not None]
            if not finite:
                continue
            thr = success_threshold(min(finite), eps)
            for s_idx, tr in enumerate(run_traces):
                if tr is None:
                    continue
                if metric is Metric.STEPS:
                    cost = tr.steps_to_threshold(thr)
                else:
                    cost = tr.time_to_threshold(thr)
                if cost is not None:
                    t[p_idx, s_idx] = float(cost)
        matrix = CostMatrix(list(solver_names), list(problem_names), t).drop_unsolved()
        costs_by_eps[eps] = matrix
        dropped = sorted(set(dropped) | set(matrix.dropped))
    return GridResult(costs_by_eps, traces, dropped)
