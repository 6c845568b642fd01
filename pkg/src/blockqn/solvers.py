"""Iteration drivers.

All methods share the same line search and termination logic and differ
only in how the inverse curvature approximation is maintained:

* block: q steps with a fixed approximation, then one update from the
  Hessian's action on the filtered step block;
* rolling block: one update per step from a sliding window of recent
  steps, with the Hessian action recomputed at the current point;
* secant family: classical rank-two updates, optionally gated (cautious),
  modified, or damped; gradient descent skips the approximation entirely.

A failed or exhausted line search ends the run and is recorded in the
trace rather than raised.
"""

from __future__ import annotations

import csv
import json
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from . import updates
from .linesearch import LineSearchParams, LineSearchResult, LineSearchStatus, NotDescent, wolfe_search
from .oracle import EvalCounters, NonFiniteValue, ObjectiveOracle
from .updates import FilterResult, InverseApprox, StepBlock, filter_steps


class Method(Enum):
    BLOCK_BFGS = "block_bfgs"
    ROLLING_BLOCK_BFGS = "rolling_block_bfgs"
    BFGS = "bfgs"
    DAMPED_BFGS = "damped_bfgs"
    CAUTIOUS_BFGS = "cautious_bfgs"
    MODIFIED_BFGS = "modified_bfgs"
    GRADIENT_DESCENT = "gradient_descent"


class Termination(Enum):
    GRAD_TOL = "grad_tol"
    F_STOP = "f_stop"
    MAX_STEPS = "max_steps"
    LINE_SEARCH_FAIL = "line_search_fail"


def default_block_size(n: int) -> int:
    """Default number of steps per block, the cube root of the dimension."""
    return max(1, int(np.floor(n ** (1.0 / 3.0))))


def default_rolling_window(n: int) -> int:
    return min(3, default_block_size(n))


@dataclass
class SolverConfig:
    method: Method = Method.BLOCK_BFGS
    q: Optional[int] = None  # block size / window; None picks the default
    tau: float = 1e-3
    always_keep_first: bool = False
    ls: LineSearchParams = field(default_factory=LineSearchParams)
    grad_tol: float = 1e-8
    f_stop: Optional[float] = None
    max_steps: int = 5000
    h0_scale: float = 1.0
    rolling_filter: bool = False  # rolling window is unfiltered by default
    keep_iterates: bool = False
    damp_phi: float = 0.2
    cautious_eps: float = 1e-6
    cautious_exponent: float = 1.0
    modify_eps: float = 1e-6

    def __post_init__(self):
        if self.q is not None and self.q < 1:
            raise ValueError("q must be at least 1")
        if self.tau <= 0.0:
            raise ValueError("tau must be positive")
        if self.max_steps < 1:
            raise ValueError("max_steps must be at least 1")
        if self.h0_scale <= 0.0:
            raise ValueError("h0_scale must be positive")


@dataclass
class StepRecord:
    step: int  # 1-based overall step index
    k: int  # block index
    i: int  # index within the block
    f: float
    gnorm: float
    lam: float
    snorm: float
    costheta: float
    updated: bool
    qk: int


@dataclass
class RunTrace:
    records: list[StepRecord]
    counters: EvalCounters
    wall_time: float
    termination: Termination
    f_initial: float
    gnorm_initial: float
    iterates: Optional[list[np.ndarray]] = None
    cum_times: list[float] = field(default_factory=list)

    @property
    def n_steps(self) -> int:
        return len(self.records)

    @property
    def final_f(self) -> float:
        return self.records[-1].f if self.records else self.f_initial

    @property
    def final_gnorm(self) -> float:
        return self.records[-1].gnorm if self.records else self.gnorm_initial

    def best_f(self) -> float:
        if not self.records:
            return self.f_initial
        return min(self.f_initial, min(r.f for r in self.records))

    def steps_to_threshold(self, thr: float) -> Optional[int]:
        """First step index at which f drops to the threshold; 0 when the
        start already qualifies, None when the run never gets there."""
        if self.f_initial <= thr:
            return 0
        for rec in self.records:
            if rec.f <= thr:
                return rec.step
        return None

    def time_to_threshold(self, thr: float) -> Optional[float]:
        if self.f_initial <= thr:
            return 0.0
        for rec, t in zip(self.records, self.cum_times):
            if rec.f <= thr:
                return t
        return None

    def write_csv(self, path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(
                ["step", "k", "i", "f", "gnorm", "lambda", "snorm", "costheta", "updated", "qk"]
            )
            for r in self.records:
                writer.writerow(
                    [r.step, r.k, r.i, repr(r.f), repr(r.gnorm), repr(r.lam),
                     repr(r.snorm), repr(r.costheta), int(r.updated), r.qk]
                )

    def summary(self) -> dict:
        return {
            "termination": self.termination.value,
            "counters": self.counters.as_dict(),
            "wall_time": self.wall_time,
            "n_steps": self.n_steps,
            "f_initial": self.f_initial,
            "f_final": self.final_f,
            "gnorm_final": self.final_gnorm,
        }

    def write_summary(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.summary(), fh, indent=2)
            fh.write("\n")


class _Run:
    """Shared per-run state: termination tests, stepping, trace assembly."""

    def __init__(self, oracle: ObjectiveOracle, x0: np.ndarray, cfg: SolverConfig):
        self.oracle = oracle
        self.cfg = cfg
        self.x = np.array(x0, dtype=float)
        if self.x.ndim != 1 or self.x.size != oracle.dim:
            raise ValueError("starting point has wrong dimension")
        if not np.all(np.isfinite(self.x)):
            raise NonFiniteValue("starting point is not finite")
        self.counters0 = oracle.counters.copy()
        self.t0 = time.perf_counter()
        self.f = oracle.f(self.x)
        if not np.isfinite(self.f):
            raise NonFiniteValue("objective is not finite at the starting point")
        self.g = oracle.grad(self.x)
        self.f_initial = self.f
        self.gnorm_initial = float(np.linalg.norm(self.g))
        self.records: list[StepRecord] = []
        self.cum_times: list[float] = []
        self.iterates = [self.x.copy()] if cfg.keep_iterates else None
        self.termination: Optional[Termination] = None

    def check_termination(self) -> bool:
        gnorm = float(np.linalg.norm(self.g))
        if not np.isfinite(gnorm):
            self.termination = Termination.LINE_SEARCH_FAIL
        elif gnorm <= self.cfg.grad_tol:
            self.termination = Termination.GRAD_TOL
        elif self.cfg.f_stop is not None and self.f <= self.cfg.f_stop:
            self.termination = Termination.F_STOP
        elif len(self.records) >= self.cfg.max_steps:
            self.termination = Termination.MAX_STEPS
        return self.termination is not None

    def take_step(self, d: np.ndarray, k: int, i: int) -> Optional[LineSearchResult]:
        """Line-search along d and advance; None means the run is over."""
        try:
            res = wolfe_search(self.oracle, self.x, d, self.f, self.g, self.cfg.ls)
        except NotDescent:
            self.termination = Termination.LINE_SEARCH_FAIL
            return None
        if res.status is not LineSearchStatus.CONVERGED or res.g_new is None:
            self.termination = Termination.LINE_SEARCH_FAIL
            return None
        s = res.lam * d
        gnorm_old = float(np.linalg.norm(self.g))
        snorm = float(np.linalg.norm(s))
        cos_theta = 0.0
        if gnorm_old > 0.0 and snorm > 0.0:
            cos_theta = float(np.clip((-self.g @ s) / (gnorm_old * snorm), 0.0, 1.0))
        self.x = self.x + s
        self.f = res.f_new
        self.g = res.g_new
        self.records.append(
            StepRecord(
                step=len(self.records) + 1,
                k=k,
                i=i,
                f=self.f,
                gnorm=float(np.linalg.norm(self.g)),
                lam=res.lam,
                snorm=snorm,
                costheta=cos_theta,
                updated=False,
                qk=0,
            )
        )
        self.cum_times.append(time.perf_counter() - self.t0)
        if self.iterates is not None:
            self.iterates.append(self.x.copy())
        return res

    def finish(self) -> RunTrace:
        assert self.termination is not None
        return RunTrace(
            records=self.records,
            counters=self.oracle.counters.delta_since(self.counters0),
            wall_time=time.perf_counter() - self.t0,
            termination=self.termination,
            f_initial=self.f_initial,
            gnorm_initial=self.gnorm_initial,
            iterates=self.iterates,
            cum_times=self.cum_times,
        )


def solve_block_bfgs(oracle: ObjectiveOracle, x0, cfg: SolverConfig) -> RunTrace:
    """Blocks of q steps with a fixed approximation, then one update from
    the Hessian's action on the filtered block.

    Termination firing mid-block skips the pending update: the Hessian
    action is never evaluated for a block whose update cannot be used.
    """
    run = _Run(oracle, x0, cfg)
    q = cfg.q if cfg.q is not None else default_block_size(oracle.dim)
    approx = InverseApprox.identity(oracle.dim, cfg.h0_scale)
    h_full = approx.full()
    k = 1
    s_cols: list[np.ndarray] = []
    g_cols: list[np.ndarray] = []
    while not run.check_termination():
        d = -(h_full @ run.g)
        res = run.take_step(d, k, len(s_cols) + 1)
        if res is None:
            break
        s_cols.append(res.lam * d)
        g_cols.append(run.g.copy())
        if len(s_cols) == q:
            gs = oracle.hess_action(run.x, np.column_stack(s_cols))
            block = StepBlock(np.column_stack(s_cols), np.column_stack(g_cols), gs, k)
            filt = filter_steps(block, cfg.tau, cfg.always_keep_first)
            if not filt.empty:
                approx = updates.block_update_inverse(approx, filt)
                h_full = approx.full()
            run.records[-1].updated = not filt.empty
            run.records[-1].qk = filt.n_kept
            s_cols, g_cols = [], []
            k += 1
    return run.finish()


def solve_rolling_block_bfgs(oracle: ObjectiveOracle, x0, cfg: SolverConfig) -> RunTrace:
    """One block update per step from a window of the most recent steps.

    The newest step becomes the window's first column; the Hessian action
    of the whole window is recomputed at the current point every step, so
    the approximation always matches the current Hessian on the window.
    The window is used unfiltered unless the config enables filtering; a
    singular window simply skips that update.
    """
    run = _Run(oracle, x0, cfg)
    q = cfg.q if cfg.q is not None else default_rolling_window(oracle.dim)
    approx = InverseApprox.identity(oracle.dim, cfg.h0_scale)
    step_window: list[np.ndarray] = []
    grad_window: list[np.ndarray] = []
    step = 0
    while not run.check_termination():
        step += 1
        d = -(approx.full() @ run.g)
        res = run.take_step(d, step, 1)
        if res is None:
            break
        step_window.insert(0, res.lam * d)
        grad_window.insert(0, run.g.copy())
        del step_window[q:], grad_window[q:]
        s_cols = np.column_stack(step_window)
        gs = oracle.hess_action(run.x, s_cols)
        if cfg.rolling_filter:
            block = StepBlock(s_cols, np.column_stack(grad_window), gs, step)
            filt = filter_steps(block, cfg.tau, cfg.always_keep_first)
        else:
            filt = FilterResult.from_directions(s_cols, gs)
        if not filt.empty:
            try:
                approx = updates.block_update_inverse(approx, filt)
            except updates.SingularBlock:
                continue
            run.records[-1].updated = True
            run.records[-1].qk = filt.n_kept
    return run.finish()


def _secant_family(oracle: ObjectiveOracle, x0, cfg: SolverConfig, method: Method) -> RunTrace:
    run = _Run(oracle, x0, cfg)
    use_h = method is not Method.GRADIENT_DESCENT
    approx = InverseApprox.identity(oracle.dim, cfg.h0_scale) if use_h else None
    step = 0
    while not run.check_termination():
        step += 1
        g_old = run.g
        d = -(approx.full() @ g_old) if use_h else -g_old
        res = run.take_step(d, step, 1)
        if res is None:
            break
        if not use_h:
            continue
        s = res.lam * d
        y = run.g - g_old
        updated = False
        try:
            if method is Method.BFGS:
                ys = float(y @ s)
                if ys > 1e-12 * np.linalg.norm(y) * np.linalg.norm(s):
                    approx = updates.secant_update(approx, s, y)
                    updated = True
            elif method is Method.DAMPED_BFGS:
                # B s = -lambda * g_old exactly, since s = -lambda H g_old
                b_action_s = -res.lam * g_old
                z = updates.powell_damp(s, y, b_action_s, cfg.damp_phi)
                approx = updates.secant_update(approx, s, z)
                updated = True
            elif method is Method.CAUTIOUS_BFGS:
                if updates.cautious_gate(s, y, g_old, cfg.cautious_eps, cfg.cautious_exponent):
                    approx = updates.secant_update(approx, s, y)
                    updated = True
            elif method is Method.MODIFIED_BFGS:
                z = updates.li_fukushima_modify(s, y, cfg.modify_eps)
                approx = updates.secant_update(approx, s, z)
                updated = True
        except updates.CurvatureViolation:
            updated = False
        run.records[-1].updated = updated
        run.records[-1].qk = 1 if updated else 0
    return run.finish()


def solve_bfgs(oracle: ObjectiveOracle, x0, cfg: SolverConfig) -> RunTrace:
    """Classical rank-two method; skips updates with negligible curvature."""
    return _secant_family(oracle, x0, cfg, Method.BFGS)


def solve_variant(oracle: ObjectiveOracle, x0, cfg: SolverConfig) -> RunTrace:
    """Damped, cautious, or modified secant method, or gradient descent."""
    if cfg.method not in (
        Method.DAMPED_BFGS, Method.CAUTIOUS_BFGS, Method.MODIFIED_BFGS, Method.GRADIENT_DESCENT
    ):
        raise ValueError(f"not a variant method: {cfg.method}")
    return _secant_family(oracle, x0, cfg, cfg.method)


def solve(oracle: ObjectiveOracle, x0, cfg: SolverConfig) -> RunTrace:
    """Run the method selected by the config."""
    if cfg.method is Method.BLOCK_BFGS:
        return solve_block_bfgs(oracle, x0, cfg)
    if cfg.method is Method.ROLLING_BLOCK_BFGS:
        return solve_rolling_block_bfgs(oracle, x0, cfg)
    if cfg.method is Method.BFGS:
        return solve_bfgs(oracle, x0, cfg)
    return solve_variant(oracle, x0, cfg)
