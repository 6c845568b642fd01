"""Command-line interface for the benchmark harness.

Sub-commands:

* run: execute a solver grid over a suite manifest, writing cost
  matrices, profile curves (CSV + SVG), per-run traces, and a manifest
  echoing every input needed to reproduce the run.
* profile: recompute profile curves from a saved cost matrix.
* check: finite-difference derivative checks for every oracle in a suite.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from ..linesearch import LineSearchParams
from ..oracle import check_gradient, check_hess_action
from ..problems.synth import load_suite, write_suite_manifest
from ..solvers import Method, SolverConfig
from .grid import GridResult, Metric, run_grid
from .profiles import CostMatrix, performance_profile, write_profile_csv, write_profile_svg

GRAD_CHECK_TOL = 1e-5
GRAD_CHECK_TOL_BARRIER = 1e-4
HESS_CHECK_TOL = 1e-4


def solver_config_from_dict(spec: dict) -> tuple[str, SolverConfig]:
    """Build a named SolverConfig from a JSON-style mapping."""
    spec = dict(spec)
    name = spec.pop("name", None)
    method = Method(spec.pop("method"))
    ls_spec = spec.pop("ls", None)
    ls = LineSearchParams(**ls_spec) if ls_spec else LineSearchParams()
    cfg = SolverConfig(method=method, ls=ls, **spec)
    return (name or method.value, cfg)


def load_solver_configs(path) -> list[tuple[str, SolverConfig]]:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    specs = data["solvers"] if isinstance(data, dict) else data
    return [solver_config_from_dict(s) for s in specs]


def _eps_tag(eps: float) -> str:
    return f"{eps:g}"


def _cmd_run(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    suite = load_suite(args.suite)
    solver_cfgs = load_solver_configs(args.solvers)
    eps_list = [float(tok) for tok in args.eps.split(",") if tok]
    metric = Metric.STEPS if args.metric == "steps" else Metric.CPU_TIME

    result: GridResult = run_grid(suite, solver_cfgs, eps_list, metric, args.parallel)

    single = len(eps_list) == 1
    for eps, costs in result.costs_by_eps.items():
        tag = _eps_tag(eps)
        costs.write_csv(out / ("costs.csv" if single else f"costs_eps{tag}.csv"))
        curves = performance_profile(costs)
        write_profile_csv(curves, out / f"profile_eps{tag}.csv")
        write_profile_svg(curves, out / f"profile_eps{tag}.svg", title=f"eps = {tag}")

    traces_dir = out / "traces"
    traces_dir.mkdir(exist_ok=True)
    for (problem, solver), trace in result.traces.items():
        if trace is None:
            continue
        stem = f"{problem}__{solver}"
        trace.write_csv(traces_dir / f"{stem}.csv")
        trace.write_summary(traces_dir / f"{stem}.json")

    with open(args.solvers, "r", encoding="utf-8") as fh:
        solver_spec_echo = json.load(fh)
    with open(args.suite, "r", encoding="utf-8") as fh:
        suite_echo = json.load(fh)
    manifest = {
        "seed": args.seed,
        "metric": args.metric,
        "eps": eps_list,
        "parallel": args.parallel,
        "suite": suite_echo,
        "solvers": solver_spec_echo,
        "dropped_problems": result.dropped,
    }
    with open(out / "run_manifest.json", "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")
    if result.dropped:
        print(f"dropped (unsolved by every solver): {', '.join(result.dropped)}")
    print(f"wrote results for {len(eps_list)} accuracy level(s) to {out}")
    return 0


def _cmd_profile(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    costs = CostMatrix.read_csv(args.costs)
    curves = performance_profile(costs)
    write_profile_csv(curves, out / "profile.csv")
    write_profile_svg(curves, out / "profile.svg")
    print(f"wrote profile for {len(curves)} solver(s) to {out}")
    return 0


def _cmd_check(args) -> int:
    suite = load_suite(args.suite)
    rng = np.random.default_rng(0)
    failures = 0
    for name, oracle, x0 in suite:
        grad_tol = GRAD_CHECK_TOL_BARRIER if name.startswith("barrier") else GRAD_CHECK_TOL
        v = rng.normal(size=oracle.dim)
        v /= np.linalg.norm(v)
        grad_err = check_gradient(oracle, x0)
        hess_err = check_hess_action(oracle, x0, v)
        ok = grad_err <= grad_tol and hess_err <= HESS_CHECK_TOL
        failures += 0 if ok else 1
        print(f"{'PASS' if ok else 'FAIL'} {name}: grad={grad_err:.2e} hess={hess_err:.2e}")
    print(f"{len(suite) - failures}/{len(suite)} oracles passed")
    return 1 if failures else 0


def _cmd_make_suite(args) -> int:
    write_suite_manifest(args.seed, args.out)
    print(f"wrote suite manifest for seed {args.seed} to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="blockqn", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a solver grid and write profiles")
    p_run.add_argument("--suite", required=True, help="suite manifest JSON")
    p_run.add_argument("--solvers", required=True, help="solver configs JSON")
    p_run.add_argument("--metric", choices=["steps", "cpu"], default="steps")
    p_run.add_argument("--eps", default="0.2,0.1,0.01", help="comma-separated accuracies")
    p_run.add_argument("--seed", type=int, default=42)
    p_run.add_argument("--out", required=True)
    p_run.add_argument("--parallel", type=int, default=1)
    p_run.set_defaults(func=_cmd_run)

    p_prof = sub.add_parser("profile", help="recompute curves from a cost matrix")
    p_prof.add_argument("--costs", required=True)
    p_prof.add_argument("--out", required=True)
    p_prof.set_defaults(func=_cmd_profile)

    p_check = sub.add_parser("check", help="derivative checks for a suite")
    p_check.add_argument("--suite", required=True)
    p_check.set_defaults(func=_cmd_check)

    p_make = sub.add_parser("make-suite", help="write a suite manifest for a seed")
    p_make.add_argument("--seed", type=int, default=42)
    p_make.add_argument("--out", required=True)
    p_make.set_defaults(func=_cmd_make_suite)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
