"""Deterministic synthetic problem suites.

Everything is generated from a single seed so two calls with the same
seed produce bitwise-identical problem data.  The suite stands in, at
desk scale, for externally hosted datasets: random quadratics over a
spread of condition numbers, separable and non-separable classification
data for both losses, and barrier problems built from random feasible
standard-form QPs.
"""

from __future__ import annotations

import json

import numpy as np

from ..oracle import ObjectiveOracle
from .barrier import DEFAULT_BARRIER_WEIGHT, QpStandardForm, barrier_oracle, reduce_qp_to_barrier
from .datasets import SparseDataset
from .losses import logistic_oracle, tanh_oracle

SuiteEntry = tuple[str, ObjectiveOracle, np.ndarray]

_QUAD_CONDS = (10.0, 1e3, 1e5)
_QUAD_SIZES = (20, 40, 70, 100)


def random_spd(rng: np.random.Generator, n: int, cond: float) -> np.ndarray:
    """Random SPD matrix with log-spaced eigenvalues in [1, cond]."""
    q, _ = np.linalg.qr(rng.normal(size=(n, n)))
    eigs = np.logspace(0.0, np.log10(cond), n)
    return (q * eigs) @ q.T


def quadratic_oracle(
    a: np.ndarray, center: np.ndarray, f_min: float = 0.0, name: str = "quadratic"
) -> ObjectiveOracle:
    """f(x) = 1/2 (x - center)^T A (x - center) + f_min with exact Hessian A.

    The centered evaluation keeps f free of cancellation near the
    minimizer, so tiny decreases remain certifiable by the line search.
    """
    a = np.asarray(a, dtype=float)
    center = np.asarray(center, dtype=float)
    n = center.size

    def eval_f(x):
        e = x - center
        return float(0.5 * (e @ (a @ e)) + f_min)

    def eval_grad(x):
        return a @ (x - center)

    def eval_hess_action(x, v):
        return a @ v

    return ObjectiveOracle(n, eval_f, eval_grad, eval_hess_action, lambda x: a, name=name)


def _classification_data(
    rng: np.random.Generator, m: int, n: int, separable: bool
) -> SparseDataset:
    x = rng.normal(size=(m, n))
    w_true = rng.normal(size=n)
    scores = x @ w_true
    if separable:
        # push every point away from the decision boundary
        x += 0.5 * np.sign(scores)[:, None] * (w_true / np.linalg.norm(w_true))
        scores = x @ w_true
        labels = (scores > 0.0).astype(np.int64)
    else:
        noise = rng.normal(scale=np.std(scores), size=m)
        labels = (scores + noise > 0.0).astype(np.int64)
    return SparseDataset.from_dense(labels, x)


def _random_quadratic_regularizer(rng: np.random.Generator, n: int) -> np.ndarray:
    r = rng.normal(size=(n, n))
    return np.eye(n) + (r.T @ r) / n


def synth_suite(seed: int) -> list[SuiteEntry]:
    """Deterministic suite of (name, oracle, start) triples.

    Contains 12 quadratics, 10 log-loss problems (half with a random
    quadratic regularizer), 5 tanh-loss problems, and 5 barrier QPs.
    Names are prefixed with their type: quad_, logreg_, tanh_, barrier_.
    """
    rng = np.random.default_rng(seed)
    suite: list[SuiteEntry] = []

    idx = 0
    for n in _QUAD_SIZES:
        for cond in _QUAD_CONDS:
            a = random_spd(rng, n, cond)
            x_star = rng.normal(size=n)
            name = f"quad_{idx:02d}_n{n}_c{cond:.0e}"
            suite.append(
                (name, quadratic_oracle(a, x_star, name=name), x_star + rng.normal(size=n))
            )
            idx += 1

    for i in range(10):
        m = int(rng.integers(80, 200))
        n = int(rng.integers(15, 40))
        data = _classification_data(rng, m, n, separable=(i % 2 == 0))
        reg = np.eye(n) if i < 5 else _random_quadratic_regularizer(rng, n)
        tag = "ridge" if i < 5 else "randreg"
        name = f"logreg_{i:02d}_m{m}_n{n}_{tag}"
        oracle = logistic_oracle(data, reg)
        oracle.name = name
        suite.append((name, oracle, np.zeros(n)))

    for i in range(5):
        m = int(rng.integers(60, 150))
        n = int(rng.integers(10, 30))
        data = _classification_data(rng, m, n, separable=False)
        name = f"tanh_{i:02d}_m{m}_n{n}"
        oracle = tanh_oracle(data)
        oracle.name = name
        suite.append((name, oracle, rng.uniform(-0.5, 0.5, size=n)))

    for i in range(5):
        n = int(rng.integers(10, 20))
        p = n - int(rng.integers(3, 6))
        a = rng.normal(size=(p, n))
        x_feas = np.ones(n)
        b = a @ x_feas
        r = rng.normal(size=(n, n))
        q_mat = 300.0 * (r.T @ r) / n
        # The interior point is exactly 1 and the linear term cancels the
        # barrier's pull there up to a random O(1) residual, so the
        # minimizer stays near the interior point and the objective stays
        # small in magnitude.  That keeps line-search decreases
        # certifiable in double precision down to tight gradient
        # tolerances, which the weight-1000 barrier would otherwise
        # prevent; the quadratic term at a fraction of the barrier weight
        # gives enough curvature spread that solvers take several steps,
        # not one, to reach the endgame.
        u, sv, vt = np.linalg.svd(a)
        nullbasis = vt[p:].T
        delta = rng.normal(size=n - p)
        c = -q_mat @ x_feas + DEFAULT_BARRIER_WEIGHT * np.ones(n) + nullbasis @ delta
        qp = QpStandardForm(q_mat, c, a, b)
        bp = reduce_qp_to_barrier(qp, DEFAULT_BARRIER_WEIGHT, x0=x_feas)
        name = f"barrier_{i:02d}_n{bp.dim}"
        oracle = barrier_oracle(bp)
        oracle.name = name
        suite.append((name, oracle, np.zeros(bp.dim)))

    return suite


def suite_manifest(seed: int) -> dict:
    """Manifest describing the suite a seed generates."""
    problems = [
        {"name": name, "type": name.split("_", 1)[0], "dim": oracle.dim}
        for name, oracle, _ in synth_suite(seed)
    ]
    return {"seed": int(seed), "problems": problems}


def write_suite_manifest(seed: int, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(suite_manifest(seed), fh, indent=2)
        fh.write("\n")


def load_suite(path) -> list[SuiteEntry]:
    """Regenerate the suite a manifest describes, restricted to its names."""
    with open(path, "r", encoding="utf-8") as fh:
        manifest = json.load(fh)
    wanted = [p["name"] for p in manifest["problems"]]
    entries = {name: (name, oracle, x0) for name, oracle, x0 in synth_suite(manifest["seed"])}
    missing = [name for name in wanted if name not in entries]
    if missing:
        raise ValueError(f"manifest lists unknown problems: {missing}")
    return [entries[name] for name in wanted]
