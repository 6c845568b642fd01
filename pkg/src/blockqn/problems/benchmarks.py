"""Scalable unconstrained test functions.

Each entry carries its formula in the docstring of its value function and
provides an analytic gradient and dense Hessian.  Correctness is gated by
the finite-difference checks in the test suite rather than by reference
values, so a new function only needs its three callables and a canonical
starting point.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..oracle import ObjectiveOracle


class UnknownFunction(Exception):
    """Requested benchmark name is not in the registry."""


class BadDimension(Exception):
    """Requested dimension violates the function's constraints."""


# --- rosenbrock ---------------------------------------------------------

def _rosenbrock_f(x):
    """sum 100 (x_{i+1} - x_i^2)^2 + (1 - x_i)^2"""
    r = x[1:] - x[:-1] ** 2
    return float(100.0 * np.sum(r * r) + np.sum((1.0 - x[:-1]) ** 2))


def _rosenbrock_g(x):
    r = x[1:] - x[:-1] ** 2
    g = np.zeros_like(x)
    g[:-1] = -400.0 * x[:-1] * r - 2.0 * (1.0 - x[:-1])
    g[1:] += 200.0 * r
    return g


def _rosenbrock_h(x):
    n = x.size
    h = np.zeros((n, n))
    idx = np.arange(n - 1)
    h[idx, idx] += 1200.0 * x[:-1] ** 2 - 400.0 * x[1:] + 2.0
    h[idx + 1, idx + 1] += 200.0
    h[idx, idx + 1] = -400.0 * x[:-1]
    h[idx + 1, idx] = h[idx, idx + 1]
    return h


# --- arwhead ------------------------------------------------------------

def _arwhead_f(x):
    """sum_{i<n-1} (x_i^2 + x_{n-1}^2)^2 - 4 x_i + 3"""
    u = x[:-1] ** 2 + x[-1] ** 2
    return float(np.sum(u * u - 4.0 * x[:-1] + 3.0))


def _arwhead_g(x):
    u = x[:-1] ** 2 + x[-1] ** 2
    g = np.zeros_like(x)
    g[:-1] = 4.0 * u * x[:-1] - 4.0
    g[-1] = 4.0 * x[-1] * np.sum(u)
    return g


def _arwhead_h(x):
    n = x.size
    u = x[:-1] ** 2 + x[-1] ** 2
    h = np.zeros((n, n))
    idx = np.arange(n - 1)
    h[idx, idx] = 4.0 * u + 8.0 * x[:-1] ** 2
    h[idx, -1] = 8.0 * x[:-1] * x[-1]
    h[-1, idx] = h[idx, -1]
    h[-1, -1] = 4.0 * np.sum(u) + 8.0 * (n - 1) * x[-1] ** 2
    return h


# --- bdqrtic ------------------------------------------------------------

def _bdqrtic_f(x):
    """sum_{i<n-4} (3 - 4 x_i)^2 + (x_i^2 + 2 x_{i+1}^2 + 3 x_{i+2}^2
    + 4 x_{i+3}^2 + 5 x_{n-1}^2)^2"""
    a = 3.0 - 4.0 * x[:-4]
    b = _bdqrtic_inner(x)
    return float(np.sum(a * a) + np.sum(b * b))


def _bdqrtic_inner(x):
    return (
        x[:-4] ** 2
        + 2.0 * x[1:-3] ** 2
        + 3.0 * x[2:-2] ** 2
        + 4.0 * x[3:-1] ** 2
        + 5.0 * x[-1] ** 2
    )


def _bdqrtic_g(x):
    n = x.size
    a = 3.0 - 4.0 * x[:-4]
    b = _bdqrtic_inner(x)
    g = np.zeros_like(x)
    g[:-4] += -8.0 * a + 4.0 * b * x[:-4]
    g[1:-3] += 8.0 * b * x[1:-3]
    g[2:-2] += 12.0 * b * x[2:-2]
    g[3:-1] += 16.0 * b * x[3:-1]
    g[-1] += 20.0 * np.sum(b) * x[-1]
    return g


def _bdqrtic_h(x):
    n = x.size
    b = _bdqrtic_inner(x)
    h = np.zeros((n, n))
    coeff = (2.0, 4.0, 6.0, 8.0)
    for i in range(n - 4):
        cols = [i, i + 1, i + 2, i + 3, n - 1]
        grad_b = np.array([coeff[k] * x[i + k] for k in range(4)] + [10.0 * x[-1]])
        h[np.ix_(cols, cols)] += 2.0 * np.outer(grad_b, grad_b)
        for k in range(4):
            h[i + k, i + k] += 2.0 * b[i] * coeff[k]
        h[n - 1, n - 1] += 2.0 * b[i] * 10.0
        h[i, i] += 32.0
    return h


# --- cube ---------------------------------------------------------------

def _cube_f(x):
    """(x_0 - 1)^2 + sum_{i>=1} 100 (x_i - x_{i-1}^3)^2"""
    r = x[1:] - x[:-1] ** 3
    return float((x[0] - 1.0) ** 2 + 100.0 * np.sum(r * r))


def _cube_g(x):
    r = x[1:] - x[:-1] ** 3
    g = np.zeros_like(x)
    g[0] = 2.0 * (x[0] - 1.0)
    g[1:] += 200.0 * r
    g[:-1] += -600.0 * r * x[:-1] ** 2
    return g


def _cube_h(x):
    n = x.size
    r = x[1:] - x[:-1] ** 3
    h = np.zeros((n, n))
    idx = np.arange(n - 1)
    h[0, 0] += 2.0
    h[idx + 1, idx + 1] += 200.0
    h[idx, idx] += 1800.0 * x[:-1] ** 4 - 1200.0 * r * x[:-1]
    h[idx, idx + 1] += -600.0 * x[:-1] ** 2
    h[idx + 1, idx] = h[idx, idx + 1]
    return h


# --- dixonprice ---------------------------------------------------------

def _dixonprice_f(x):
    """(x_0 - 1)^2 + sum_{i>=1} (i+1) (2 x_i^2 - x_{i-1})^2"""
    c = np.arange(2, x.size + 1, dtype=float)
    r = 2.0 * x[1:] ** 2 - x[:-1]
    return float((x[0] - 1.0) ** 2 + np.sum(c * r * r))


def _dixonprice_g(x):
    c = np.arange(2, x.size + 1, dtype=float)
    r = 2.0 * x[1:] ** 2 - x[:-1]
    g = np.zeros_like(x)
    g[0] = 2.0 * (x[0] - 1.0)
    g[1:] += 8.0 * c * r * x[1:]
    g[:-1] += -2.0 * c * r
    return g


def _dixonprice_h(x):
    n = x.size
    c = np.arange(2, n + 1, dtype=float)
    r = 2.0 * x[1:] ** 2 - x[:-1]
    h = np.zeros((n, n))
    idx = np.arange(n - 1)
    h[0, 0] += 2.0
    h[idx + 1, idx + 1] += 2.0 * c * (16.0 * x[1:] ** 2 + 4.0 * r)
    h[idx, idx] += 2.0 * c
    h[idx, idx + 1] += -8.0 * c * x[1:]
    h[idx + 1, idx] = h[idx, idx + 1]
    return h


# --- edensch ------------------------------------------------------------

def _edensch_f(x):
    """16 + sum_{i<n-1} (x_i - 2)^4 + (x_i x_{i+1} - 2 x_{i+1})^2 + (x_{i+1} + 1)^2"""
    r = x[1:] * (x[:-1] - 2.0)
    return float(
        16.0 + np.sum((x[:-1] - 2.0) ** 4) + np.sum(r * r) + np.sum((x[1:] + 1.0) ** 2)
    )


def _edensch_g(x):
    r = x[1:] * (x[:-1] - 2.0)
    g = np.zeros_like(x)
    g[:-1] += 4.0 * (x[:-1] - 2.0) ** 3 + 2.0 * r * x[1:]
    g[1:] += 2.0 * r * (x[:-1] - 2.0) + 2.0 * (x[1:] + 1.0)
    return g


def _edensch_h(x):
    n = x.size
    r = x[1:] * (x[:-1] - 2.0)
    h = np.zeros((n, n))
    idx = np.arange(n - 1)
    h[idx, idx] += 12.0 * (x[:-1] - 2.0) ** 2 + 2.0 * x[1:] ** 2
    h[idx + 1, idx + 1] += 2.0 * (x[:-1] - 2.0) ** 2 + 2.0
    h[idx, idx + 1] += 4.0 * r
    h[idx + 1, idx] = h[idx, idx + 1]
    return h


# --- eg2 ----------------------------------------------------------------

def _eg2_f(x):
    """sum_{i<n-1} sin(x_0 + x_i^2 - 1) + 0.5 sin(x_{n-1}^2)"""
    u = x[0] + x[:-1] ** 2 - 1.0
    return float(np.sum(np.sin(u)) + 0.5 * np.sin(x[-1] ** 2))


def _eg2_g(x):
    u = x[0] + x[:-1] ** 2 - 1.0
    cu = np.cos(u)
    g = np.zeros_like(x)
    g[0] += np.sum(cu)
    g[:-1] += 2.0 * x[:-1] * cu
    g[-1] += x[-1] * np.cos(x[-1] ** 2)
    return g


def _eg2_h(x):
    n = x.size
    u = x[0] + x[:-1] ** 2 - 1.0
    cu = np.cos(u)
    su = np.sin(u)
    h = np.zeros((n, n))
    idx = np.arange(n - 1)
    h[0, 0] += -np.sum(su)
    h[0, idx] += -2.0 * su * x[:-1]
    h[idx, 0] += -2.0 * su * x[:-1]
    h[idx, idx] += -4.0 * su * x[:-1] ** 2 + 2.0 * cu
    v = x[-1] ** 2
    h[-1, -1] += np.cos(v) - 2.0 * v * np.sin(v)
    return h


# --- fletchcr -----------------------------------------------------------

def _fletchcr_f(x):
    """sum_{i<n-1} 100 (x_{i+1} - x_i + 1 - x_i^2)^2"""
    r = x[1:] - x[:-1] + 1.0 - x[:-1] ** 2
    return float(100.0 * np.sum(r * r))


def _fletchcr_g(x):
    r = x[1:] - x[:-1] + 1.0 - x[:-1] ** 2
    g = np.zeros_like(x)
    g[:-1] += 200.0 * r * (-1.0 - 2.0 * x[:-1])
    g[1:] += 200.0 * r
    return g


def _fletchcr_h(x):
    n = x.size
    r = x[1:] - x[:-1] + 1.0 - x[:-1] ** 2
    h = np.zeros((n, n))
    idx = np.arange(n - 1)
    h[idx, idx] += 200.0 * ((1.0 + 2.0 * x[:-1]) ** 2 - 2.0 * r)
    h[idx + 1, idx + 1] += 200.0
    h[idx, idx + 1] += 200.0 * (-1.0 - 2.0 * x[:-1])
    h[idx + 1, idx] = h[idx, idx + 1]
    return h


# --- raydan1 ------------------------------------------------------------

def _raydan1_f(x):
    """sum (i+1)/10 * (exp(x_i) - x_i)"""
    c = np.arange(1, x.size + 1, dtype=float) / 10.0
    return float(np.sum(c * (np.exp(x) - x)))


def _raydan1_g(x):
    c = np.arange(1, x.size + 1, dtype=float) / 10.0
    return c * (np.exp(x) - 1.0)


def _raydan1_h(x):
    c = np.arange(1, x.size + 1, dtype=float) / 10.0
    return np.diag(c * np.exp(x))


# --- sinquad ------------------------------------------------------------

def _sinquad_f(x):
    """(x_0 - 1)^4 + (x_{n-1}^2 - x_0^2)^2
    + sum_{0<i<n-1} (sin(x_i - x_{n-1}) - x_0^2 + x_i^2)^2"""
    mid = x[1:-1]
    r = np.sin(mid - x[-1]) - x[0] ** 2 + mid**2
    e = x[-1] ** 2 - x[0] ** 2
    return float((x[0] - 1.0) ** 4 + e * e + np.sum(r * r))


def _sinquad_g(x):
    n = x.size
    mid = x[1:-1]
    c = np.cos(mid - x[-1])
    r = np.sin(mid - x[-1]) - x[0] ** 2 + mid**2
    e = x[-1] ** 2 - x[0] ** 2
    g = np.zeros_like(x)
    g[0] += 4.0 * (x[0] - 1.0) ** 3 - 4.0 * e * x[0] - 4.0 * np.sum(r) * x[0]
    g[1:-1] += 2.0 * r * (c + 2.0 * mid)
    g[-1] += 4.0 * e * x[-1] - 2.0 * np.sum(r * c)
    return g


def _sinquad_h(x):
    n = x.size
    mid = x[1:-1]
    c = np.cos(mid - x[-1])
    s = np.sin(mid - x[-1])
    r = s - x[0] ** 2 + mid**2
    e = x[-1] ** 2 - x[0] ** 2
    h = np.zeros((n, n))
    # quartic head and the coupling term (x_{n-1}^2 - x_0^2)^2
    h[0, 0] += 12.0 * (x[0] - 1.0) ** 2 + 8.0 * x[0] ** 2 - 4.0 * e
    h[-1, -1] += 8.0 * x[-1] ** 2 + 4.0 * e
    h[0, -1] += -8.0 * x[0] * x[-1]
    h[-1, 0] += -8.0 * x[0] * x[-1]
    idx = np.arange(1, n - 1)
    d_i = c + 2.0 * mid  # dr/dx_i
    # 2 (grad r)(grad r)^T pieces
    h[0, 0] += 8.0 * x[0] ** 2 * r.size
    h[idx, idx] += 2.0 * d_i * d_i
    h[-1, -1] += 2.0 * np.sum(c * c)
    h[0, idx] += 2.0 * (-2.0 * x[0]) * d_i
    h[idx, 0] += 2.0 * (-2.0 * x[0]) * d_i
    h[0, -1] += 2.0 * np.sum((-2.0 * x[0]) * (-c))
    h[-1, 0] += 2.0 * np.sum((-2.0 * x[0]) * (-c))
    h[idx, -1] += 2.0 * d_i * (-c)
    h[-1, idx] += 2.0 * d_i * (-c)
    # 2 r hess(r) pieces
    h[0, 0] += 2.0 * np.sum(r * (-2.0))
    h[idx, idx] += 2.0 * r * (2.0 - s)
    h[idx, -1] += 2.0 * r * s
    h[-1, idx] += 2.0 * r * s
    h[-1, -1] += 2.0 * np.sum(r * (-s))
    return h


# --- tointgss -----------------------------------------------------------

def _tointgss_parts(x):
    n = x.size
    alpha = 10.0 / (n + 2.0)
    u = x[:-2] - x[1:-1]
    t = x[2:]
    v = 0.1 + t * t
    w = np.exp(-u * u / v)
    s = alpha + t * t
    return u, t, v, w, s


def _tointgss_f(x):
    """sum_{i<n-2} (10/(n+2) + x_{i+2}^2) (2 - exp(-(x_i - x_{i+1})^2 / (0.1 + x_{i+2}^2)))"""
    u, t, v, w, s = _tointgss_parts(x)
    return float(np.sum(s * (2.0 - w)))


def _tointgss_g(x):
    n = x.size
    u, t, v, w, s = _tointgss_parts(x)
    g = np.zeros_like(x)
    f_a = 2.0 * s * u * w / v
    f_t = 2.0 * t * (2.0 - w) - 2.0 * t * s * u * u * w / (v * v)
    g[:-2] += f_a
    g[1:-1] += -f_a
    g[2:] += f_t
    return g


def _tointgss_h(x):
    n = x.size
    u, t, v, w, s = _tointgss_parts(x)
    h = np.zeros((n, n))
    f_aa = 2.0 * s * w * (v - 2.0 * u * u) / (v * v)
    f_at = (4.0 * t * u * w / v) * (1.0 + s * u * u / (v * v) - s / v)
    w_t = 2.0 * t * u * u * w / (v * v)
    d_tsw = (
        s * w / (v * v)
        + 2.0 * t * t * w / (v * v)
        + 2.0 * t * t * s * u * u * w / (v**4)
        - 4.0 * t * t * s * w / (v**3)
    )
    f_tt = 2.0 * (2.0 - w) - 2.0 * t * w_t - 2.0 * u * u * d_tsw
    ia = np.arange(n - 2)
    ib = ia + 1
    it = ia + 2
    h[ia, ia] += f_aa
    h[ib, ib] += f_aa
    h[ia, ib] += -f_aa
    h[ib, ia] += -f_aa
    h[ia, it] += f_at
    h[it, ia] += f_at
    h[ib, it] += -f_at
    h[it, ib] += -f_at
    h[it, it] += f_tt
    return h


# --- trid ---------------------------------------------------------------

def _trid_f(x):
    """sum (x_i - 1)^2 - sum_{i>=1} x_i x_{i-1}"""
    return float(np.sum((x - 1.0) ** 2) - np.sum(x[1:] * x[:-1]))


def _trid_g(x):
    g = 2.0 * (x - 1.0)
    g[1:] -= x[:-1]
    g[:-1] -= x[1:]
    return g


def _trid_h(x):
    n = x.size
    h = 2.0 * np.eye(n)
    idx = np.arange(n - 1)
    h[idx, idx + 1] = -1.0
    h[idx + 1, idx] = -1.0
    return h


# --- registry -----------------------------------------------------------

def _alternating(n):
    return np.tile([-1.2, 1.0], (n + 1) // 2)[:n]


@dataclass(frozen=True)
class _Benchmark:
    min_n: int
    value: Callable[[np.ndarray], float]
    grad: Callable[[np.ndarray], np.ndarray]
    hess: Callable[[np.ndarray], np.ndarray]
    start: Callable[[int], np.ndarray]


_REGISTRY: dict[str, _Benchmark] = {
    "arwhead": _Benchmark(2, _arwhead_f, _arwhead_g, _arwhead_h, lambda n: np.ones(n)),
    "bdqrtic": _Benchmark(5, _bdqrtic_f, _bdqrtic_g, _bdqrtic_h, lambda n: np.ones(n)),
    "cube": _Benchmark(2, _cube_f, _cube_g, _cube_h, _alternating),
    "dixonprice": _Benchmark(2, _dixonprice_f, _dixonprice_g, _dixonprice_h, lambda n: np.ones(n)),
    "edensch": _Benchmark(2, _edensch_f, _edensch_g, _edensch_h, lambda n: np.zeros(n)),
    "eg2": _Benchmark(2, _eg2_f, _eg2_g, _eg2_h, lambda n: np.ones(n)),
    "fletchcr": _Benchmark(2, _fletchcr_f, _fletchcr_g, _fletchcr_h, lambda n: np.zeros(n)),
    "raydan1": _Benchmark(1, _raydan1_f, _raydan1_g, _raydan1_h, lambda n: np.ones(n)),
    "rosenbrock": _Benchmark(2, _rosenbrock_f, _rosenbrock_g, _rosenbrock_h, _alternating),
    "sinquad": _Benchmark(3, _sinquad_f, _sinquad_g, _sinquad_h, lambda n: 0.1 * np.ones(n)),
    "tointgss": _Benchmark(3, _tointgss_f, _tointgss_g, _tointgss_h, lambda n: 3.0 * np.ones(n)),
    "trid": _Benchmark(2, _trid_f, _trid_g, _trid_h, lambda n: np.zeros(n)),
}


def benchmark_names() -> list[str]:
    return sorted(_REGISTRY)


def _lookup(name: str, n: int) -> _Benchmark:
    try:
        bench = _REGISTRY[name]
    except KeyError:
        raise UnknownFunction(name) from None
    if n < bench.min_n:
        raise BadDimension(f"{name} needs n >= {bench.min_n}, got {n}")
    return bench


def benchmark_oracle(name: str, n: int) -> ObjectiveOracle:
    """Oracle for a registered test function at dimension n."""
    bench = _lookup(name, n)

    def eval_hess_action(x, v):
        return bench.hess(x) @ v

    return ObjectiveOracle(
        n, bench.value, bench.grad, eval_hess_action, bench.hess, name=f"{name}_n{n}"
    )


def benchmark_start(name: str, n: int) -> np.ndarray:
    """Canonical starting point for a registered test function."""
    return np.asarray(_lookup(name, n).start(n), dtype=float)


def random_start(name: str, n: int, rng: np.random.Generator) -> np.ndarray:
    """Componentwise uniform start on [-1, 1], scaled to the canonical
    start's magnitude so each function is probed at its natural scale."""
    scale = max(1.0, float(np.max(np.abs(benchmark_start(name, n)))))
    return scale * rng.uniform(-1.0, 1.0, size=n)
