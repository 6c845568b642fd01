"""Objective library: losses, barrier QPs, benchmark functions, datasets."""

from .barrier import (
    BarrierProblem,
    DEFAULT_BARRIER_WEIGHT,
    Infeasible,
    QpStandardForm,
    RankDeficient,
    barrier_oracle,
    reduce_qp_to_barrier,
)
from .benchmarks import (
    BadDimension,
    UnknownFunction,
    benchmark_names,
    benchmark_oracle,
    benchmark_start,
    random_start,
)
from .datasets import EmptyDataset, ParseError, SparseDataset, parse_libsvm
from .losses import DimensionMismatch, logistic_oracle, tanh_oracle
from .synth import (
    load_suite,
    quadratic_oracle,
    random_spd,
    suite_manifest,
    synth_suite,
    write_suite_manifest,
)

__all__ = [
    "BadDimension",
    "BarrierProblem",
    "DEFAULT_BARRIER_WEIGHT",
    "DimensionMismatch",
    "EmptyDataset",
    "Infeasible",
    "ParseError",
    "QpStandardForm",
    "RankDeficient",
    "SparseDataset",
    "UnknownFunction",
    "barrier_oracle",
    "benchmark_names",
    "benchmark_oracle",
    "benchmark_start",
    "load_suite",
    "logistic_oracle",
    "parse_libsvm",
    "quadratic_oracle",
    "random_spd",
    "random_start",
    "reduce_qp_to_barrier",
    "suite_manifest",
    "synth_suite",
    "tanh_oracle",
    "write_suite_manifest",
]
