"""Sparse classification datasets and the plain-text ingestion format.

Rows on disk are "label idx:val idx:val ..." with 1-based, strictly
increasing indices; in memory everything is 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp


class ParseError(Exception):
    """Malformed input line; carries the 1-based line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class EmptyDataset(Exception):
    """The input contained no data points."""


@dataclass
class SparseDataset:
    """Binary-labelled sparse feature matrix.

    Labels are 0/1; the feature rows are kept in compressed sparse row
    form.
    """

    labels: np.ndarray
    features: sp.csr_matrix

    def __post_init__(self):
        self.labels = np.asarray(self.labels)
        if self.labels.shape[0] != self.features.shape[0]:
            raise ValueError("label count does not match row count")

    @property
    def m(self) -> int:
        return self.features.shape[0]

    @property
    def n(self) -> int:
        return self.features.shape[1]

    @classmethod
    def from_dense(cls, labels, x) -> "SparseDataset":
        return cls(np.asarray(labels), sp.csr_matrix(np.asarray(x, dtype=float)))


def parse_libsvm(path, n_features: int | None = None) -> SparseDataset:
    """Read a sparse dataset from its text representation.

    Label alphabets {-1,+1}, {1,2} and the like are remapped
    deterministically: the smallest label becomes 0, the other 1.  The
    feature count defaults to the largest index seen.
    """
    raw_labels: list[float] = []
    indptr = [0]
    indices: list[int] = []
    data: list[float] = []
    max_index = 0

    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            parts = line.split()
            try:
                label = float(parts[0])
            except ValueError:
                raise ParseError(lineno, f"bad label {parts[0]!r}") from None
            prev = 0
            for tok in parts[1:]:
                idx_str, _, val_str = tok.partition(":")
                if not val_str:
                    raise ParseError(lineno, f"bad feature token {tok!r}")
                try:
                    idx = int(idx_str)
                    val = float(val_str)
                except ValueError:
                    raise ParseError(lineno, f"bad feature token {tok!r}") from None
                if idx < 1:
                    raise ParseError(lineno, f"index {idx} is not positive")
                if idx <= prev:
                    raise ParseError(lineno, f"index {idx} does not increase")
                prev = idx
                max_index = max(max_index, idx)
                indices.append(idx - 1)
                data.append(val)
            raw_labels.append(label)
            indptr.append(len(indices))

    if not raw_labels:
        raise EmptyDataset(f"no data points in {path}")

    distinct = sorted(set(raw_labels))
    if len(distinct) > 2:
        raise ParseError(0, f"expected a binary label alphabet, got {distinct}")
    remap = {lab: i for i, lab in enumerate(distinct)}
    labels = np.array([remap[lab] for lab in raw_labels], dtype=np.int64)

    n = n_features if n_features is not None else max_index
    if n_features is not None and max_index > n_features:
        raise ParseError(0, f"index {max_index} exceeds declared feature count {n_features}")
    n = max(n, 1)
    features = sp.csr_matrix(
        (np.array(data), np.array(indices, dtype=np.int64), np.array(indptr, dtype=np.int64)),
        shape=(len(raw_labels), n),
    )
    return SparseDataset(labels, features)
