"""Improvement measures comparing original vs mapped embeddings.

Four scores: relative mean-distance improvement dD, mean cosine
improvement dC, and the strict-improvement fractions fD and fC.
Ties never count as improvement (the step function is 0 at 0), so an
identity map scores exactly zero on all four.
"""

from __future__ import annotations

import numpy as np

from .core import EmbeddingSet, LinearMap, MetricsReport, PairedEmbeddings, apply
from .errors import (
    DegenerateDenominatorError,
    DimensionMismatchError,
    ZeroNormRowError,
)

DENOM_EPSILON = 1e-12


def mean_distance(x: EmbeddingSet, y: EmbeddingSet) -> float:
    """Mean per-row Euclidean distance between two equally-shaped sets."""
    if x.count != y.count:
        raise DimensionMismatchError("count mismatch", x.count, y.count)
    if x.dim != y.dim:
        raise DimensionMismatchError("dim mismatch", x.dim, y.dim)
    if x.count == 0:
        raise ValueError("mean_distance needs at least one row")
    return float(np.mean(np.linalg.norm(x.data - y.data, axis=1)))


def _row_cosines(x: np.ndarray, y: np.ndarray, x_name: str, y_name: str) -> np.ndarray:
    nx = np.linalg.norm(x, axis=1)
    ny = np.linalg.norm(y, axis=1)
    for norms, name in ((nx, x_name), (ny, y_name)):
        zeros = np.flatnonzero(norms == 0.0)
        if zeros.size:
            raise ZeroNormRowError(name, int(zeros[0]))
    return np.sum(x * y, axis=1) / (nx * ny)


def improvement_report(
    original: EmbeddingSet,
    mapped: EmbeddingSet,
    target: EmbeddingSet,
    denom_epsilon: float = DENOM_EPSILON,
) -> MetricsReport:
    """Score how much `mapped` improves on `original` relative to `target`."""
    for other, name in ((mapped, "mapped"), (target, "target")):
        if other.count != original.count:
            raise DimensionMismatchError(f"{name} count", original.count, other.count)
        if other.dim != original.dim:
            raise DimensionMismatchError(f"{name} dim", original.dim, other.dim)
    n = original.count
    if n == 0:
        raise ValueError("improvement_report needs at least one row")

    dist_orig = np.linalg.norm(original.data - target.data, axis=1)
    dist_mapped = np.linalg.norm(mapped.data - target.data, axis=1)
    d = float(dist_orig.mean())
    d_tilde = float(dist_mapped.mean())
    if min(d, d_tilde) < denom_epsilon:
        raise DegenerateDenominatorError(d, d_tilde)

    cos_orig = _row_cosines(original.data, target.data, "source", "target")
    cos_mapped = _row_cosines(mapped.data, target.data, "mapped source", "target")

    return MetricsReport(
        dD=(d - d_tilde) / min(d, d_tilde),
        dC=float(np.mean(cos_mapped - cos_orig)),
        fD=int(np.count_nonzero(dist_orig - dist_mapped > 0.0)) / n,
        fC=int(np.count_nonzero(cos_mapped - cos_orig > 0.0)) / n,
        n=n,
        d_original=d,
        d_mapped=d_tilde,
    )


def evaluate(
    map: LinearMap,
    test: PairedEmbeddings,
    denom_epsilon: float = DENOM_EPSILON,
) -> MetricsReport:
    """Apply the map to the test source and score it against the target."""
    if test.dim != map.dim:
        raise DimensionMismatchError("map dim vs test dim", map.dim, test.dim)
    mapped = apply(map, test.source)
    return improvement_report(test.source, mapped, test.target, denom_epsilon)
