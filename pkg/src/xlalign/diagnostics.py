"""Audits of a fitted matrix: orthogonality and dilation uniformity.

An ideal map between well-aligned embedding spaces is an orthogonal
transform times a uniform dilation; these reports quantify how far a
fitted A deviates from that.
"""

from __future__ import annotations

import math

import numpy as np

from .core import DilationReport, LinearMap, OrthoReport
from .errors import ZeroColumnError

# Flag threshold: a column pair whose angle deviates from orthogonal by
# more than 25%, i.e. |cos| > cos(0.75 * pi/2) ~ 0.383.
DEFAULT_FLAG_THRESHOLD = math.cos(0.75 * math.pi / 2.0)


def column_norms(A: np.ndarray) -> np.ndarray:
    return np.linalg.norm(A, axis=0)


def column_cosines(A: np.ndarray) -> np.ndarray:
    """Normalized dot products between distinct columns (unordered pairs).

    Entry order follows the upper triangle of A^T A, j < k. Invariant to
    rescaling any single column.
    """
    norms = column_norms(A)
    zeros = np.flatnonzero(norms == 0.0)
    if zeros.size:
        raise ZeroColumnError(int(zeros[0]))
    gram = A.T @ A
    p = gram / np.outer(norms, norms)
    ju, ku = np.triu_indices(A.shape[1], k=1)
    return p[ju, ku]


def ortho_report(map: LinearMap, threshold: float = DEFAULT_FLAG_THRESHOLD) -> OrthoReport:
    """Aggregate the column-pair cosines p_jk of A.

    All values are zero iff A's columns are mutually orthogonal. The mean
    is of |p_jk|; the standard deviation is of the signed values, with the
    population convention (divide by the number of pairs). Flagged pairs
    are the unordered (j, k) with |p_jk| above the threshold.
    """
    p = column_cosines(map.A)
    if p.size == 0:
        # 1x1 matrix: no column pairs to compare
        return OrthoReport(0.0, 0.0, 0.0, 0.0, 0, threshold)
    return OrthoReport(
        mean_abs_p=float(np.mean(np.abs(p))),
        sigma_p=float(np.std(p)),
        min_p=float(p.min()),
        max_p=float(p.max()),
        flagged_pairs=int(np.count_nonzero(np.abs(p) > threshold)),
        threshold=threshold,
    )


def dilation_report(map: LinearMap) -> DilationReport:
    """Aggregate the per-column dilation factors alpha_j = |A_j|.

    A uniform dilation has equal column norms; nstd is the population
    standard deviation (divisor D) over the mean, and range is
    (max - min) / mean.
    """
    alpha = column_norms(map.A)
    alpha_bar = float(alpha.mean())
    if alpha_bar <= 0.0:
        raise ZeroColumnError(0)
    return DilationReport(
        alpha_bar=alpha_bar,
        nstd=float(np.std(alpha)) / alpha_bar,
        range=float(alpha.max() - alpha.min()) / alpha_bar,
        min_alpha=float(alpha.min()),
        max_alpha=float(alpha.max()),
    )
