"""Cross-lingual embedding alignment toolkit.

Fits linear maps between sentence-embedding spaces of two languages,
scores how much the map improves cross-lingual correspondence, and
audits the fitted matrix for deviation from an ideal
orthogonal-plus-dilation-plus-shift transform.
"""

import os as _os

# Cap BLAS worker pools before numpy first loads. Best effort: once numpy
# is imported (by us or anyone else) the pools are already sized.
if "XLALIGN_THREADS" in _os.environ:
    for _var in (
        "OMP_NUM_THREADS",
        "OPENBLAS_NUM_THREADS",
        "MKL_NUM_THREADS",
        "NUMEXPR_NUM_THREADS",
    ):
        _os.environ.setdefault(_var, _os.environ["XLALIGN_THREADS"])

from .core import (
    DilationReport,
    EmbeddingSet,
    LinearMap,
    MetricsReport,
    OrthoReport,
    PairedEmbeddings,
    SplitSpec,
    apply,
    split,
    split_indices,
)
from .diagnostics import (
    DEFAULT_FLAG_THRESHOLD,
    column_cosines,
    column_norms,
    dilation_report,
    ortho_report,
)
from .fitting import (
    FitConfig,
    FitResult,
    fit_distance_sgd,
    fit_ols,
    fit_procrustes,
)
from .metrics import evaluate, improvement_report, mean_distance
from .synth import SynthSpec, generate
from . import errors, io

__version__ = "0.1.0"

__all__ = [
    "DilationReport",
    "EmbeddingSet",
    "LinearMap",
    "MetricsReport",
    "OrthoReport",
    "PairedEmbeddings",
    "SplitSpec",
    "apply",
    "split",
    "split_indices",
    "DEFAULT_FLAG_THRESHOLD",
    "column_cosines",
    "column_norms",
    "dilation_report",
    "ortho_report",
    "FitConfig",
    "FitResult",
    "fit_distance_sgd",
    "fit_ols",
    "fit_procrustes",
    "evaluate",
    "improvement_report",
    "mean_distance",
    "SynthSpec",
    "generate",
    "errors",
    "io",
]
