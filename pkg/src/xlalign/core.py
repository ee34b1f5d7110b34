"""Core domain types: embedding sets, paired sets, linear maps, reports.

All types are immutable after construction (frozen dataclasses over
read-only float64 arrays) and therefore safe to share across threads.
Construction validates shapes and rejects non-finite entries.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .errors import (
    DimensionMismatchError,
    NonFiniteDataError,
    XlalignError,
)

MAPPED_SUFFIX = "~mapped"


def _as_readonly_f64(values, name: str, shape_hint: str) -> np.ndarray:
    """Copy to an owned, read-only float64 array, rejecting NaN/Inf.

    Everything is widened to 64-bit even when ingested as 32-bit: Gram
    matrices of 768-dim data are too ill-conditioned for 32-bit solves.
    """
    arr = np.array(values, dtype=np.float64, copy=True)
    if not np.all(np.isfinite(arr)):
        raise NonFiniteDataError(f"{name} contains non-finite entries ({shape_hint})")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class EmbeddingSet:
    """An n x D matrix of sentence embeddings tagged with a language code.

    `lang` is a free-form tag ("en", "de", "ber", ...); no ISO validation.
    """

    lang: str
    data: np.ndarray

    def __post_init__(self):
        if not self.lang:
            raise ValueError("lang must be a non-empty string")
        arr = _as_readonly_f64(self.data, "embedding data", f"lang={self.lang}")
        if arr.ndim != 2:
            raise ValueError(f"embedding data must be 2-D, got ndim={arr.ndim}")
        if arr.shape[1] < 1:
            raise ValueError("embedding dim must be positive")
        object.__setattr__(self, "data", arr)

    @property
    def count(self) -> int:
        return self.data.shape[0]

    @property
    def dim(self) -> int:
        return self.data.shape[1]

    def take(self, indices: np.ndarray) -> "EmbeddingSet":
        """Row subset in the given index order, same lang tag."""
        return EmbeddingSet(lang=self.lang, data=self.data[indices])


@dataclass(frozen=True)
class PairedEmbeddings:
    """Two equally-sized embedding sets; row i of each are translations."""

    source: EmbeddingSet
    target: EmbeddingSet

    def __post_init__(self):
        if self.source.count != self.target.count:
            raise DimensionMismatchError(
                "paired sets must have equal counts", self.source.count, self.target.count
            )
        if self.source.dim != self.target.dim:
            raise DimensionMismatchError(
                "paired sets must have equal dims", self.source.dim, self.target.dim
            )
        if self.source.lang == self.target.lang:
            warnings.warn(
                f"source and target share the language tag {self.source.lang!r}; "
                "fine for synthetic data, suspicious for real corpora",
                stacklevel=2,
            )

    @property
    def count(self) -> int:
        return self.source.count

    @property
    def dim(self) -> int:
        return self.source.dim

    def take(self, indices: np.ndarray) -> "PairedEmbeddings":
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return PairedEmbeddings(self.source.take(indices), self.target.take(indices))


@dataclass(frozen=True)
class LinearMap:
    """Affine map x -> A x + b between two embedding spaces of equal dim.

    `provenance` is free-form, JSON-serializable metadata (fitter name,
    training-set identifier, loss type, ...). It never affects numerics.
    """

    A: np.ndarray
    b: np.ndarray
    provenance: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        A = _as_readonly_f64(self.A, "map matrix A", "square")
        b = _as_readonly_f64(self.b, "map bias b", "vector")
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValueError(f"A must be square, got shape {A.shape}")
        if b.ndim != 1 or b.shape[0] != A.shape[0]:
            raise DimensionMismatchError("bias length must match A", A.shape[0], b.shape[0])
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)

    @property
    def dim(self) -> int:
        return self.A.shape[0]

    @classmethod
    def identity(cls, dim: int, provenance: dict[str, Any] | None = None) -> "LinearMap":
        return cls(A=np.eye(dim), b=np.zeros(dim), provenance=provenance or {})


@dataclass(frozen=True)
class SplitSpec:
    """Deterministic train/val/test partition sizes plus the shuffle seed."""

    test_count: int
    val_count: int
    seed: int = 0

    def __post_init__(self):
        if self.test_count < 0 or self.val_count < 0:
            raise ValueError("split counts must be non-negative")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class MetricsReport:
    """The four improvement scores for one map on one paired test set.

    dD: relative improvement in mean Euclidean distance.
    dC: mean cosine improvement.
    fD/fC: fraction of samples with strictly decreased distance /
    strictly increased cosine (exact multiples of 1/n).
    """

    dD: float
    dC: float
    fD: float
    fC: float
    n: int
    d_original: float
    d_mapped: float

    def as_dict(self) -> dict[str, Any]:
        return {
            "dD": self.dD,
            "dC": self.dC,
            "fD": self.fD,
            "fC": self.fC,
            "n": self.n,
            "d_original": self.d_original,
            "d_mapped": self.d_mapped,
        }


@dataclass(frozen=True)
class OrthoReport:
    """Aggregates over the normalized column-pair dot products of A."""

    mean_abs_p: float
    sigma_p: float
    min_p: float
    max_p: float
    flagged_pairs: int
    threshold: float

    def as_dict(self) -> dict[str, Any]:
        return {
            "mean_abs_p": self.mean_abs_p,
            "sigma_p": self.sigma_p,
            "min_p": self.min_p,
            "max_p": self.max_p,
            "flagged_pairs": self.flagged_pairs,
            "threshold": self.threshold,
        }


@dataclass(frozen=True)
class DilationReport:
    """Aggregates over the column norms of A (per-direction dilation)."""

    alpha_bar: float
    nstd: float
    range: float
    min_alpha: float
    max_alpha: float

    def as_dict(self) -> dict[str, Any]:
        return {
            "alpha_bar": self.alpha_bar,
            "nstd": self.nstd,
            "range": self.range,
            "min_alpha": self.min_alpha,
            "max_alpha": self.max_alpha,
        }


def apply(map: LinearMap, set: EmbeddingSet) -> EmbeddingSet:
    """Apply x -> A x + b to every row; lang tag gains a "~mapped" suffix."""
    if set.dim != map.dim:
        raise DimensionMismatchError("map dim vs set dim", map.dim, set.dim)
    mapped = set.data @ map.A.T + map.b
    return EmbeddingSet(lang=set.lang + MAPPED_SUFFIX, data=mapped)


def split(
    pairs: PairedEmbeddings, spec: SplitSpec
) -> tuple[PairedEmbeddings, PairedEmbeddings, PairedEmbeddings]:
    """Disjoint (train, val, test) partition by a seed-keyed permutation.

    Identical seed gives identical row assignment. Row pairing is preserved.
    """
    indices = split_indices(pairs.count, spec)
    return tuple(pairs.take(indices[part]) for part in ("train", "val", "test"))


def split_indices(n: int, spec: SplitSpec) -> dict[str, np.ndarray]:
    """The permutation-based index assignment behind `split`.

    Exposed so callers can persist the assignment (e.g. map provenance)
    and re-evaluate on exactly the held-out rows later.
    """
    held_out = spec.test_count + spec.val_count
    if held_out >= n:
        raise XlalignError(
            f"split exceeds population: test {spec.test_count} + val {spec.val_count} >= n {n}"
        )
    perm = np.random.default_rng(spec.seed).permutation(n)
    return {
        "test": perm[: spec.test_count],
        "val": perm[spec.test_count : held_out],
        "train": perm[held_out:],
    }
