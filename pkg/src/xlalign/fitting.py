"""Three interchangeable fitters producing a LinearMap from training pairs.

fit_ols         closed-form least squares on the bias-augmented design matrix
fit_distance_sgd mini-batch descent on the mean Euclidean (not squared) distance
fit_procrustes  closed-form orthogonal transform + dilation + shift

The squared-distance and plain-distance losses have different optima, so
both are available and the one used is recorded in map provenance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

import numpy as np

from .core import LinearMap, PairedEmbeddings
from .errors import (
    DegenerateDataError,
    DimensionMismatchError,
    DivergenceError,
    EmptyTrainingError,
)

METHODS = ("ols", "distance_sgd", "procrustes")


@dataclass(frozen=True)
class FitConfig:
    """Hyperparameters for fit_distance_sgd (ignored by closed-form fitters).

    Defaults: Adam at lr 1e-3, batch 256, halve the learning rate after
    patience//2 epochs without validation improvement, stop after
    `patience` consecutive epochs without improvement beyond `tolerance`.
    """

    method: str = "distance_sgd"
    max_epochs: int = 200
    batch_size: int = 256
    learning_rate: float = 1e-3
    patience: int = 5
    tolerance: float = 1e-6
    seed: int = 0

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.max_epochs < 1:
            raise ValueError("max_epochs must be positive")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be > 0")
        if self.patience < 1:
            raise ValueError("patience must be positive")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be > 0")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class FitResult:
    map: LinearMap
    train_loss: float
    val_loss: float | None = None
    epochs_run: int = 0
    converged: bool = True

    def __post_init__(self):
        for name in ("train_loss", "val_loss"):
            v = getattr(self, name)
            if v is not None and (not np.isfinite(v) or v < 0):
                raise ValueError(f"{name} must be finite and non-negative, got {v}")


@dataclass
class EpochStats:
    """Per-epoch progress record handed to the optional fit callback."""

    epoch: int
    train_loss: float
    val_loss: float
    learning_rate: float
    best_val_loss: float


def mean_squared_distance(A: np.ndarray, b: np.ndarray, pairs: PairedEmbeddings) -> float:
    """(1/n) * sum of squared Euclidean residuals |A e_i + b - e'_i|^2."""
    resid = pairs.source.data @ A.T + b - pairs.target.data
    return float(np.mean(np.sum(resid * resid, axis=1)))


def mean_euclidean_distance(A: np.ndarray, b: np.ndarray, pairs: PairedEmbeddings) -> float:
    """(1/n) * sum of Euclidean residual norms |A e_i + b - e'_i|."""
    resid = pairs.source.data @ A.T + b - pairs.target.data
    return float(np.mean(np.linalg.norm(resid, axis=1)))


def _check_val(train: PairedEmbeddings, val: PairedEmbeddings | None):
    if val is not None and val.dim != train.dim:
        raise DimensionMismatchError("train dim vs val dim", train.dim, val.dim)


def fit_ols(train: PairedEmbeddings, val: PairedEmbeddings | None = None) -> FitResult:
    """Least-squares fit of (A, b) minimizing the mean squared distance.

    Solves the bias-augmented system [E | 1] W = E' with an SVD-based
    rank-revealing solver; rank-deficient problems (n <= D or degenerate
    data) get the minimum-norm solution and a provenance flag.
    """
    if train.count == 0:
        raise EmptyTrainingError("fit_ols needs at least one training pair")
    _check_val(train, val)
    n, d = train.count, train.dim
    design = np.hstack([train.source.data, np.ones((n, 1))])
    solution, _, rank, _ = np.linalg.lstsq(design, train.target.data, rcond=None)
    A = solution[:d, :].T
    b = solution[d, :]
    provenance: dict[str, Any] = {
        "fitter": "ols",
        "loss": "squared_distance",
        "train_count": n,
        "rank_deficient": bool(rank < d + 1),
    }
    fitted = LinearMap(A=A, b=b, provenance=provenance)
    return FitResult(
        map=fitted,
        train_loss=mean_squared_distance(A, b, train),
        val_loss=None if val is None else mean_squared_distance(A, b, val),
    )


def fit_procrustes(train: PairedEmbeddings, val: PairedEmbeddings | None = None) -> FitResult:
    """Closed-form fit of A = alpha*T with T exactly orthogonal, plus shift b.

    Center both sides at their means, SVD the cross-covariance, build T
    from the orthogonal factors (reflections permitted), set the dilation
    alpha to (sum of singular values) / (total variance of the centered
    source) and the shift to target_mean - alpha*T @ source_mean.
    """
    if train.count < 2:
        raise EmptyTrainingError("fit_procrustes needs at least two training pairs")
    _check_val(train, val)
    src_mean = train.source.data.mean(axis=0)
    tgt_mean = train.target.data.mean(axis=0)
    src_c = train.source.data - src_mean
    tgt_c = train.target.data - tgt_mean

    src_var = float(np.sum(src_c * src_c))
    if src_var <= 0.0:
        raise DegenerateDataError("source rows are all identical: zero variance")

    # rows map as e -> alpha * T e, so minimize |alpha * Ec T^T - E'c|_F
    u, s, vt = np.linalg.svd(src_c.T @ tgt_c)
    T = (u @ vt).T
    alpha = float(np.sum(s)) / src_var
    if alpha <= 0.0:
        raise DegenerateDataError("target has no variance correlated with source")
    A = alpha * T
    b = tgt_mean - A @ src_mean
    provenance: dict[str, Any] = {
        "fitter": "procrustes",
        "loss": "squared_distance",
        "train_count": train.count,
        "alpha": alpha,
    }
    fitted = LinearMap(A=A, b=b, provenance=provenance)
    return FitResult(
        map=fitted,
        train_loss=mean_squared_distance(A, b, train),
        val_loss=None if val is None else mean_squared_distance(A, b, val),
    )


class _Adam:
    """Minimal Adam optimizer over a list of numpy parameter arrays."""

    def __init__(self, params: list[np.ndarray], lr: float):
        self.params = params
        self.lr = lr
        self.m = [np.zeros_like(p) for p in params]
        self.v = [np.zeros_like(p) for p in params]
        self.t = 0
        self.beta1 = 0.9
        self.beta2 = 0.999
        self.eps = 1e-8

    def step(self, grads: list[np.ndarray]):
        self.t += 1
        b1c = 1.0 - self.beta1**self.t
        b2c = 1.0 - self.beta2**self.t
        for p, g, m, v in zip(self.params, grads, self.m, self.v):
            m *= self.beta1
            m += (1.0 - self.beta1) * g
            v *= self.beta2
            v += (1.0 - self.beta2) * (g * g)
            p -= self.lr * (m / b1c) / (np.sqrt(v / b2c) + self.eps)


def fit_distance_sgd(
    train: PairedEmbeddings,
    val: PairedEmbeddings,
    config: FitConfig | None = None,
    on_epoch: Callable[[EpochStats], None] | None = None,
) -> FitResult:
    """Mini-batch descent on the mean Euclidean distance |A e_i + b - e'_i|.

    Initialization is A=I, b=0 (the optimum is near identity for aligned
    embedding models). Early-stops after `patience` consecutive epochs
    without validation improvement beyond `tolerance`; the learning rate
    is halved after patience//2 bad epochs. Returns the best-on-validation
    map. The residual direction at an exact zero residual is taken as zero
    (subgradient choice; measure-zero event).
    """
    config = config or FitConfig()
    if config.method != "distance_sgd":
        raise ValueError(f"config.method must be 'distance_sgd', got {config.method!r}")
    if train.count == 0:
        raise EmptyTrainingError("fit_distance_sgd needs at least one training pair")
    if val is None or val.count == 0:
        raise EmptyTrainingError("fit_distance_sgd needs a non-empty validation set")
    _check_val(train, val)

    d = train.dim
    A = np.eye(d)
    b = np.zeros(d)
    opt = _Adam([A, b], lr=config.learning_rate)
    rng = np.random.default_rng(config.seed)

    decay_after = max(1, config.patience // 2)
    best_val = mean_euclidean_distance(A, b, val)
    best_A, best_b = A.copy(), b.copy()
    best_train = mean_euclidean_distance(A, b, train)
    bad_epochs = 0
    bad_since_decay = 0
    epochs_run = 0
    converged = False

    src = train.source.data
    tgt = train.target.data
    n = train.count

    for epoch in range(1, config.max_epochs + 1):
        epochs_run = epoch
        perm = rng.permutation(n)
        loss_sum = 0.0
        for start in range(0, n, config.batch_size):
            idx = perm[start : start + config.batch_size]
            xb = src[idx]
            resid = xb @ A.T + b - tgt[idx]
            norms = np.linalg.norm(resid, axis=1)
            loss_sum += float(norms.sum())
            nonzero = norms > 0.0
            unit = np.zeros_like(resid)
            unit[nonzero] = resid[nonzero] / norms[nonzero, None]
            grad_A = unit.T @ xb / len(idx)
            grad_b = unit.mean(axis=0)
            opt.step([grad_A, grad_b])
        train_loss = loss_sum / n
        val_loss = mean_euclidean_distance(A, b, val)
        if not (np.isfinite(train_loss) and np.isfinite(val_loss)):
            raise DivergenceError(epoch)

        if val_loss < best_val - config.tolerance:
            best_val = val_loss
            best_train = train_loss
            best_A, best_b = A.copy(), b.copy()
            bad_epochs = 0
            bad_since_decay = 0
        else:
            bad_epochs += 1
            bad_since_decay += 1
            if bad_epochs >= config.patience:
                converged = True
            elif bad_since_decay >= decay_after:
                opt.lr *= 0.5
                bad_since_decay = 0
        if on_epoch is not None:
            on_epoch(EpochStats(epoch, train_loss, val_loss, opt.lr, best_val))
        if converged:
            break

    provenance: dict[str, Any] = {
        "fitter": "distance_sgd",
        "loss": "distance",
        "optimizer": "adam",
        "train_count": n,
        "seed": config.seed,
        "learning_rate": config.learning_rate,
        "batch_size": config.batch_size,
        "epochs_run": epochs_run,
    }
    fitted = LinearMap(A=best_A, b=best_b, provenance=provenance)
    return FitResult(
        map=fitted,
        train_loss=best_train,
        val_loss=best_val,
        epochs_run=epochs_run,
        converged=converged,
    )
