"""Parametrized distances between Gaussian measures on Euclidean space.

Every member combines a mean metric with the matrix family on covariances:

    D^2 = d_mean(m1, m2)^2 + d_cov(C1, C2)^2 / 4

where d_cov is the Alpha Procrustes distance (optionally ridge-regularized).
At alpha = 1/2 with the Euclidean mean metric this is the L2-Wasserstein
distance between the Gaussians.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .exceptions import DimensionError, DomainError, NonFiniteError
from .linalg import SpdMatrix, as_alpha
from .metrics import (
    alpha_procrustes,
    alpha_procrustes_regularized,
    bures_wasserstein,
)


@dataclass(frozen=True)
class GaussianMeasure:
    """Mean vector plus PSD covariance."""

    mean: np.ndarray
    covariance: SpdMatrix

    @classmethod
    def from_arrays(cls, mean, covariance, strict: bool = False) -> "GaussianMeasure":
        m = np.atleast_1d(np.asarray(mean, dtype=float)).ravel()
        if not np.all(np.isfinite(m)):
            raise NonFiniteError("mean contains NaN or infinite entries")
        cov = (
            covariance
            if isinstance(covariance, SpdMatrix)
            else SpdMatrix.from_array(covariance, strict=strict)
        )
        if m.shape[0] != cov.n:
            raise DimensionError(
                f"mean has length {m.shape[0]} but covariance is {cov.n}x{cov.n}"
            )
        m.setflags(write=False)
        return cls(m, cov)

    @property
    def dim(self) -> int:
        return self.mean.shape[0]


@dataclass(frozen=True)
class MeanMetricSpec:
    """Choice of metric on the mean vectors.

    Euclidean by default; ``weights`` selects a diagonally weighted
    Euclidean metric, and ``custom`` injects an arbitrary metric callable.
    """

    weights: Optional[np.ndarray] = None
    custom: Optional[Callable[[np.ndarray, np.ndarray], float]] = None

    def __post_init__(self):
        if self.weights is not None:
            w = np.asarray(self.weights, dtype=float).ravel()
            if not np.all(w > 0):
                raise DomainError("mean-metric weights must be strictly positive")
            w.setflags(write=False)
            object.__setattr__(self, "weights", w)

    def distance(self, m1: np.ndarray, m2: np.ndarray) -> float:
        if self.custom is not None:
            return float(self.custom(m1, m2))
        diff = m1 - m2
        if self.weights is not None:
            if self.weights.shape[0] != diff.shape[0]:
                raise DimensionError("weight vector length does not match means")
            return math.sqrt(float(np.sum(self.weights * diff**2)))
        return float(np.linalg.norm(diff))


EUCLIDEAN_MEAN = MeanMetricSpec()


def _check_pair(g1: GaussianMeasure, g2: GaussianMeasure) -> None:
    if g1.dim != g2.dim:
        raise DimensionError(f"Gaussian dimensions differ: {g1.dim} vs {g2.dim}")


def gaussian_alpha_distance(
    g1: GaussianMeasure,
    g2: GaussianMeasure,
    alpha,
    mean_metric: MeanMetricSpec = EUCLIDEAN_MEAN,
) -> float:
    """Family distance between Gaussians: sqrt(d_mean^2 + d_cov^2 / 4).

    The covariance part is the Alpha Procrustes distance, so strictly
    positive covariances are required for alpha <= 0 (including the
    log-limit); PSD is fine for alpha > 0.
    """
    _check_pair(g1, g2)
    d_mean = mean_metric.distance(g1.mean, g2.mean)
    d_cov = alpha_procrustes(g1.covariance, g2.covariance, as_alpha(alpha)).value
    return math.sqrt(d_mean**2 + 0.25 * d_cov**2)


def wasserstein_gaussian(g1: GaussianMeasure, g2: GaussianMeasure) -> float:
    """L2-Wasserstein distance sqrt(|m1 - m2|^2 + d_BW(C1, C2)^2)."""
    _check_pair(g1, g2)
    d_mean = float(np.linalg.norm(g1.mean - g2.mean))
    d_bw = bures_wasserstein(g1.covariance, g2.covariance).value
    return math.sqrt(d_mean**2 + d_bw**2)


def gaussian_alpha_distance_regularized(
    g1: GaussianMeasure,
    g2: GaussianMeasure,
    alpha,
    gamma: float,
    mean_metric: MeanMetricSpec = EUCLIDEAN_MEAN,
) -> float:
    """Family distance with ridge-regularized covariances C + gamma*I.

    Admissible for every alpha on PSD covariances since the ridge makes
    them strictly positive.
    """
    _check_pair(g1, g2)
    d_mean = mean_metric.distance(g1.mean, g2.mean)
    d_cov = alpha_procrustes_regularized(
        g1.covariance, g2.covariance, gamma, as_alpha(alpha)
    ).value
    return math.sqrt(d_mean**2 + 0.25 * d_cov**2)
