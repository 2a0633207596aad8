"""Kernel machinery and Gram-matrix formulas for covariance-operator distances.

For datasets X (m points) and Y (n points) mapped into the RKHS of a kernel
K, the empirical covariance operators are C_X = (1/m) F(X) J_m F(X)* with
J_m the centering matrix.  All distances between these operators reduce to
spectral computations on the centered Gram matrices

    aa = (1/m) J_m K[X] J_m,   bb = (1/n) J_n K[Y] J_n,
    ab = (1/sqrt(mn)) J_m K[X, Y] J_n,

because nonzero eigenvalues transfer between an operator product and its
Gram-side counterpart.  The regularized distance of the family needs one
3m x 3m block matrix whose square-root trace is taken through its
eigenvalues (clamping real parts at zero and rejecting any eigenvalue with
a non-negligible imaginary part); the other square-root traces admit a
symmetric similar form and go through singular values.  No non-symmetric
matrix square root is ever formed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations_with_replacement

import numpy as np

from .exceptions import (
    ComplexSpectrumError,
    DimensionError,
    DomainError,
    NonFiniteError,
    NumericalInconsistencyError,
    UnsupportedKernelError,
)
from .linalg import (
    RANK_TOL_FACTOR,
    SpdMatrix,
    as_alpha,
    psd_spectral_power,
)
from .metrics import NEG_TRACE_RTOL

# Imaginary parts above SPECTRUM_TOL * (1 + |eigenvalue|) abort the
# computation instead of being silently discarded.
SPECTRUM_TOL = 1e-8

FEATURE_DIM_LIMIT = 10_000


@dataclass(frozen=True)
class KernelSpec:
    """Positive definite kernel: linear, polynomial, or Gaussian RBF.

    The RBF convention is K(x, y) = exp(-|x - y|^2 / (2 sigma^2)).
    """

    kind: str
    degree: int = 1
    offset: float = 0.0
    sigma: float = 1.0

    def __post_init__(self):
        if self.kind not in ("linear", "poly", "rbf"):
            raise DomainError(f"unknown kernel kind {self.kind!r}")
        if self.kind == "poly":
            if self.degree < 1 or int(self.degree) != self.degree:
                raise DomainError("polynomial degree must be an integer >= 1")
            if self.offset < 0:
                raise DomainError("polynomial offset must be >= 0")
        if self.kind == "rbf" and self.sigma <= 0:
            raise DomainError("RBF bandwidth must be > 0")

    @classmethod
    def linear(cls) -> "KernelSpec":
        return cls("linear")

    @classmethod
    def polynomial(cls, degree: int, offset: float = 0.0) -> "KernelSpec":
        return cls("poly", degree=degree, offset=offset)

    @classmethod
    def gaussian_rbf(cls, sigma: float) -> "KernelSpec":
        return cls("rbf", sigma=sigma)

    @classmethod
    def parse(cls, text: str) -> "KernelSpec":
        """Parse 'linear', 'poly:d=2,c=1' or 'rbf:sigma=0.5'."""
        text = text.strip()
        if text == "linear":
            return cls.linear()
        head, sep, tail = text.partition(":")
        params = {}
        if sep:
            for item in tail.split(","):
                if not item:
                    continue
                key, eq, value = item.partition("=")
                if not eq:
                    raise DomainError(f"malformed kernel parameter {item!r}")
                params[key.strip()] = value.strip()
        try:
            if head == "poly":
                return cls.polynomial(
                    degree=int(params.get("d", 2)), offset=float(params.get("c", 0.0))
                )
            if head == "rbf":
                return cls.gaussian_rbf(sigma=float(params.get("sigma", 1.0)))
        except ValueError as exc:
            raise DomainError(f"malformed kernel spec {text!r}: {exc}") from exc
        raise DomainError(f"unknown kernel spec {text!r}")

    def gram(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Pointwise kernel matrix K[i, j] = K(x_i, y_j)."""
        if self.kind == "linear":
            return x @ y.T
        if self.kind == "poly":
            return (x @ y.T + self.offset) ** self.degree
        sq = (
            np.sum(x**2, axis=1)[:, None]
            + np.sum(y**2, axis=1)[None, :]
            - 2.0 * (x @ y.T)
        )
        return np.exp(-np.maximum(sq, 0.0) / (2.0 * self.sigma**2))


@dataclass(frozen=True)
class Dataset:
    """Sample matrix, one row per observation; at least two samples."""

    points: np.ndarray

    @classmethod
    def from_array(cls, arr) -> "Dataset":
        a = np.atleast_2d(np.asarray(arr, dtype=float))
        if not np.all(np.isfinite(a)):
            raise NonFiniteError("dataset contains NaN or infinite entries")
        if a.shape[0] < 2:
            raise DimensionError("dataset needs at least two samples")
        a = a.copy()
        a.setflags(write=False)
        return cls(a)

    @property
    def m(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]


@dataclass(frozen=True)
class GramBundle:
    """Raw Gram matrices K[X], K[Y], K[X, Y]."""

    kxx: np.ndarray
    kyy: np.ndarray
    kxy: np.ndarray

    @property
    def m(self) -> int:
        return self.kxx.shape[0]

    @property
    def n(self) -> int:
        return self.kyy.shape[0]


@dataclass(frozen=True)
class CenteredGram:
    """Doubly centered, sample-scaled Gram blocks aa, bb, ab."""

    aa: np.ndarray
    bb: np.ndarray
    ab: np.ndarray


def centering(m: int) -> np.ndarray:
    """J_m = I - (1/m) 1 1^T."""
    return np.eye(m) - np.full((m, m), 1.0 / m)


def gram_bundle(x: Dataset, y: Dataset, kernel: KernelSpec) -> GramBundle:
    """Evaluate the three Gram matrices; the diagonal blocks are symmetrized."""
    if x.dim != y.dim:
        raise DimensionError(f"sample dimensions differ: {x.dim} vs {y.dim}")
    kxx = kernel.gram(x.points, x.points)
    kyy = kernel.gram(y.points, y.points)
    kxy = kernel.gram(x.points, y.points)
    return GramBundle((kxx + kxx.T) / 2.0, (kyy + kyy.T) / 2.0, kxy)


def centered_gram(gb: GramBundle) -> CenteredGram:
    jm = centering(gb.m)
    jn = centering(gb.n)
    aa = jm @ gb.kxx @ jm / gb.m
    bb = jn @ gb.kyy @ jn / gb.n
    ab = jm @ gb.kxy @ jn / math.sqrt(gb.m * gb.n)
    return CenteredGram((aa + aa.T) / 2.0, (bb + bb.T) / 2.0, ab)


def mean_discrepancy_squared(gb: GramBundle) -> float:
    """Squared RKHS distance between the empirical mean embeddings.

    (1/m^2) 1'K[X]1 + (1/n^2) 1'K[Y]1 - (2/mn) 1'K[X,Y]1, clamped at zero.
    """
    value = (
        float(np.sum(gb.kxx)) / gb.m**2
        + float(np.sum(gb.kyy)) / gb.n**2
        - 2.0 * float(np.sum(gb.kxy)) / (gb.m * gb.n)
    )
    return max(value, 0.0)


def _psd_eigh(mat: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    w, v = np.linalg.eigh((mat + mat.T) / 2.0)
    return np.maximum(w, 0.0), v


def _real_eigenvalues(mat: np.ndarray, context: str) -> np.ndarray:
    """Eigenvalues of a matrix similar to a PSD one; imaginary parts must vanish.

    The tolerance scales with the spectral radius: near-zero eigenvalues of a
    badly scaled non-normal matrix come back with imaginary parts of order
    |M| * eps, which are roundoff artifacts, not genuine complex spectrum.
    """
    w = np.linalg.eigvals(mat)
    scale = max(1.0, float(np.max(np.abs(w))) if w.size else 0.0)
    bad = np.abs(w.imag) > SPECTRUM_TOL * np.maximum(1.0 + np.abs(w), scale)
    if np.any(bad):
        worst = w[bad][np.argmax(np.abs(w[bad].imag))]
        raise ComplexSpectrumError(
            f"{context}: eigenvalue {worst} has non-negligible imaginary part"
        )
    return w.real


def _h_spectral(w: np.ndarray, v: np.ndarray, alpha: float, gamma: float) -> np.ndarray:
    """h_alpha(E / gamma) for PSD E given by its spectrum (w, v).

    Acts as ((1 + l/g)^alpha - 1) / (l/g) on eigenvalues above rank_tol and
    as zero on the kernel of E.
    """
    scaled = w / gamma
    g = np.zeros_like(scaled)
    if scaled[-1] > 0.0:
        nz = scaled > RANK_TOL_FACTOR * scaled[-1]
        g[nz] = np.expm1(alpha * np.log1p(scaled[nz])) / scaled[nz]
    return (v * g) @ v.T


def _ridge_power_minus_identity(
    w: np.ndarray, v: np.ndarray, alpha: float, gamma: float
) -> np.ndarray:
    """(I + E/gamma)^alpha - I from the spectrum of PSD E."""
    vals = np.expm1(alpha * np.log1p(w / gamma))
    return (v * vals) @ v.T


def _block_sqrt_trace(cg: CenteredGram, alpha: float, gamma: float) -> float:
    """tr[(I + M)^(1/2) - I] for the 3m x 3m block matrix M of the
    regularized Gram formula (rows two and three identical)."""
    wa, va = _psd_eigh(cg.aa)
    wb, vb = _psd_eigh(cg.bb)
    ab = cg.ab
    two_alpha = 2.0 * alpha

    c11 = _ridge_power_minus_identity(wa, va, two_alpha, gamma)
    c22 = _ridge_power_minus_identity(wb, vb, two_alpha, gamma)
    h_bb = _h_spectral(wb, vb, two_alpha, gamma)
    h_aa = _h_spectral(wa, va, two_alpha, gamma)
    c12 = (ab @ h_bb) / gamma
    c21 = (ab.T @ h_aa) / gamma
    c13 = c11 @ c12
    c23 = c21 @ c12
    m_block = np.block([[c11, c12, c13], [c21, c22, c23], [c21, c22, c23]])

    mu = _real_eigenvalues(m_block, "regularized block matrix")
    return float(np.sum(np.sqrt(np.maximum(1.0 + mu, 0.0)) - 1.0))


def _clamped_sqrt(arg: float, scale: float) -> float:
    if arg < 0.0:
        if -arg >= NEG_TRACE_RTOL * max(scale, 1e-300):
            raise NumericalInconsistencyError(
                f"squared distance {arg:.6e} negative beyond the roundoff clamp"
            )
        arg = 0.0
    return math.sqrt(arg)


def rkhs_alpha_distance(
    x: Dataset, y: Dataset, kernel: KernelSpec, alpha: float, gamma: float
) -> float:
    """Family distance between regularized covariance operators C_X + g*I, C_Y + g*I.

    Closed form via Gram matrices; both datasets must have the same number
    of samples.  |alpha| below the switch tolerance routes to the analytic
    log-limit (the Log-Hilbert-Schmidt distance of the regularized
    operators).
    """
    if x.m != y.m:
        raise DimensionError(
            f"regularized distance needs equal sample counts, got {x.m} and {y.m}"
        )
    cg = centered_gram(gram_bundle(x, y, kernel))
    return _regularized_from_blocks(cg, alpha, gamma)


def _regularized_from_blocks(cg: CenteredGram, alpha, gamma: float) -> float:
    if gamma <= 0.0:
        raise DomainError(f"gamma must be positive, got {gamma}")
    al = as_alpha(alpha)
    if al.is_log_limit:
        return _log_limit_distance(cg, gamma)

    wa, _ = _psd_eigh(cg.aa)
    wb, _ = _psd_eigh(cg.bb)
    two_alpha = 2.0 * al.value
    # tr[(E + g I)^2a - g^2a I] summed over the Gram-side spectrum; zero
    # eigenvalues contribute exactly zero, matching the operator-side trace
    g2a = gamma**two_alpha
    term_a = float(np.sum((wa + gamma) ** two_alpha - g2a))
    term_b = float(np.sum((wb + gamma) ** two_alpha - g2a))
    term_cross = 2.0 * g2a * _block_sqrt_trace(cg, al.value, gamma)
    arg = term_a + term_b - term_cross
    return _clamped_sqrt(arg, abs(term_a) + abs(term_b)) / abs(al.value)


def _log_limit_distance(cg: CenteredGram, gamma: float) -> float:
    """Log-limit distance |log(C_X + gI) - log(C_Y + gI)| via Gram matrices.

    The squared norms are sums of log(1 + l/g)^2 over the centered Gram
    spectra, and the cross term tr[log(I + C_X/g) log(I + C_Y/g)] transfers
    to tr[f(aa) ab f(bb) ab'] with f(l) = log(1 + l/g)/l on the nonzero
    spectrum.
    """
    wa, va = _psd_eigh(cg.aa)
    wb, vb = _psd_eigh(cg.bb)
    norm_a = float(np.sum(np.log1p(wa / gamma) ** 2))
    norm_b = float(np.sum(np.log1p(wb / gamma) ** 2))

    def log_factor(w, v):
        g = np.zeros_like(w)
        if w[-1] > 0.0:
            nz = w > RANK_TOL_FACTOR * w[-1]
            g[nz] = np.log1p(w[nz] / gamma) / w[nz]
        return (v * g) @ v.T

    fa = log_factor(wa, va)
    fb = log_factor(wb, vb)
    cross = float(np.trace(fa @ cg.ab @ fb @ cg.ab.T))
    return _clamped_sqrt(norm_a + norm_b - 2.0 * cross, norm_a + norm_b)


def rkhs_alpha_distance_unregularized(
    x: Dataset, y: Dataset, kernel: KernelSpec, alpha: float
) -> float:
    """Family distance between the covariance operators themselves, alpha >= 1/2.

    (1/a) tr[aa^2a + bb^2a - 2 (ba aa^(2a-1) ab bb^(2a-1))^(1/2)]^(1/2) with
    spectral powers restricted to the range, so aa^0 is the range projection
    (needed at alpha = 1/2).  Sample counts may differ.
    """
    if alpha < 0.5:
        raise DomainError(f"unregularized formula needs alpha >= 1/2, got {alpha}")
    cg = centered_gram(gram_bundle(x, y, kernel))
    wa, _ = _psd_eigh(cg.aa)
    wb, _ = _psd_eigh(cg.bb)
    two_alpha = 2.0 * alpha
    term_a = float(np.sum(wa**two_alpha))
    term_b = float(np.sum(wb**two_alpha))
    # The cross matrix ba aa^(2a-1) ab bb^(2a-1) shares its spectrum with
    # T'T for T = aa^(a-1/2) ab bb^(a-1/2), so its square-root trace is the
    # nuclear norm of T; singular values keep the rank-deficient spectrum
    # exact where a general eigensolve would scatter the zero eigenvalues.
    half_a = psd_spectral_power(cg.aa, alpha - 0.5)
    half_b = psd_spectral_power(cg.bb, alpha - 0.5)
    t = half_a @ cg.ab @ half_b
    term_cross = 2.0 * float(np.sum(np.linalg.svd(t, compute_uv=False)))
    arg = term_a + term_b - term_cross
    return _clamped_sqrt(arg, abs(term_a) + abs(term_b)) / alpha


def rkhs_gaussian_distance(
    x: Dataset, y: Dataset, kernel: KernelSpec, alpha, gamma: float = 0.0
) -> float:
    """Family distance between the Gaussians N(mean_X, C_X) and N(mean_Y, C_Y) in the RKHS.

    sqrt(mean discrepancy squared + d_cov^2 / 4).  For alpha >= 1/2 the
    covariance part is the unregularized pure-Gram formula and gamma is not
    needed; otherwise (including the log-limit) gamma > 0 selects the
    regularized covariance distance.
    """
    al = as_alpha(alpha)
    gb = gram_bundle(x, y, kernel)
    mdd = mean_discrepancy_squared(gb)
    if not al.is_log_limit and al.value >= 0.5:
        d_cov = rkhs_alpha_distance_unregularized(x, y, kernel, al.value)
    else:
        if gamma <= 0.0:
            raise DomainError("alpha below 1/2 (or log-limit) needs a positive gamma")
        if x.m != y.m:
            raise DimensionError(
                "alpha below 1/2 needs equal sample counts "
                f"(regularized path), got {x.m} and {y.m}"
            )
        d_cov = _regularized_from_blocks(centered_gram(gb), al, gamma)
    return math.sqrt(mdd + 0.25 * d_cov**2)


def rkhs_wasserstein(x: Dataset, y: Dataset, kernel: KernelSpec) -> float:
    """L2-Wasserstein distance between the empirical RKHS Gaussians.

    Supports different sample counts:

        d^2 = mean discrepancy squared
            + (1/m) tr(J K[X] J) + (1/n) tr(J K[Y] J)
            - (2/sqrt(mn)) tr[(J_n K[Y,X] J_m K[X,Y] J_n)^(1/2)].
    """
    gb = gram_bundle(x, y, kernel)
    mdd = mean_discrepancy_squared(gb)
    jm = centering(gb.m)
    jn = centering(gb.n)
    trace_x = float(np.trace(jm @ gb.kxx @ jm)) / gb.m
    trace_y = float(np.trace(jn @ gb.kyy @ jn)) / gb.n
    # tr[(J_n K[Y,X] J_m K[X,Y] J_n)^(1/2)] is the nuclear norm of
    # J_m K[X,Y] J_n: the product is (J_m K[X,Y] J_n)'(J_m K[X,Y] J_n), so
    # its eigenvalues are squared singular values, clamped at zero for free.
    cross = float(np.sum(np.linalg.svd(jm @ gb.kxy @ jn, compute_uv=False)))
    arg = mdd + trace_x + trace_y - 2.0 * cross / math.sqrt(gb.m * gb.n)
    return _clamped_sqrt(arg, trace_x + trace_y)


def _polynomial_features(points: np.ndarray, degree: int, offset: float) -> np.ndarray:
    """Explicit multinomial feature map of (x'y + c)^d.

    Slot 0 carries sqrt(c); each multi-index (k0, ..., kp) with sum d maps to
    sqrt(d!/(k0! ... kp!)) * c^(k0/2) * prod x_i^(k_i).
    """
    m, p = points.shape
    slots = p + 1 if offset > 0 else p
    columns = []
    for combo in combinations_with_replacement(range(slots), degree):
        counts = np.bincount(combo, minlength=slots)
        coeff = math.factorial(degree)
        for c in counts:
            coeff //= math.factorial(int(c))
        if offset > 0:
            k0, ks = counts[0], counts[1:]
            weight = math.sqrt(coeff * offset**k0)
        else:
            ks = counts
            weight = math.sqrt(coeff)
        feature = np.full(m, weight)
        for i, k in enumerate(ks):
            if k:
                feature = feature * points[:, i] ** int(k)
        columns.append(feature)
        if len(columns) > FEATURE_DIM_LIMIT:
            raise UnsupportedKernelError(
                f"feature dimension exceeds {FEATURE_DIM_LIMIT}"
            )
    return np.column_stack(columns)


def explicit_feature_covariance(
    x: Dataset, kernel: KernelSpec
) -> tuple[np.ndarray, SpdMatrix]:
    """Empirical mean and covariance in the explicit finite feature space.

    Test oracle for the Gram formulas: only linear and polynomial kernels
    have a finite feature map.
    """
    if kernel.kind == "linear":
        features = x.points
    elif kernel.kind == "poly":
        features = _polynomial_features(x.points, kernel.degree, kernel.offset)
    else:
        raise UnsupportedKernelError("Gaussian RBF has no finite feature map")
    mean = features.mean(axis=0)
    centered = features - mean
    cov = centered.T @ centered / x.m
    return mean, SpdMatrix.from_array(cov)
