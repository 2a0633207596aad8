"""Alpha Procrustes distances on SPD matrices, Gaussian measures, and RKHS
covariance operators, with the associated Riemannian metric and geodesics."""

from .exceptions import (
    AlphaProcError,
    ComplexSpectrumError,
    ConvergenceFailureError,
    DimensionError,
    DomainError,
    NonFiniteError,
    NonSpdIntermediateError,
    NotPsdError,
    NumericalInconsistencyError,
    SingularBaseError,
    UnsupportedKernelError,
)
from .gaussian import (
    EUCLIDEAN_MEAN,
    GaussianMeasure,
    MeanMetricSpec,
    gaussian_alpha_distance,
    gaussian_alpha_distance_regularized,
    wasserstein_gaussian,
)
from .geometry import (
    GeodesicCurve,
    TangentVector,
    geodesic_eval,
    geodesic_length_numeric,
    metric_inner,
    solve_general_lyapunov,
)
from .linalg import (
    ALPHA_SWITCH_TOL,
    AlphaParam,
    EigenDecomposition,
    SpdMatrix,
    SymMatrix,
    as_alpha,
    h_alpha,
    loewner_apply,
    psd_spectral_power,
    psd_sqrt,
    spd_log,
    spd_power,
    sym_eigendecompose,
    sym_exp,
    trace_sqrt_triple,
)
from .metrics import (
    DistanceResult,
    alpha_procrustes,
    alpha_procrustes_regularized,
    bures_wasserstein,
    log_euclidean,
    pairwise_distances,
    power_euclidean,
    procrustes_bruteforce_2x2,
)
from .rkhs import (
    CenteredGram,
    Dataset,
    GramBundle,
    KernelSpec,
    centered_gram,
    centering,
    explicit_feature_covariance,
    gram_bundle,
    mean_discrepancy_squared,
    rkhs_alpha_distance,
    rkhs_alpha_distance_unregularized,
    rkhs_gaussian_distance,
    rkhs_wasserstein,
)

__version__ = "0.1.0"

__all__ = [
    "ALPHA_SWITCH_TOL",
    "AlphaParam",
    "AlphaProcError",
    "CenteredGram",
    "ComplexSpectrumError",
    "ConvergenceFailureError",
    "Dataset",
    "DimensionError",
    "DistanceResult",
    "DomainError",
    "EUCLIDEAN_MEAN",
    "EigenDecomposition",
    "GaussianMeasure",
    "GeodesicCurve",
    "GramBundle",
    "KernelSpec",
    "MeanMetricSpec",
    "NonFiniteError",
    "NonSpdIntermediateError",
    "NotPsdError",
    "NumericalInconsistencyError",
    "SingularBaseError",
    "SpdMatrix",
    "SymMatrix",
    "TangentVector",
    "UnsupportedKernelError",
    "alpha_procrustes",
    "alpha_procrustes_regularized",
    "as_alpha",
    "bures_wasserstein",
    "centered_gram",
    "centering",
    "explicit_feature_covariance",
    "gaussian_alpha_distance",
    "gaussian_alpha_distance_regularized",
    "geodesic_eval",
    "geodesic_length_numeric",
    "gram_bundle",
    "h_alpha",
    "loewner_apply",
    "log_euclidean",
    "mean_discrepancy_squared",
    "metric_inner",
    "pairwise_distances",
    "power_euclidean",
    "procrustes_bruteforce_2x2",
    "psd_spectral_power",
    "psd_sqrt",
    "rkhs_alpha_distance",
    "rkhs_alpha_distance_unregularized",
    "rkhs_gaussian_distance",
    "rkhs_wasserstein",
    "solve_general_lyapunov",
    "spd_log",
    "spd_power",
    "sym_eigendecompose",
    "sym_exp",
    "trace_sqrt_triple",
    "wasserstein_gaussian",
]
