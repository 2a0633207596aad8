"""Exception hierarchy for domain and numerical failures."""


class AlphaProcError(Exception):
    """Base class for all library errors."""


class NonFiniteError(AlphaProcError):
    """Input contains NaN or infinite entries."""


class ConvergenceFailureError(AlphaProcError):
    """The symmetric eigensolver failed to converge."""


class SingularBaseError(AlphaProcError):
    """Operation requires a strictly positive definite matrix."""


class NotPsdError(AlphaProcError):
    """Matrix has an eigenvalue below the negative clamping tolerance."""


class DomainError(AlphaProcError):
    """Scalar function or parameter outside its admissible domain."""


class DimensionError(AlphaProcError):
    """Mismatched or invalid dimensions."""


class NumericalInconsistencyError(AlphaProcError):
    """Roundoff exceeded the documented clamping threshold."""


class ComplexSpectrumError(AlphaProcError):
    """Eigenvalues expected to be real carry a non-negligible imaginary part."""


class UnsupportedKernelError(AlphaProcError):
    """Kernel has no explicit finite-dimensional feature map."""


class NonSpdIntermediateError(AlphaProcError):
    """An intermediate matrix expected to be SPD failed the positivity check."""
