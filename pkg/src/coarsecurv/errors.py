"""Exception types shared across the package."""


class CoarseCurvError(Exception):
    """Base class for all package errors."""


class InvalidSpaceError(CoarseCurvError):
    """Raised when constructing a space from data that fails the metric
    or measure axioms."""


class InvalidKernelError(CoarseCurvError):
    """Raised for rows that are negative or do not sum to one."""


class InvalidRadiusError(CoarseCurvError):
    """Raised for nonpositive ball radii."""


class InvalidParameterError(CoarseCurvError):
    """Raised for out-of-range scalar parameters (e.g. t <= 0, N <= 1)."""


class EmptyNeighborhoodError(CoarseCurvError):
    """Raised when a neighbor-uniform walk finds a point with no
    unit-distance neighbors."""


class UnbalancedMarginalsError(CoarseCurvError):
    """Raised when transport marginals have different total mass."""


class NotLipschitzError(CoarseCurvError):
    """Raised when a claimed 1-Lipschitz potential violates the bound;
    carries the violating pair in args."""


class SolverError(CoarseCurvError):
    """Raised on transport solver non-convergence or a failed optimality
    certificate; message carries iteration diagnostics."""


class UndefinedPairError(CoarseCurvError):
    """Raised for curvature of a pair (x, x); the defining ratio divides
    by the distance."""


class OutOfRegimeError(CoarseCurvError):
    """Raised when an estimate is requested outside the regime where it
    is valid (e.g. the ball-shift bound needs d(x, y) < r)."""


class DomainError(CoarseCurvError):
    """Raised when a model-space function is evaluated past its domain
    cap (positive-curvature branch only)."""
