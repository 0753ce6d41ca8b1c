"""Exception hierarchy shared across the package."""


class OpineqError(Exception):
    """Base class for all package errors."""


class DimensionMismatchError(OpineqError):
    """Operands have incompatible shapes."""


class ConvergenceError(OpineqError):
    """Eigensolver exhausted its sweep budget.

    Carries the remaining off-diagonal Frobenius residual.
    """

    def __init__(self, residual: float, sweeps: int):
        self.residual = residual
        self.sweeps = sweeps
        super().__init__(
            f"Jacobi sweeps did not converge after {sweeps} sweeps; "
            f"off-diagonal residual {residual:.3e}"
        )


class DomainViolationError(OpineqError):
    """A spectrum point falls outside a scalar function's domain."""

    def __init__(self, eigenvalue: float, domain, name: str = ""):
        self.eigenvalue = eigenvalue
        self.domain = domain
        super().__init__(
            f"eigenvalue {eigenvalue!r} outside domain {domain!r}"
            + (f" of {name}" if name else "")
        )


class SingularMatrixError(OpineqError):
    """Inversion or geometric mean of a matrix that is not strictly positive."""

    def __init__(self, lambda_min: float, context: str = ""):
        self.lambda_min = lambda_min
        super().__init__(
            f"matrix is not strictly positive (lambda_min = {lambda_min!r})"
            + (f" in {context}" if context else "")
        )


class MapSpecError(OpineqError):
    """Invalid positive-map specification (non-isometry, bad weights, ...)."""


class FlagProbeError(OpineqError):
    """A matrix probe contradicted a declared operator-class flag."""


class RejectedInstanceError(OpineqError):
    """Instance violates a verifier's hypotheses; the chain was not evaluated."""


class NotPositiveIntermediateError(RejectedInstanceError):
    """An intermediate chain term had to be inverted but is not positive definite."""

    def __init__(self, label: str, lambda_min: float):
        self.label = label
        self.lambda_min = lambda_min
        super().__init__(
            f"intermediate term {label!r} is not positive definite "
            f"(lambda_min = {lambda_min!r}); cannot invert"
        )


class ConfigError(OpineqError):
    """Invalid generator or campaign configuration."""
