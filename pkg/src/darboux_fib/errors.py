"""Exception hierarchy shared by every module."""


class DarbouxFibError(Exception):
    """Base class for all errors raised by darboux_fib."""


class OutOfRange(DarbouxFibError, ValueError):
    """An integer argument is outside the exactly representable range."""


class DomainError(DarbouxFibError, ValueError):
    """Argument outside a function's domain (negative radicand, zero divisor, ...)."""


class SingularPoint(DomainError):
    """Removable or essential singularity of a closed form, e.g. coth at 0."""


class PoleEncountered(DomainError):
    """A deformation denominator vanishes or changes sign."""


class QuadratureFailure(DarbouxFibError, ArithmeticError):
    """Adaptive quadrature could not reach the requested tolerance."""


class EvaluationFailure(DarbouxFibError, ArithmeticError):
    """A function raised inside a finite-difference stencil."""


class LengthMismatch(DarbouxFibError, ValueError):
    """Paired sequences have different lengths."""
