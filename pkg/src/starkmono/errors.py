"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the domain of an operation."""


class NumericalError(ArithmeticError):
    """A numerical evaluation produced a non-finite or unresolvable result."""


class StringSingularityError(DomainError):
    """Evaluation requested on the logarithmic phase singularity (z-axis)."""

    def __init__(self, axis: str, message: str):
        super().__init__(message)
        self.axis = axis


class ValidityError(NumericalError):
    """A simulation left its regime of validity (e.g. became relativistic)."""


class ResolutionError(NumericalError):
    """Sampling is too coarse to resolve a geometric event."""
