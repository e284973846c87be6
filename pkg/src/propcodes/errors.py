"""Exception types shared across the package."""


class UsageError(ValueError):
    """Bad arguments: length mismatch, wrong field, malformed input."""


class DomainError(ArithmeticError):
    """Arithmetic outside the domain of an operation (e.g. inverting zero)."""


class ResourceError(RuntimeError):
    """A configured size ceiling would be exceeded."""


class InconsistencyError(ValueError):
    """Input data is not consistent with the claimed structure."""


class PreconditionError(ValueError):
    """A mathematical hypothesis of an operation does not hold."""
