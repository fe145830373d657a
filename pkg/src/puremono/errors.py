"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class CapacityError(ValueError):
    """An input exceeds the configured size contract (integer width, segment memory)."""


class ReducibleError(DomainError):
    """X^n - m is reducible over Q, so there is no pure field of degree n."""


class NotMonogenicError(DomainError):
    """Raised when an operation requires Z[alpha] to be the maximal order."""
