"""Exception types shared across the package."""


class DomainError(ValueError):
    """Raised when an argument lies outside an operation's domain."""


class CertificateError(AssertionError):
    """Raised when a computed certificate contradicts a proven bound."""
