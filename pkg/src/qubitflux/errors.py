"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Raised when circuit parameters violate a stated validity condition."""


class InvariantError(RuntimeError):
    """Raised when an internal physical invariant (norm, kappa range, ...) breaks."""
