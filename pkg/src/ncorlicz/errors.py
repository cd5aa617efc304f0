"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Input violates a documented precondition (shape, positivity, domain)."""


class ConvergenceError(RuntimeError):
    """An iteration hit its cap before reaching the requested tolerance."""


class InputError(ValueError):
    """A file or JSON document could not be parsed into a valid object."""
