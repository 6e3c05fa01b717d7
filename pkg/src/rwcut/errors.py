"""Exception types shared across the package."""


class RwCutError(Exception):
    """Base class for all rwcut errors."""


class ParseError(RwCutError, ValueError):
    """Malformed edge-list or partition input."""


class InvalidInputError(RwCutError, ValueError):
    """An argument violates an operation precondition."""


class InvalidParamsError(RwCutError, ValueError):
    """Algorithm parameters outside their valid region."""


class DegenerateInputError(RwCutError, ValueError):
    """Input is structurally degenerate (e.g. an all-zero score vector)."""


class ResourceError(RwCutError, RuntimeError):
    """A computation would exceed its configured size or step budget."""
