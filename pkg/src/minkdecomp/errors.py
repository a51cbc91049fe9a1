"""Exception types shared across the package."""


class MinkdecompError(Exception):
    """Base class for all package-specific errors."""


class InvalidInputError(MinkdecompError):
    """Malformed polytope data or out-of-range constructor parameters."""


class GuardExceededError(MinkdecompError):
    """A resource guard tripped before the computation was attempted."""


class DegenerateInputError(InvalidInputError):
    """Vertex set does not affinely span the ambient dimension."""


class RuleNotApplicableError(MinkdecompError):
    """A certificate combinator was invoked outside its precondition."""


class EngineInconsistencyError(MinkdecompError):
    """Certificate engine and oracle disagree; indicates an internal bug."""
