class GraphInputError(ValueError):
    """Malformed, disconnected or otherwise unusable input."""


class UnsupportedGraphError(GraphInputError):
    """The graph is valid but not a star, tree or cactus."""


class InvariantViolation(RuntimeError):
    """An internal invariant of a construction did not hold.

    Seeing this means a bug, not bad input.
    """
