"""Domain errors that callers (and the CLI exit codes) discriminate on."""


class InfeasibleProfileError(ValueError):
    """The loss profile reaches probability 1, so the risk would be -inf."""


class BracketError(RuntimeError):
    """A scalar search bracket does not straddle the boundary it targets."""


class DualRangeError(ValueError):
    """A dual variable falls outside the range of the function to invert."""
