class DaisyError(Exception):
    pass


class FormatError(DaisyError, ValueError):
    """A graph, labels or words file is malformed or inconsistent."""


class GraphError(DaisyError, ValueError):
    """Invalid graph: self-loop, duplicate edge, id out of range, or disconnected."""


class CapExceededError(DaisyError):
    """A size guard refused to run on an input that is too large."""


class NotDaisyCubeError(DaisyError):
    """The input violates an invariant every daisy cube satisfies."""
