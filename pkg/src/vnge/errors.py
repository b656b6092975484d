"""Exception hierarchy.

Every domain error carries the process exit code the CLI should use for it.
"""


class VngeError(Exception):
    exit_code = 3


class EdgelessGraph(VngeError):
    """Total edge weight is zero, so trace normalization is undefined."""


class NegativeResultingWeight(VngeError):
    pass


class TotalWeightNonPositive(VngeError):
    pass


class DegenerateSpectrum(VngeError):
    """Largest normalized eigenvalue (or its strength proxy) is 1.

    The entropy of such a graph is trivially 0.
    """


class ConvergenceFailure(VngeError):
    pass


class MatrixTooLarge(VngeError):
    exit_code = 4


class InvalidSpec(VngeError):
    pass


class SeriesTooShort(VngeError):
    pass


class DegenerateSeries(VngeError):
    pass


class ParseError(VngeError):
    exit_code = 2

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class EmptyEdgeList(ParseError, EdgelessGraph):
    exit_code = 2


class StreamStepError(VngeError):
    """A change-stream step could not be applied; wraps the original error."""

    def __init__(self, step, cause):
        self.step = step
        self.cause = cause
        self.exit_code = getattr(cause, "exit_code", 3)
        super().__init__(f"step {step}: {cause}")
