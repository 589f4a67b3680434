"""Exception hierarchy shared by every module."""


class SuperDomError(Exception):
    """Base class for library errors."""


class GraphError(SuperDomError, ValueError):
    """Invalid graph construction or an operation applied to an unsuitable graph."""


class EdgeListParseError(GraphError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NotATreeError(GraphError):
    pass


class UndefinedParameterError(SuperDomError, ValueError):
    """Raised when a domination parameter is undefined (isolated vertices)."""


class InstanceTooLargeError(SuperDomError, ValueError):
    pass


class PreconditionError(SuperDomError, ValueError):
    pass


class TheoremViolation(SuperDomError):
    """A claimed property failed on a concrete instance.

    The harness catches these and records them as violations; the instance
    that triggered it is attached so the failure can be replayed.
    """

    def __init__(self, message, graph=None):
        super().__init__(message)
        self.graph = graph
