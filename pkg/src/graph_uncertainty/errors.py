"""Exception hierarchy shared by all modules.

``GraphError`` covers malformed input (bad edge lists, invalid graph
construction). ``DomainError`` covers inputs that are well formed but fall
outside a routine's mathematical preconditions (disconnected graphs, frame
sizes out of range, targets outside the feasible interval).
"""


class GraphUncertaintyError(Exception):
    """Base class for every error raised by this package."""


class GraphError(GraphUncertaintyError, ValueError):
    """Invalid graph construction or edge-list input."""


class EdgeListParseError(GraphError):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class DomainError(GraphUncertaintyError, ValueError):
    """A precondition of the requested computation does not hold."""


class DisconnectedGraphError(DomainError):
    pass


class ConvergenceError(GraphUncertaintyError, RuntimeError):
    """An iterative routine hit its iteration cap."""
