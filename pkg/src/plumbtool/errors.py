"""Exception hierarchy shared by every plumbtool module."""


class PlumbingError(Exception):
    """Base class for all library errors."""


class GraphError(PlumbingError):
    pass


class CycleError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class EmptyGraphError(GraphError):
    pass


class DisconnectedError(GraphError):
    pass


class GraphFormatError(GraphError):
    """Raised when a graph file cannot be parsed."""


class IllegalMoveError(PlumbingError):
    pass


class InvalidSiteError(PlumbingError):
    pass


class DomainError(PlumbingError, ValueError):
    pass


class NotStarError(PlumbingError):
    pass


class NotReducedError(PlumbingError):
    pass


class InternalError(PlumbingError):
    """A construction violated its own postcondition (a bug, not bad input)."""


class TranscriptionError(PlumbingError):
    """A family template produced a graph that fails its shape checks."""
