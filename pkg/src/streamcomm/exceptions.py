"""Exception hierarchy shared by all modules."""


class StreamCommError(Exception):
    """Base class for errors raised by streamcomm."""


class WeightError(StreamCommError, ValueError):
    """Edge weight outside its domain (must be strictly positive)."""


class MissingEdgeError(StreamCommError, KeyError):
    """An operation referenced an edge that is not in the graph."""


class UnknownVertexError(StreamCommError, KeyError):
    """An operation referenced a vertex that is not in the graph."""


class UnknownCommunityError(StreamCommError, KeyError):
    """An operation referenced a community id that does not exist."""


class EmptyInputError(StreamCommError, ValueError):
    pass


class UndefinedModularityError(StreamCommError, ValueError):
    """Modularity requested on a graph without edge weight (2m == 0)."""


class OutOfOrderError(StreamCommError, ValueError):
    """Event timestamps went backwards."""


class ConfigError(StreamCommError, ValueError):
    pass


class ParseError(StreamCommError, ValueError):
    def __init__(self, lineno, message):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno
