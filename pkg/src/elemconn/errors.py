"""Exception hierarchy shared by every module."""


class ElemConnError(Exception):
    """Base class for library errors."""


class NoPackingError(ElemConnError):
    """The terminals cannot be connected at all in the given graph."""


class InfeasibleError(ElemConnError):
    """A connectivity requirement cannot be met by any subgraph."""


class InternalConsistencyError(ElemConnError):
    """A guarantee the algorithms rely on was violated; indicates a bug."""


class ThresholdViolation(ElemConnError):
    """No terminal pair carries enough parallel edges.

    Raised by the planar packers when the input is not planar or its
    terminals are less connected than declared. ``instance`` holds the
    intermediate multigraph on which the search failed.
    """

    def __init__(self, message, instance=None, multiplicity=0, required=0):
        super().__init__(message)
        self.instance = instance
        self.multiplicity = multiplicity
        self.required = required


class SizeLimitError(ElemConnError):
    """A brute-force oracle was called on an instance above its size cap."""


class ParseError(ElemConnError):
    def __init__(self, line_no, message):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no
