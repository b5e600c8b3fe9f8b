"""
This module contains the exceptions raised by khtight.
"""


class KhTightError(Exception):
    """
    Base class of all errors raised by khtight.
    """


class BraidParseError(KhTightError, ValueError):
    """
    Raised if a braid word (or a braid family template) can not be parsed.
    """


class DiagramError(KhTightError, ValueError):
    """
    Raised if a link diagram is malformed or does not meet the requirements of an
    operation -- e.g. a disconnected diagram passed to the Goeritz construction.
    """


class InvariantError(KhTightError):
    """
    Raised if an invariant can not be computed for mathematical reasons --
    e.g. a singular linking matrix, a chain that is not a cycle, or a link where a knot is
    required.
    """


class ResourceLimitError(KhTightError):
    """
    Raised if a computation would exceed the configured resource limits.
    """


__all__ = ["KhTightError", "BraidParseError", "DiagramError", "InvariantError",
           "ResourceLimitError"]
