"""Exception hierarchy shared by every module."""

from __future__ import annotations


class CospectraError(Exception):
    """Base class for all library errors."""


class InputError(CospectraError, ValueError):
    """Caller supplied an argument outside an operation's precondition."""


class ParseError(InputError):
    """Malformed textual input (graph6, edge list, formula).

    ``offset`` is the 0-based byte/character position of the problem.
    """

    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at offset {offset})"
        super().__init__(message)


class ResourceError(CospectraError):
    """A configured budget (tuples, AST nodes, census size) would be exceeded."""


class InvariantError(CospectraError, AssertionError):
    """An internal mathematical invariant failed; indicates a bug, not bad input."""


class NumericalError(CospectraError, ArithmeticError):
    """Iterative floating-point routine did not converge."""
