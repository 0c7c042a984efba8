"""Exception types shared across the package."""

from __future__ import annotations


class GdmError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(GdmError):
    """An argument violates a documented precondition."""


class FormatError(GdmError):
    """A file or string does not match its declared format."""


class GroupMismatchError(GdmError):
    """Arithmetic was attempted between elements of different groups."""


class NotInvertible(GdmError):
    """A scalar has no inverse modulo the group order."""


class NotExists(GdmError):
    """A requested combinatorial object provably does not exist.

    The message names the violated existence predicate.
    """
