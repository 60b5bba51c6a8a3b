"""Exception hierarchy shared by every module.

The CLI maps these onto distinct exit codes, so callers should raise the most
specific class that applies.
"""


class HirzebruchError(Exception):
    """Base class for all library errors."""


class StructuralError(HirzebruchError, ValueError):
    """A class or spec does not fit the ambient surface (wrong length, missing E_x, ...)."""


class InvariantError(HirzebruchError, AssertionError):
    """An internal identity failed; signals a malformed lattice or a bug."""


class UnsupportedRangeError(HirzebruchError):
    """The requested operation is outside the range where its method is valid."""


class BoundsError(HirzebruchError):
    """Enumeration bounds are missing, not derivable, or too small for a complete answer."""
