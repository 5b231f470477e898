"""Exception types shared across the package."""


class PointspecError(Exception):
    """Base class for all package errors."""


class ConstraintError(PointspecError, ValueError):
    """Input violates a documented precondition or invariant."""


class SubfamilyError(PointspecError, ValueError):
    """Operation needs a boundary-condition subfamily the point is not in."""


class RootNotFoundError(PointspecError, ValueError):
    """Parameter passed as a root of the level condition is not actually one."""


class ZeroFunctionError(PointspecError, ValueError):
    """Attempted to normalize an identically vanishing function."""


class TailBoundError(PointspecError, ValueError):
    """Requested truncation cannot meet the accuracy target."""


class ContradictionError(PointspecError, RuntimeError):
    """Numerical result contradicts a structural theorem; indicates a bug."""
