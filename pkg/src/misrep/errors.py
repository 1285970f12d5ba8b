"""Exception types shared across the package."""


class MisrepError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(MisrepError, ValueError):
    """Two objects that must share a district count do not."""


class DomainError(MisrepError, ValueError):
    """An argument lies outside the set on which an operation is defined."""


class PreconditionError(MisrepError, ValueError):
    """A documented precondition (e.g. a majorization certificate) is not met."""


class DataError(MisrepError, ValueError):
    """Malformed election or profile data."""


class ResourceError(MisrepError, RuntimeError):
    """A computation was refused because it would be too large."""


class PropertyViolation(MisrepError, AssertionError):
    """A computed result contradicts a property the theory guarantees."""
