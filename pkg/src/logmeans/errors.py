"""Exception hierarchy shared by all modules."""


class SummabilityError(Exception):
    """Base class for precondition violations raised by this package."""


class DomainError(SummabilityError, ValueError):
    """An argument lies outside the domain of the operation."""


class IndexRangeError(SummabilityError, IndexError):
    """An index exceeds the available prefix or coefficient table."""


class ModeError(SummabilityError, TypeError):
    """Exact and floating scalars were mixed, or an exact value is unavailable."""


class NonInvertibleSeriesError(DomainError):
    """The constant term of a power series is zero."""


class SystemMismatchError(SummabilityError, ValueError):
    """A trigonometric operation received a Walsh function or vice versa."""
