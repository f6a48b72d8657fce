"""Exception hierarchy shared by all strongconv modules."""


class StrongConvError(Exception):
    """Base class for every error raised by the package."""


class RejectedSpec(StrongConvError, ValueError):
    """An input specification violates its preconditions."""


class IndexOutOfConvention(StrongConvError, IndexError):
    """A weight index lies below the zero-extension range ``[-r, -1]``."""


class ExtensionForbidden(StrongConvError, IndexError):
    """Explicit weights were queried past their list without an extension rule."""


class ScheduleTooShort(StrongConvError, ValueError):
    """A functional that starts summing at ``k = r`` was evaluated at ``n < r``."""


class NumericOverflow(StrongConvError, ArithmeticError):
    """A non-finite intermediate appeared; ``index`` names the first offender."""

    def __init__(self, index, what="value"):
        self.index = index
        super().__init__(f"non-finite {what} at index {index}")


class NonSummableTail(StrongConvError, ValueError):
    """The variation of a non-constant periodic tail diverges."""


class GridMismatch(StrongConvError, ValueError):
    """Sample count does not match the metric's grid."""


class InvalidC(StrongConvError, ValueError):
    """The lower-bound constant leaves no admissible grid points."""


class UnknownTrace(StrongConvError, KeyError):
    """A report does not contain the requested trace."""
