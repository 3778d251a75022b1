"""Exception hierarchy shared across the package."""


class BundleArithError(Exception):
    """Base class for all library-specific errors."""


class DomainError(BundleArithError, ValueError):
    """An input violates an operation's precondition."""


class ConsistencyError(BundleArithError, RuntimeError):
    """A computed result contradicts a structural expectation.

    Raised when a scan or cross-check turns up data that should be
    impossible; never swallowed, because downstream computations rely on
    the structure that just failed.
    """


class FormulaNotApplicableError(BundleArithError):
    """The closed-form alpha formula does not cover the given class."""


class HorrocksUndefinedError(BundleArithError):
    """The Horrocks sum is not defined for the given pair of classes."""
