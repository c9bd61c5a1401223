"""Exception hierarchy shared by every module."""


class ContactAlgError(Exception):
    """Base class for all errors raised by the package."""


class InputError(ContactAlgError, ValueError):
    """Malformed input: bad widths, asymmetric relations, invalid opens."""


class PreconditionError(ContactAlgError):
    """An operation was called outside its hypotheses.

    ``flag`` names the violated condition (e.g. ``"L1"`` or ``"EF1"``) when
    there is one, so callers can grep for it.
    """

    def __init__(self, message: str, flag: str | None = None):
        super().__init__(message)
        self.flag = flag


class BudgetError(ContactAlgError):
    """Exhaustive search would exceed the configured oracle budget."""


class ConsistencyError(ContactAlgError, AssertionError):
    """Two computations that must agree did not. Always a bug or an unmet hypothesis."""
