"""Exception hierarchy shared by the library and the CLI."""


class SFGraphError(Exception):
    """Base class for all errors raised by :mod:`sfgraphs`."""


class UsageError(SFGraphError, ValueError):
    """Bad argument: out-of-range vertex, invalid constraint, malformed input."""


class CapabilityError(SFGraphError, RuntimeError):
    """A configured size, time or bit budget would be exceeded."""


class FormulaRangeError(UsageError):
    """A closed form was evaluated outside the range where it is valid."""

    def __init__(self, message: str, formula: str | None = None):
        super().__init__(message)
        self.formula = formula
