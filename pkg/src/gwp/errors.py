"""Exception hierarchy shared by the library and the command line."""


class GWPError(Exception):
    """Base class for all errors raised by this package."""


class InputError(GWPError, ValueError):
    """Malformed or inconsistent user input (words, spec files, queries)."""


class ValidationError(InputError):
    """A graph-of-groups specification failed validation.

    ``violations`` holds every problem found, not just the first.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class InternalError(GWPError, RuntimeError):
    """An invariant the theory guarantees was violated; indicates a bug."""


class RoundCapExceeded(InternalError):
    pass
