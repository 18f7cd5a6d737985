class CosetLabError(Exception):
    """Base class for errors raised by cosetlab."""


class GroupSpecError(CosetLabError, ValueError):
    """Malformed group descriptor or Cayley table that is not a group."""


class OrderCapExceeded(CosetLabError, ValueError):
    pass


class GroupMismatchError(CosetLabError, ValueError):
    """Operands of a set operation live in different groups."""


class NotAbelianError(CosetLabError, ValueError):
    pass


class BudgetExceeded(CosetLabError, RuntimeError):
    """A search hit its configured work limit; partial results are discarded."""


class GeneratorError(CosetLabError, ValueError):
    """An instance generator cannot produce the requested set."""
