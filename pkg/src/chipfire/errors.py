"""Exception hierarchy for the chip-firing toolkit."""


class ChipFiringError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(ChipFiringError):
    """Malformed graph, distribution or certificate text."""


class ValidationError(ChipFiringError):
    """Well-formed input that violates a structural requirement."""


class IllegalFiring(ChipFiringError):
    """A vertex was fired while holding fewer chips than its out-degree."""


class ReplayFailure(ChipFiringError):
    """A firing sequence that should be legal could not be replayed."""


class InvalidComponent(ChipFiringError):
    """A vertex set is not strongly connected in the graph."""


class NotEulerian(ChipFiringError):
    pass


class NotStronglyConnected(ChipFiringError):
    pass


class InternalContradiction(ChipFiringError):
    """A game that is guaranteed to complete stalled; indicates a bug."""


class BudgetExceeded(ChipFiringError):
    """Common base of the two budget errors."""


class StepBudgetExceeded(BudgetExceeded):
    pass


class StateBudgetExceeded(BudgetExceeded):
    pass
