"""Exception taxonomy shared across the package.

The CLI maps these onto exit codes, so keep the hierarchy flat and stable:
capacity/budget problems are retryable with smaller inputs, hypothesis
failures mean the requested theorem simply does not apply, and check
failures carry a replayable witness.
"""


class SumsetLabError(Exception):
    """Base class for all package errors."""


class CapacityError(SumsetLabError):
    """Input exceeds a configured structural maximum (group order, index...)."""


class BudgetError(SumsetLabError):
    """A computation would materialize more intervals/cells than allowed."""


class HypothesisError(SumsetLabError):
    """A theorem's hypothesis is not satisfied by the given instance."""


class PreconditionError(SumsetLabError):
    """An operation's documented precondition was violated; names which one."""


class DslSyntaxError(SumsetLabError):
    """Set-DSL parse failure; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class CheckFailure(SumsetLabError):
    """A verification check failed; carries a witness record."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness
