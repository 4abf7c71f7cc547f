"""Exception hierarchy shared by every module."""


class ConeTorsionError(Exception):
    """Base class; ``kind`` is the short machine-readable tag used by the CLI."""

    kind = "error"


class DomainError(ConeTorsionError, ValueError):
    kind = "domain"


class PoleError(DomainError):
    kind = "pole"


class ConvergenceError(ConeTorsionError, ArithmeticError):
    kind = "convergence"


class UnsupportedCaseError(ConeTorsionError, NotImplementedError):
    kind = "unsupported"


class BudgetExceededError(ConeTorsionError):
    kind = "budget"


class InconsistencyError(ConeTorsionError, AssertionError):
    """An exact identity that must hold did not: signals a bug, never bad input."""

    kind = "inconsistency"
