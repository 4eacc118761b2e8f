"""Exception hierarchy shared across the package."""

from __future__ import annotations


class IvprobError(Exception):
    """Base class for all library-specific failures."""


class ValidationError(IvprobError):
    """A distribution or database violates its defining constraints."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations) or "invalid input")


class SpaceMismatchError(IvprobError):
    """Two distributions defined over different spaces were combined."""


class UnknownVariableError(IvprobError):
    """A variable name or value label is not part of the relevant space."""


class InfeasibleError(IvprobError):
    """A constraint system admits no probability distribution."""

    def __init__(self, message, infeasibility=None):
        super().__init__(message)
        self.infeasibility = infeasibility


class ConvergenceError(IvprobError):
    """An iterative fit failed to reach its tolerance within the iteration cap."""


class EnumerationLimitError(IvprobError):
    """An exponential enumeration would exceed its configured cap."""


class SolverError(IvprobError):
    """Internal solver failure; indicates a bug, not bad input."""


class DocumentError(IvprobError):
    """A document file is malformed or internally inconsistent."""
