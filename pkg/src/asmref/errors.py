"""Exception types shared across the package."""

from __future__ import annotations


class AsmrefError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(AsmrefError, ValueError):
    """A combinatorial object or an argument violates its invariants."""


class BudgetError(AsmrefError):
    """A computation was rejected because it exceeds the configured size budget."""


class SingularSystemError(AsmrefError):
    """An exact linear solve hit a singular or inconsistent system that should not be."""


class ExcludedIndexError(AsmrefError):
    """The closed-form entry formula was asked for one of its excluded index pairs."""


class NonIntegralError(AsmrefError):
    """A quantity that must be an integer came out with a nontrivial denominator."""


class FormulaDomainError(AsmrefError):
    """The closed-form entry formula hit a zero denominator outside its harmonic window."""


class IdentityViolationError(AsmrefError):
    """A checked identity failed at a sample point."""

    def __init__(self, identity: str, point, lhs, rhs):
        super().__init__(f"identity {identity!r} violated at {point}: {lhs} != {rhs}")
        self.identity = identity
        self.point = point
        self.lhs = lhs
        self.rhs = rhs


class BFileError(AsmrefError, ValueError):
    """A sequence b-file could not be parsed."""
