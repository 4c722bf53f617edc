"""
Exceptions - error hierarchy for series algebra, solvers and constructions
"""

from typing import Optional, Tuple


class NormalFormError(Exception):
    """Base class for all errors raised by the package."""


class GuardError(NormalFormError):
    """A numerical guard tripped (small divisor, precision, factorial budget)."""


class SmallDivisorError(GuardError):
    """|1 - λ^m| fell below the configured floor."""

    def __init__(self, message: str, degree: Optional[int] = None,
                 index: Optional[Tuple[int, int]] = None):
        super().__init__(message)
        self.degree = degree
        self.index = index


class PrecisionError(GuardError):
    """The working precision cannot resolve the requested quantity."""


class FactorialBudgetError(GuardError):
    """A factorial or exponential above the configured budget was requested."""


class OrderMismatchError(NormalFormError, ValueError):
    """Two series with different truncation orders were combined."""


class ConstantTermError(NormalFormError, ValueError):
    """A series substituted into another one has a nonzero constant term."""


class LeadingTermError(NormalFormError, ValueError):
    """An analytic substitution received a series with the wrong leading term."""


class VanishingLinearPartError(NormalFormError, ValueError):
    """A series to be inverted has no linear part."""


class SeriesFormatError(NormalFormError, ValueError):
    """A JSON document does not describe a valid series, jet or map."""


class NotAdmissibleError(NormalFormError):
    """A series fails the admissibility test for the given map."""


class NotAnInvolutionError(NormalFormError):
    """τ∘τ differs from the identity beyond tolerance."""


class DecompositionError(NormalFormError):
    """A normal form does not split into the expected factors."""


class JetNotExtendableError(NormalFormError):
    """A jet is not the jet of an area-preserving map."""

    def __init__(self, message: str, degree: Optional[int] = None):
        super().__init__(message)
        self.degree = degree


class IterationError(NormalFormError):
    """A fixed-point iteration failed to stabilize."""


class UsageError(NormalFormError):
    """Invalid command-line usage."""
