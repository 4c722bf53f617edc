"""
Continued Fractions - convergents, values and Bruno partial sums
"""

import logging
from dataclasses import dataclass
from typing import Any, List, Optional, Tuple

from mpmath import mp
from sympy import Rational

from geometric_normalization.exceptions import FactorialBudgetError

logger = logging.getLogger(__name__)

# Largest exponent e accepted when building 2^e quotients
MAX_EXPONENT_BITS = 1 << 26


@dataclass(frozen=True)
class ContinuedFraction:
    """
    ω = [0; r_1, r_2, ...] truncated to the stored quotients.

    Convergents follow p_{-1} = 1, q_{-1} = 0, p_0 = 0, q_0 = 1 and
    p_k = r_k p_{k-1} + p_{k-2}, q_k = r_k q_{k-1} + q_{k-2}.
    """

    quotients: Tuple[int, ...]

    def __post_init__(self):
        cleaned = tuple(int(r) for r in self.quotients)
        for k, r in enumerate(cleaned, 1):
            if r < 1:
                raise ValueError(f"Partial quotient r_{k} must be >= 1, got {r}")
        object.__setattr__(self, "quotients", cleaned)

    @classmethod
    def from_value(cls, value: Any, depth: int) -> "ContinuedFraction":
        """Expand a real in (0, 1) to at most depth quotients."""
        number = mp.mpf(value) - mp.floor(value)
        quotients = []
        for _ in range(depth):
            if mp.almosteq(number, 0):
                break
            number = mp.fdiv(1, number)
            r = mp.floor(number)
            quotients.append(int(r))
            number -= r
        return cls(tuple(quotients))

    @property
    def depth(self) -> int:
        return len(self.quotients)

    def extended(self, *quotients: int) -> "ContinuedFraction":
        return ContinuedFraction(self.quotients + tuple(quotients))

    def truncated(self, depth: int) -> "ContinuedFraction":
        return ContinuedFraction(self.quotients[:depth])

    def convergent(self, depth: int) -> Tuple[int, int]:
        if depth == 0:
            return 0, 1
        return self.convergents(depth)[-1]

    def convergents(self, depth: Optional[int] = None) -> List[Tuple[int, int]]:
        """(p_k, q_k) for k = 1..depth as exact integers."""
        depth = self.depth if depth is None else depth
        if depth > self.depth:
            raise ValueError(f"Requested depth {depth} exceeds the {self.depth} available quotients")
        old_p, p = 1, 0
        old_q, q = 0, 1
        result = []
        for r in self.quotients[:depth]:
            old_p, p = p, r * p + old_p
            old_q, q = q, r * q + old_q
            result.append((p, q))
        return result

    def denominators(self, depth: Optional[int] = None) -> List[int]:
        return [q for _, q in self.convergents(depth)]

    def as_rational(self) -> Rational:
        p, q = self.convergent(self.depth)
        return Rational(p, q)

    def value(self) -> Any:
        """p_depth / q_depth at the current mpmath precision."""
        p, q = self.convergent(self.depth)
        return mp.fdiv(p, q)

    def required_precision(self, depth: Optional[int] = None) -> int:
        """Bits needed to resolve dist(q_k ω, Z) up to the given depth: 2 log2 q + 64."""
        depth = self.depth if depth is None else depth
        if depth == 0:
            return 64
        q = self.convergent(depth)[1]
        return 2 * q.bit_length() + 64

    def __str__(self) -> str:
        return "[0; " + ", ".join(str(r) for r in self.quotients) + "]"


def golden_mean() -> Any:
    """(√5 - 1)/2 at the current precision."""
    return (mp.sqrt(5) - 1) / 2


def golden_fraction(depth: int) -> ContinuedFraction:
    return ContinuedFraction((1,) * depth)


def convergents(cf: ContinuedFraction, depth: int) -> List[Tuple[int, int]]:
    return cf.convergents(depth)


def determinant_identity_holds(cf: ContinuedFraction, depth: Optional[int] = None) -> bool:
    """q_k p_{k-1} - p_k q_{k-1} = (-1)^k for every computed convergent."""
    previous = (1, 0)
    for k, (p, q) in enumerate(cf.convergents(depth), 1):
        if q * previous[0] - p * previous[1] != (-1) ** k:
            return False
        previous = (p, q)
    return True


def bruno_partial_sums(cf: ContinuedFraction, depth: int) -> List[Any]:
    """
    S_K = Σ_{k<=K} ln(q_{k+1}) / q_k for K = 1..depth

    Args:
        cf: Continued fraction with at least depth + 1 quotients
        depth: Number of partial sums

    Returns:
        List of mpf partial sums
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    q = cf.denominators(depth + 1)
    sums = []
    total = mp.mpf(0)
    for k in range(depth):
        total += mp.log(q[k + 1]) / q[k]
        sums.append(total)
    return sums


def non_bruno_construct(depth: int) -> ContinuedFraction:
    """Quotients r_1 = 1, r_{k+1} = 2^{q_k}, so ln q_{k+1} / q_k >= ln 2."""
    quotients = [1]
    old_q, q = 1, 1
    while len(quotients) < depth:
        if q > MAX_EXPONENT_BITS:
            raise FactorialBudgetError(f"Quotient 2^{q} exceeds the exponent budget")
        r = 1 << q
        quotients.append(r)
        old_q, q = q, r * q + old_q
    cf = ContinuedFraction(tuple(quotients))
    logger.debug(f"Non-Bruno quotients up to depth {depth}: {cf.denominators()}")
    return cf


def golden_partial_sums(depth: int) -> List[Any]:
    return bruno_partial_sums(golden_fraction(depth + 1), depth)

