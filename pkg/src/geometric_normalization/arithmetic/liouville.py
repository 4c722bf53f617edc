"""
Super-Liouville Arithmetic - distances |1 - λ^n|, witnesses and odd super-Liouville numbers
"""

import logging
from dataclasses import dataclass, field
from typing import Any, List, Optional, Sequence, Tuple

from mpmath import mp
from mpmath.libmp import ifac
from sympy import Rational

from geometric_normalization.arithmetic.continued_fraction import ContinuedFraction
from geometric_normalization.arithmetic.rotation import RotationNumber, as_rotation_number
from geometric_normalization.config import NormalFormConfig, resolve
from geometric_normalization.exceptions import FactorialBudgetError, NormalFormError, PrecisionError

logger = logging.getLogger(__name__)

# Bits kept in reserve when deciding whether n·ω still has a resolvable fractional part
RESOLUTION_MARGIN_BITS = 16


@dataclass
class PowerRecord:
    """One scanned power k of λ."""
    k: int
    distance: Any
    theta: Any
    resolved: bool
    witness: bool


@dataclass
class OddWitnessRecord:
    k: int
    q: int
    odd: bool
    bound_holds: bool


@dataclass
class OddLiouvilleReport:
    """Exact verification of a constructed odd super-Liouville continued fraction."""
    ell: int
    records: List[OddWitnessRecord] = field(default_factory=list)
    seed_gap_holds: bool = True

    @property
    def holds(self) -> bool:
        designed = [r for r in self.records if r.k > self.ell]
        return (self.seed_gap_holds and all(r.bound_holds for r in self.records)
                and all(r.odd for r in designed))


def _omega_value(omega: Any) -> Any:
    if isinstance(omega, (RotationNumber, ContinuedFraction, str)):
        return as_rotation_number(omega).value
    return mp.mpf(omega)


def lambda_power_distance(omega: Any, n: int, config: Optional[NormalFormConfig] = None) -> Tuple[Any, Any]:
    """
    |1 - λ^n| = 2|sin(πnω)| and θ = dist(nω, Z)

    Evaluated at the larger of the current and the configured working precision.

    Raises:
        PrecisionError: n ω has no fractional bits left at that precision
    """
    config = resolve(config)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    bits = max(mp.prec, config.working_bits)
    if n.bit_length() >= bits - RESOLUTION_MARGIN_BITS:
        raise PrecisionError(f"Working precision {bits} cannot resolve {n}·ω")
    with mp.workprec(bits + n.bit_length()):
        value = _omega_value(omega)
        x = n * value
        theta = abs(x - mp.nint(x))
        distance = 2 * abs(mp.sinpi(x))
    return +distance, +theta


def resolution_floor(k: int) -> Any:
    """Smallest θ trusted for the k-th power at the current precision."""
    return mp.mpf(k) * mp.mpf(2) ** (-(mp.prec - RESOLUTION_MARGIN_BITS))


def scan_lambda_powers(omega: Any, k_max: int, config: Optional[NormalFormConfig] = None) -> List[PowerRecord]:
    """Distances |1 - λ^k| for k = 1..k_max, each flagged resolved and witness (|λ^k - 1|^{-1} >= k!)."""
    records = []
    for k in range(1, k_max + 1):
        distance, theta = lambda_power_distance(omega, k, config)
        resolved = theta > resolution_floor(k)
        witness = False
        if resolved:
            witness = mp.log(distance) + mp.loggamma(k + 1) <= 0
        else:
            logger.warning(f"λ^{k} is indistinguishable from 1 at {mp.prec} bits; excluded from witnesses")
        records.append(PowerRecord(k, distance, theta, resolved, witness))
    return records


def super_liouville_witnesses(omega: Any, k_max: Optional[int] = None, odd_only: bool = False,
                              config: Optional[NormalFormConfig] = None) -> List[int]:
    """All resolved k <= k_max with |λ^k - 1|^{-1} >= k!."""
    config = resolve(config)
    k_max = config.witness_scan_limit if k_max is None else k_max
    witnesses = [r.k for r in scan_lambda_powers(omega, k_max, config) if r.witness]
    if odd_only:
        witnesses = [k for k in witnesses if k % 2]
    logger.debug(f"Super-Liouville witnesses up to {k_max}: {witnesses}")
    return witnesses


def _checked_factorial(q: int, config: NormalFormConfig) -> int:
    if q > config.factorial_budget:
        raise FactorialBudgetError(f"{q}! exceeds the factorial budget ({config.factorial_budget})")
    return int(ifac(q))


def odd_super_liouville_construct(seed_quotients: Sequence[int], ell: int, depth: int,
                                  config: Optional[NormalFormConfig] = None) -> ContinuedFraction:
    """
    Extend seed quotients by r_k = 7 q_{k-1}! + ε_k with q_k odd

    Args:
        seed_quotients: Leading quotients r_1..r_ell
        ell: Number of seed quotients kept
        depth: Total number of quotients

    Returns:
        ContinuedFraction whose denominators q_k, k > ell, are odd and satisfy
        dist(q_k ω, Z) <= 1 / (7 q_k!)
    """
    config = resolve(config)
    if ell < 1 or ell > len(seed_quotients):
        raise ValueError(f"ell must lie in 1..{len(seed_quotients)}, got {ell}")
    if depth < ell:
        raise ValueError(f"depth {depth} is below ell {ell}")
    quotients = [int(r) for r in seed_quotients[:ell]]
    denominators = ContinuedFraction(tuple(quotients)).denominators()
    q_prev = denominators[-2] if ell >= 2 else 1
    q = denominators[-1]
    for k in range(ell + 1, depth + 1):
        base = 7 * _checked_factorial(q, config)
        epsilon = 0 if (base * q + q_prev) % 2 else 1
        r = base + epsilon
        quotients.append(r)
        q_prev, q = q, r * q + q_prev
        logger.debug(f"r_{k} = 7·{q_prev}! + {epsilon}; q_{k} has {q.bit_length()} bits")
    cf = ContinuedFraction(tuple(quotients))
    report = verify_odd_super_liouville(cf, ell, config)
    if not report.holds:
        raise NormalFormError(f"Constructed continued fraction {cf} fails verification")
    logger.info(f"Constructed odd super-Liouville continued fraction of depth {depth}")
    return cf


def verify_odd_super_liouville(cf: ContinuedFraction, ell: int,
                               config: Optional[NormalFormConfig] = None) -> OddLiouvilleReport:
    """Exact big-integer check of the designed witnesses and of the seed gap |ω - α| <= 2/q_ell^2."""
    config = resolve(config)
    convergents = cf.convergents()
    p_last, q_last = convergents[-1]
    report = OddLiouvilleReport(ell=ell)
    for k in range(ell, cf.depth + 1):
        q_k = convergents[k - 1][1]
        residue = (q_k * p_last) % q_last
        distance_numerator = min(residue, q_last - residue)
        if distance_numerator == 0:
            holds = True
        else:
            holds = 7 * _checked_factorial(q_k, config) * distance_numerator <= q_last
        report.records.append(OddWitnessRecord(k, q_k, q_k % 2 == 1, holds))
    p_ell, q_ell = convergents[ell - 1]
    gap = abs(Rational(p_last, q_last) - Rational(p_ell, q_ell))
    report.seed_gap_holds = bool(gap <= Rational(2, q_ell ** 2))
    return report
