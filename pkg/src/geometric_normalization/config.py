"""
Configuration - working precision, tolerances and desk-scale guardrails
"""

import logging
from contextlib import contextmanager
from dataclasses import dataclass, replace
from typing import Any, Iterator, Optional

from mpmath import mp

from geometric_normalization.exceptions import PrecisionError

logger = logging.getLogger(__name__)


@dataclass
class NormalFormConfig:
    """Configuration shared by the series, solver and construction modules."""

    # Coefficient precision in bits; mpmath works at precision_bits + guard_bits
    precision_bits: int = 256
    guard_bits: int = 64

    # Residual tolerance for conjugacy, involution and round-trip checks
    tolerance: float = 1e-30

    # Small divisors |1 - λ^m| below 2^(-precision_bits / small_divisor_exponent) abort
    small_divisor_exponent: int = 4

    # Refuse q! for q above this bound
    factorial_budget: int = 5000

    default_order: int = 12

    # Interpolation holdout tolerance for the affine-family degree checks
    ipm_tolerance: float = 1e-20

    # Largest power of λ scanned when looking for super-Liouville witnesses
    witness_scan_limit: int = 200

    # Least-squares slope of log max|coeff| against n log n above which growth is flagged
    factorial_slope_threshold: float = 0.5

    def __post_init__(self):
        if self.precision_bits < 64:
            raise ValueError(f"precision_bits must be at least 64, got {self.precision_bits}")
        if self.guard_bits < 0:
            raise ValueError(f"guard_bits must be non-negative, got {self.guard_bits}")

    @property
    def working_bits(self) -> int:
        return self.precision_bits + self.guard_bits


# Global configuration instance
CONFIG = NormalFormConfig()


def resolve(config: Optional[NormalFormConfig]) -> NormalFormConfig:
    return config if config is not None else CONFIG


def apply_precision(config: Optional[NormalFormConfig] = None) -> int:
    """
    Set the mpmath working precision from a configuration

    Args:
        config: Configuration to apply (defaults to CONFIG)

    Returns:
        The precision now in effect, in bits
    """
    config = resolve(config)
    mp.prec = config.working_bits
    logger.debug(f"mpmath precision set to {mp.prec} bits")
    return mp.prec


@contextmanager
def working_precision(config: Optional[NormalFormConfig] = None) -> Iterator[int]:
    """Temporarily run mpmath at the configured working precision."""
    config = resolve(config)
    with mp.workprec(config.working_bits):
        yield config.working_bits


def small_divisor_floor(config: Optional[NormalFormConfig] = None) -> Any:
    """Smallest |1 - λ^m| accepted by the solvers."""
    config = resolve(config)
    return mp.mpf(2) ** (-mp.mpf(config.precision_bits) / config.small_divisor_exponent)


def admitting_divisor(distance: Any, config: Optional[NormalFormConfig] = None) -> NormalFormConfig:
    """
    Configuration whose small-divisor floor lies below the given |1 - λ^m|

    precision_bits grows to small_divisor_exponent·(-log2 distance) + guard_bits
    when the current floor would reject the divisor; otherwise config is returned.

    Raises:
        PrecisionError: the distance is zero at the current precision
    """
    config = resolve(config)
    if distance <= 0:
        raise PrecisionError(f"A divisor vanishes at {mp.prec} bits; raise the precision")
    needed = int(mp.ceil(-mp.log(distance, 2) * config.small_divisor_exponent)) + config.guard_bits
    if needed <= config.precision_bits:
        return config
    logger.info(f"Raising precision from {config.precision_bits} to {needed} bits for |1 - λ^m| = {mp.nstr(distance, 5)}")
    return replace(config, precision_bits=needed)


def residual_tolerance(kappa: Any = 1, config: Optional[NormalFormConfig] = None) -> Any:
    """Conjugacy residual bound κ·2^(-precision/2), never tighter than the configured tolerance."""
    config = resolve(config)
    floor = mp.mpf(2) ** (-mp.mpf(config.precision_bits) / 2)
    return max(mp.mpf(kappa) * floor, mp.mpf(config.tolerance))
