"""
Conservativity - Γ = Id tests and holomorphic linearization
"""

import logging
from typing import Any, Dict, Optional, Tuple

from mpmath import mp

from geometric_normalization.config import NormalFormConfig, resolve, small_divisor_floor
from geometric_normalization.dynamics.admissible import AdmissiblePair, conjugacy_residual, resonant_free
from geometric_normalization.dynamics.jet import DiffeoJet
from geometric_normalization.exceptions import SmallDivisorError
from geometric_normalization.series.bi import BiSeries, HermitianBiSeries
from geometric_normalization.series.compose import compose_uni, square_modulus
from geometric_normalization.series.uni import UniSeries

logger = logging.getLogger(__name__)


def is_formally_conservative(jet: DiffeoJet, order: Optional[int] = None,
                             config: Optional[NormalFormConfig] = None,
                             tolerance: Optional[float] = None) -> Tuple[bool, UniSeries]:
    """
    Whether the radial map Γ of F is the identity through order N

    Returns:
        (flag, Γ) with Γ from the resonant-free pair
    """
    config = resolve(config)
    tolerance = config.tolerance if tolerance is None else tolerance
    pair = resonant_free(jet, order, config)
    defect = (pair.Gamma - UniSeries.identity(pair.Gamma.order, "R")).max_abs()
    flag = defect <= tolerance * max(mp.mpf(1), pair.L.max_abs())
    logger.debug(f"Γ - Id defect {mp.nstr(defect, 5)}; conservative = {flag}")
    return flag, pair.Gamma


def linearize_holomorphic(jet: DiffeoJet, order: Optional[int] = None,
                          config: Optional[NormalFormConfig] = None) -> Tuple[UniSeries, AdmissiblePair]:
    """
    h = z + O(z²) with h∘F = λh for holomorphic F

    Returns:
        (h, pair) where pair.L = |h|² is admissible with Γ = Id

    Raises:
        ValueError: F has terms in z̄
        SmallDivisorError: |λ - λ^n| below the guard floor
    """
    config = resolve(config)
    order = jet.order if order is None else order
    if not jet.is_holomorphic(config.tolerance):
        raise ValueError("Linearization requires a holomorphic jet")
    forward = jet.with_order(order).as_univariate()
    lam = jet.lam
    floor = small_divisor_floor(config)
    coeffs: Dict[int, Any] = {1: mp.mpc(1)}
    lam_power = lam
    for n in range(2, order + 1):
        lam_power *= lam
        divisor = lam - lam_power
        if abs(divisor) < floor:
            raise SmallDivisorError(f"|λ - λ^{n}| = {mp.nstr(abs(divisor), 5)} below the guard floor", degree=n)
        known = compose_uni(UniSeries(n, coeffs), forward.with_order(n), config).coeff(n)
        coeffs[n] = known / divisor
    h = UniSeries(order, coeffs)
    h_bi = BiSeries(order, {(n, 0): value for n, value in h.items()})
    L = HermitianBiSeries.from_series(square_modulus(h_bi, config), config)
    gamma = UniSeries.identity(order // 2, "R")
    pair = AdmissiblePair(L, gamma, conjugacy_residual(L, gamma, jet.with_order(order), config))
    return h, pair


def linearization_residual(h: UniSeries, jet: DiffeoJet, config: Optional[NormalFormConfig] = None) -> Any:
    """max |h∘F - λh|."""
    order = min(h.order, jet.order)
    forward = jet.with_order(order).as_univariate()
    return compose_uni(h.with_order(order), forward, config).max_abs_difference(h.scale(jet.lam))
