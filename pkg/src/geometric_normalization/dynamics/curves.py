"""
Curve Involutions - τ along a formal curve c(u) and curves matching two foliations
"""

import logging
from typing import Any, Dict, Optional

from mpmath import mp

from geometric_normalization.config import NormalFormConfig, resolve
from geometric_normalization.dynamics.involution import Involution
from geometric_normalization.exceptions import LeadingTermError
from geometric_normalization.series.analytic import sqrt
from geometric_normalization.series.bi import BiSeries
from geometric_normalization.series.compose import compose_bi_uni, compose_uni, diagonal, invert_uni
from geometric_normalization.series.uni import UniSeries

logger = logging.getLogger(__name__)


def restrict_to_curve(L: BiSeries, curve: UniSeries, config: Optional[NormalFormConfig] = None) -> UniSeries:
    """Λ_C(u) = L(c(u), c̄(u))."""
    return compose_bi_uni(L, curve, curve.conjugate(), config)


def tau_along_curve(L: BiSeries, curve: UniSeries, order: Optional[int] = None,
                    config: Optional[NormalFormConfig] = None) -> Involution:
    """
    τ_C = ℓ_C⁻¹∘(-ℓ_C) with ℓ_C = |c_1| u sqrt(Λ_C / (|c_1|² u²))

    Raises:
        LeadingTermError: c(0) != 0 or c'(0) = 0
    """
    config = resolve(config)
    order = min(L.order, curve.order) if order is None else order
    if abs(curve.coeff(0)) > config.tolerance:
        raise LeadingTermError("The curve must pass through the origin")
    speed = abs(curve.coeff(1))
    if speed <= config.tolerance:
        raise LeadingTermError("The curve must have nonzero derivative at the origin")
    restricted = restrict_to_curve(L.truncate(order), curve.with_order(order), config).realified(config)
    normalized = restricted.divide_by_power(2, config).scale(1 / (speed * speed))
    ell = sqrt(normalized, config).with_order(order - 1).shift(1).scale(speed).realified(config)
    tau = compose_uni(invert_uni(ell, config), -ell, config)
    return Involution(tau.with_variable("u").realified(config))


def solve_curve_match(L: BiSeries, target: BiSeries, order: Optional[int] = None,
                      config: Optional[NormalFormConfig] = None) -> UniSeries:
    """
    c with L'(u, u) = L(c(u), c̄(u)) through order N

    At degree n the equation reads c_{n-1} c̄_1 + c_1 c̄_{n-1} + A_n = a_n; with
    c_1 = 1 the real choice c_{n-1} = (a_n - A_n)/2 is taken.
    """
    config = resolve(config)
    order = min(L.order, target.order) if order is None else order
    L = L.truncate(order)
    wanted = diagonal(target.truncate(order), config)
    coeffs: Dict[int, Any] = {1: mp.mpc(1)}
    for n in range(3, order + 1):
        partial = UniSeries(order, coeffs, False, "u")
        known = restrict_to_curve(L, partial, config).coeff(n)
        coeffs[n - 1] = (wanted.coeff(n) - known) / 2
    curve = UniSeries(order - 1, coeffs, False, "u").with_order(order)
    residual = restrict_to_curve(L, curve, config).max_abs_difference(wanted)
    logger.debug(f"Curve match residual {mp.nstr(residual, 5)}")
    return curve
