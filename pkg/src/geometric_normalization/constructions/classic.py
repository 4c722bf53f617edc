"""
Classic Holomorphic Models - quadratic, Geyer-type, exponential and covering maps
"""

import logging
from typing import Any, Dict, Optional

from mpmath import mp

from geometric_normalization.arithmetic.rotation import RotationNumber, as_rotation_number
from geometric_normalization.config import NormalFormConfig, resolve
from geometric_normalization.dynamics.conservative import linearize_holomorphic
from geometric_normalization.dynamics.jet import DiffeoJet
from geometric_normalization.series.compose import compose_uni, invert_uni
from geometric_normalization.series.uni import UniSeries

logger = logging.getLogger(__name__)

CLASSIC_KINDS = ("yoccoz", "geyer", "corge", "exp", "covering")


def _coefficients(lam: Any, kind: str, order: int, d: int) -> Dict[int, Any]:
    if kind == "yoccoz":
        return {2: -lam}
    if kind == "geyer":
        return {k + 1: lam * mp.binomial(d, k) / mp.mpf(d) ** k for k in range(1, d + 1)}
    if kind == "corge":
        return {d + 1: lam}
    if kind == "exp":
        return {n: lam / mp.factorial(n - 1) for n in range(2, order + 1)}
    if kind == "covering":
        return {d + 1: lam / d}
    raise ValueError(f"Unknown classic map '{kind}'; expected one of {', '.join(CLASSIC_KINDS)}")


def classic_map(omega: Any, kind: str = "yoccoz", order: Optional[int] = None, d: int = 2,
                config: Optional[NormalFormConfig] = None) -> DiffeoJet:
    """
    Holomorphic jets of the classic models at λ = e^{2πiω}

    Kinds:
        yoccoz      λz(1 - z)
        geyer       λz(1 + z/d)^d
        corge       λz(1 + z^d)
        exp         λz e^z
        covering    λz(1 + z^d/d)
    """
    config = resolve(config)
    order = config.default_order if order is None else order
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    omega = as_rotation_number(omega)
    coeffs = _coefficients(omega.lam, kind, order, d)
    return DiffeoJet(omega, {(n, 0): value for n, value in coeffs.items()}, order, False, config)


def multiplied(omega: Any, factor: int) -> RotationNumber:
    """factor·ω as a rotation number."""
    omega = as_rotation_number(omega)
    return RotationNumber(omega.kind, omega.cf, omega.text, omega.multiplier * factor, omega.divisor)


def covering_identity_check(omega: Any, d: int, order: Optional[int] = None,
                            config: Optional[NormalFormConfig] = None) -> Any:
    """max |ρ∘f_d - P_{dω,d}∘ρ| through order N, ρ(z) = z^d, f_d(z) = λz(1 + z^d/d)."""
    config = resolve(config)
    order = config.default_order if order is None else order
    f = classic_map(omega, "covering", order, d, config).as_univariate()
    geyer = classic_map(multiplied(omega, d), "geyer", order, d, config).as_univariate()
    rho = UniSeries.monomial(d, order)
    left = f ** d
    right = compose_uni(geyer, rho, config)
    residual = left.max_abs_difference(right)
    logger.debug(f"Covering identity residual for d = {d}: {mp.nstr(residual, 5)}")
    return residual


def holomorphic_with_jet(jet: DiffeoJet, order: Optional[int] = None,
                         config: Optional[NormalFormConfig] = None) -> DiffeoJet:
    """
    F = h⁻¹∘(λz + λz^{N+1})∘h with h the order-N linearizer of the holomorphic N-jet J

    F is holomorphic and its N-jet is J.
    """
    config = resolve(config)
    order = jet.order + 1 if order is None else order
    if order <= jet.order:
        raise ValueError(f"Order {order} must exceed the jet order {jet.order}")
    h, _ = linearize_holomorphic(jet, jet.order, config)
    h = h.with_order(order)
    model = UniSeries(order, {1: jet.lam, jet.order + 1: jet.lam})
    forward = compose_uni(invert_uni(h, config), compose_uni(model, h, config), config)
    result = DiffeoJet.from_univariate(jet.omega, forward, config)
    logger.info(f"Holomorphic extension of a {jet.order}-jet to order {order}")
    return result
