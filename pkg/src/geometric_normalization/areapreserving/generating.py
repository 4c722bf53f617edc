"""
Generating Functions - area-preserving jets from u(x, y')

The map (x, y) -> (x', y') is defined implicitly by
    y = y' + ∂u/∂x(x, y'),    x' = x + ∂u/∂y'(x, y').
The first equation is solved for y' by fixed-point iteration on truncated
polynomials; each pass fixes at least one more degree.
"""

import logging
from dataclasses import dataclass
from typing import Any, Optional

from mpmath import mp

from geometric_normalization.areapreserving.polymap import (
    PLANE, X, Y, Components, compose_truncated, truncate,
)
from geometric_normalization.areapreserving.jets import area_defect
from geometric_normalization.config import NormalFormConfig, resolve
from geometric_normalization.dynamics.jet import DiffeoJet
from geometric_normalization.exceptions import IterationError
from geometric_normalization.series.bi import BiSeries
from geometric_normalization.series.charts import xy_to_zw

logger = logging.getLogger(__name__)


@dataclass
class GeneratingMapResult:
    """The generated map, its area defect and, when ω is given, the jet λ·T in (z, z̄)."""
    components: Components
    area_defect: Any
    jet: Optional[DiffeoJet]


def _to_bi(p: Any, order: int) -> BiSeries:
    to_sympy = PLANE.domain.to_sympy
    coeffs = {}
    for monom, value in p.items():
        rational = to_sympy(value)
        coeffs[monom] = mp.mpf(int(rational.p)) / int(rational.q)
    return BiSeries(order, coeffs, "xy")


def solve_implicit(u: Any, order: int) -> Components:
    """
    (x', y') through total degree order

    Raises:
        IterationError: y' does not stabilize within order + 2 passes
    """
    u = PLANE(u)
    u_x, u_y = u.diff(X), u.diff(Y)
    y_prime = Y
    for step in range(order + 2):
        updated = truncate(Y - compose_truncated(u_x, X, y_prime, order), order)
        if updated == y_prime:
            logger.debug(f"Generating map fixed point after {step} passes")
            x_prime = truncate(X + compose_truncated(u_y, X, y_prime, order), order)
            return x_prime, y_prime
        y_prime = updated
    raise IterationError(f"y' did not stabilize within {order + 2} passes")


def generating_map(u: Any, order: int, omega: Any = None,
                   config: Optional[NormalFormConfig] = None) -> GeneratingMapResult:
    """
    The area-preserving map generated by u, with its complex jet λ·T

    Args:
        u: Polynomial in (x, y') over Q; its lowest degree must be at least 3
        order: Truncation order
        omega: Rotation number for the jet; None skips it

    Raises:
        ValueError: u has terms of degree below 3
        IterationError: the implicit equation does not stabilize
    """
    config = resolve(config)
    u = PLANE(u)
    lowest = min((i + j for i, j in u.keys()), default=order + 2)
    if lowest < 3:
        raise ValueError(f"u must start at degree 3 or higher, found degree {lowest}")
    components = solve_implicit(u, order)
    defect = area_defect(components, order)
    jet = None
    if omega is not None:
        x_prime, y_prime = _to_bi(components[0], order), _to_bi(components[1], order)
        image = xy_to_zw(x_prime + y_prime.scale(1j), config)
        jet = DiffeoJet(omega, {}, order, config=config)
        coeffs = {index: value * jet.lam for index, value in image.items() if index[0] + index[1] >= 2}
        jet = jet.with_coefficients(coeffs)
    logger.info(f"Generated an order-{order} map; area defect {'vanishes' if not defect else 'is nonzero'}")
    return GeneratingMapResult(components, defect, jet)
