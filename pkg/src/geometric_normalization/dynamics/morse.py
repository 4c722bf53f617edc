"""
Morse Normalization - Φ tangent to the identity with |Φ|² = L
"""

import logging
from typing import Any, Dict, Optional, Tuple

from geometric_normalization.config import NormalFormConfig, resolve
from geometric_normalization.series.analytic import reciprocal, sqrt
from geometric_normalization.series.bi import BiSeries
from geometric_normalization.series.charts import xy_to_zw, zw_to_xy
from geometric_normalization.series.compose import square_modulus

logger = logging.getLogger(__name__)

Index = Tuple[int, int]


def quadratic_split(series: BiSeries) -> Tuple[BiSeries, BiSeries, BiSeries]:
    """
    Write P(x, y) = x²A + 2xyB + y²C

    Monomials x^p y^q with p >= 2 go to A, those with p = 1 to B, the rest to C.
    The three factors have order N - 2.
    """
    if series.variables != "xy":
        raise ValueError("quadratic_split works in the (x, y) chart")
    a: Dict[Index, Any] = {}
    b: Dict[Index, Any] = {}
    c: Dict[Index, Any] = {}
    for (p, q), value in series.items():
        if p + q < 2:
            raise ValueError(f"Term x^{p} y^{q} has degree below 2")
        if p >= 2:
            a[(p - 2, q)] = value
        elif p == 1:
            b[(0, q - 1)] = value / 2
        else:
            c[(0, q - 2)] = value
    order = series.order - 2
    return BiSeries(order, a, "xy"), BiSeries(order, b, "xy"), BiSeries(order, c, "xy")


def morse_phi(L: BiSeries, config: Optional[NormalFormConfig] = None) -> BiSeries:
    """
    Φ(x + iy) = x a + y B/a + i y c d with a = sqrt(A), c = sqrt(C), d = sqrt(1 - B²/(AC))

    Returns:
        Φ in the (z, w) chart, Φ = z + O(2), with Φ·Φ~ = L through the order of L
    """
    config = resolve(config)
    order = L.order
    a_part, b_part, c_part = quadratic_split(zw_to_xy(L, config))
    a = sqrt(a_part, config)
    c = sqrt(c_part, config)
    d = sqrt(1 - b_part * b_part * reciprocal(a_part * c_part, config), config)

    target = order - 1
    x = BiSeries.first(target, "xy")
    y = BiSeries.second(target, "xy")
    first = a.with_order(target)
    second = (b_part * reciprocal(a, config)).with_order(target)
    third = (c * d).with_order(target).scale(1j)
    phi = x * first + y * second + y * third
    return xy_to_zw(phi, config).with_order(order)


def morse_residual(phi: BiSeries, L: BiSeries, config: Optional[NormalFormConfig] = None) -> Any:
    """max |Φ·Φ~ - L|."""
    return square_modulus(phi, config).max_abs_difference(L)
