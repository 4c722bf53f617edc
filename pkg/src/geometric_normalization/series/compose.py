"""
Series Composition - substitution, inversion, hat-composition and square modulus

Result orders follow the inner series. When the outer series is shorter, the
result is cut where its missing coefficients would start to contribute: an
outer series of order K composed with an inner series of valuation v is valid
through degree (K + 1) v - 1.
"""

import logging
from typing import Any, Dict, Optional, Union

from mpmath import mp

from geometric_normalization.config import NormalFormConfig, resolve
from geometric_normalization.exceptions import (
    ConstantTermError,
    OrderMismatchError,
    VanishingLinearPartError,
)
from geometric_normalization.series.bi import BiSeries, HermitianBiSeries
from geometric_normalization.series.uni import UniSeries

logger = logging.getLogger(__name__)

Series = Union[BiSeries, UniSeries]


def composed_order(outer_order: int, inner_order: int, valuation: Optional[int]) -> int:
    """Order through which outer∘inner is known."""
    if valuation is None:
        return inner_order
    return min(inner_order, (outer_order + 1) * valuation - 1)


def _strip_constant(inner: Series, config: NormalFormConfig) -> Series:
    constant = inner.coeff(0, 0) if isinstance(inner, BiSeries) else inner.coeff(0)
    if constant == 0:
        return inner
    if abs(constant) > config.tolerance * max(mp.mpf(1), inner.max_abs()):
        raise ConstantTermError(f"Inner series has constant term {mp.nstr(constant, 5)}")
    return inner - constant


def _min_valuation(*series: Series) -> Optional[int]:
    valuations = [s.valuation() for s in series if s.valuation() is not None]
    return min(valuations) if valuations else None


def _zero_like(inner: Series, order: int) -> Series:
    if isinstance(inner, BiSeries):
        return BiSeries.zero(order, inner.variables)
    return UniSeries.zero(order, inner.variable)


def _horner(coefficients: Dict[int, Any], inner: Series, top: int, order: int) -> Series:
    result = _zero_like(inner, order)
    for n in range(top, -1, -1):
        if result:
            result = result * inner
        if n in coefficients:
            result = result + coefficients[n]
    return result


def compose_uni(outer: UniSeries, inner: UniSeries, config: Optional[NormalFormConfig] = None) -> UniSeries:
    """outer∘inner for univariate series; inner must have no constant term."""
    config = resolve(config)
    inner = _strip_constant(inner, config)
    order = composed_order(outer.order, inner.order, inner.valuation())
    inner = inner.with_order(order)
    result = _horner(outer.as_dict(), inner, min(outer.order, order), order)
    return result.with_variable(inner.variable)


def compose_uni_bi(outer: UniSeries, inner: BiSeries, config: Optional[NormalFormConfig] = None) -> BiSeries:
    """g(L(z, w)) for univariate g and bivariate L without constant term."""
    config = resolve(config)
    inner = _strip_constant(inner, config)
    order = composed_order(outer.order, inner.order, inner.valuation())
    inner = inner.with_order(order)
    return _horner(outer.as_dict(), inner, min(outer.order, order), order)


def compose_bi(outer: BiSeries, first: Series, second: Series,
               config: Optional[NormalFormConfig] = None) -> Series:
    """
    L(u, v) for a bivariate L and two inner series without constant term

    The inner pair may be bivariate (result is a BiSeries in their chart) or
    univariate (result is a UniSeries).
    """
    config = resolve(config)
    if type(first) is not type(second) and not (isinstance(first, BiSeries) and isinstance(second, BiSeries)):
        raise TypeError("Inner series must both be bivariate or both univariate")
    if first.order != second.order:
        raise OrderMismatchError(f"Inner orders differ: {first.order} vs {second.order}")
    first = _strip_constant(first, config)
    second = _strip_constant(second, config)
    order = composed_order(outer.order, first.order, _min_valuation(first, second))
    u = first.with_order(order)
    v = second.with_order(order)
    top = min(outer.order, order)

    rows: Dict[int, Dict[int, Any]] = {}
    max_s = 0
    for (r, s), value in outer.items():
        if r + s <= top:
            rows.setdefault(r, {})[s] = value
            max_s = max(max_s, s)

    one = BiSeries.one(order, u.variables) if isinstance(u, BiSeries) else UniSeries.one(order, u.variable)
    v_powers = [one]
    for _ in range(max_s):
        v_powers.append(v_powers[-1] * v)

    result = _zero_like(u, order)
    for r in range(top, -1, -1):
        if result:
            result = result * u
        for s, value in rows.get(r, {}).items():
            result = result + v_powers[s].scale(value)
    return result


def compose_bi_uni(outer: BiSeries, first: UniSeries, second: UniSeries,
                   config: Optional[NormalFormConfig] = None) -> UniSeries:
    """L(c(u), d(u)) along a pair of univariate series."""
    return compose_bi(outer, first, second, config)


def _series_of(map_like: Any) -> BiSeries:
    return getattr(map_like, "series", map_like)


def hat_compose(outer: BiSeries, inner: Any, config: Optional[NormalFormConfig] = None) -> BiSeries:
    """L∘F-hat = L(F, F~); inner is a BiSeries or anything exposing ``series``."""
    series = _series_of(inner)
    return compose_bi(outer, series, series.tilde(), config)


def square_modulus(series: Any, config: Optional[NormalFormConfig] = None) -> HermitianBiSeries:
    """|f|^2 = f·f~."""
    series = _series_of(series)
    return HermitianBiSeries.from_series(series * series.tilde(), config)


def diagonal(series: BiSeries, config: Optional[NormalFormConfig] = None) -> UniSeries:
    """Restriction to the diagonal: z -> L(z, z)."""
    config = resolve(config)
    totals: Dict[int, Any] = {}
    for (j, k), value in series.items():
        totals[j + k] = totals.get(j + k, 0) + value
    real = series.hermitian_defect() <= config.tolerance * max(mp.mpf(1), series.max_abs())
    if real:
        totals = {n: mp.mpc(value.real) for n, value in totals.items()}
    return UniSeries(series.order, totals, real, "z", config)


def invert_uni(series: UniSeries, config: Optional[NormalFormConfig] = None) -> UniSeries:
    """
    Compositional inverse of g = a u + O(u^2)

    Solves h = (u - g_{>=2}(h)) / a one degree at a time.

    Raises:
        ConstantTermError: g(0) != 0
        VanishingLinearPartError: a == 0
    """
    config = resolve(config)
    series = _strip_constant(series, config)
    linear = series.coeff(1)
    if abs(linear) <= config.tolerance * max(mp.mpf(1), series.max_abs()):
        raise VanishingLinearPartError("Cannot invert a series without linear part")
    order = series.order
    higher = series - UniSeries.monomial(1, order, linear, series.variable)
    inverse_linear = 1 / linear
    result = UniSeries(1, {1: inverse_linear}, False, series.variable)
    for degree in range(2, order + 1):
        previous = result.with_order(degree)
        composed = compose_uni(higher.with_order(degree), previous, config)
        result = (UniSeries.identity(degree, series.variable) - composed).scale(inverse_linear)
    result = result.with_order(order)
    if series.real:
        result = result.realified(config)
    return result


def invert_bi_pair(series: BiSeries, config: Optional[NormalFormConfig] = None) -> BiSeries:
    """
    Inverse of the pair map (z, w) -> (Φ, Φ~) for Φ = a z + O(2)

    Returns Ψ with Φ(Ψ, Ψ~) = z through the order of Φ.
    """
    config = resolve(config)
    series = _strip_constant(series, config)
    scale = max(mp.mpf(1), series.max_abs())
    linear = series.coeff(1, 0)
    if abs(linear) <= config.tolerance * scale:
        raise VanishingLinearPartError("Cannot invert a pair map without z-linear part")
    if abs(series.coeff(0, 1)) > config.tolerance * scale:
        raise ValueError("Pair inversion requires a linear part without w-term")
    order = series.order
    higher = series - BiSeries.monomial(1, 0, order, linear, series.variables) - \
        BiSeries.monomial(0, 1, order, series.coeff(0, 1), series.variables)
    inverse_linear = 1 / linear
    result = BiSeries(1, {(1, 0): inverse_linear}, series.variables)
    for degree in range(2, order + 1):
        previous = result.with_order(degree)
        composed = compose_bi(higher.with_order(degree), previous, previous.tilde(), config)
        result = (BiSeries.first(degree, series.variables) - composed).scale(inverse_linear)
    return result.with_order(order)
