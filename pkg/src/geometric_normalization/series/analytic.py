"""
Analytic Substitutions - sqrt, exp, log and reciprocal applied to truncated series
"""

import logging
from typing import Any, Dict, Optional, Union

from mpmath import mp

from geometric_normalization.config import NormalFormConfig, resolve
from geometric_normalization.exceptions import LeadingTermError
from geometric_normalization.series.bi import BiSeries
from geometric_normalization.series.compose import compose_uni, compose_uni_bi
from geometric_normalization.series.uni import UniSeries

logger = logging.getLogger(__name__)

Series = Union[BiSeries, UniSeries]


def _constant(series: Series) -> Any:
    return series.coeff(0, 0) if isinstance(series, BiSeries) else series.coeff(0)


def _require_constant(series: Series, expected: Any, name: str, config: NormalFormConfig) -> None:
    constant = _constant(series)
    if abs(constant - expected) > config.tolerance * max(mp.mpf(1), abs(expected)):
        raise LeadingTermError(f"{name} requires constant term {expected}, got {mp.nstr(constant, 8)}")


def _apply(coefficients: Dict[int, Any], series: Series, config: NormalFormConfig) -> Series:
    outer = UniSeries(series.order, coefficients, True, "t", config)
    if isinstance(series, BiSeries):
        return compose_uni_bi(outer, series, config)
    return compose_uni(outer, series, config)


def sqrt1p(series: Series, config: Optional[NormalFormConfig] = None) -> Series:
    """sqrt(1 + u) for u without constant term."""
    config = resolve(config)
    _require_constant(series, 0, "sqrt1p", config)
    half = mp.mpf(1) / 2
    coefficients = {n: mp.binomial(half, n) for n in range(series.order + 1)}
    return _apply(coefficients, series, config)


def sqrt(series: Series, config: Optional[NormalFormConfig] = None) -> Series:
    """Principal square root of a series with constant term 1."""
    config = resolve(config)
    _require_constant(series, 1, "sqrt", config)
    return sqrt1p(series - 1, config)


def exp(series: Series, config: Optional[NormalFormConfig] = None) -> Series:
    config = resolve(config)
    _require_constant(series, 0, "exp", config)
    coefficients = {n: 1 / mp.factorial(n) for n in range(series.order + 1)}
    return _apply(coefficients, series, config)


def log1p(series: Series, config: Optional[NormalFormConfig] = None) -> Series:
    """log(1 + u) for u without constant term."""
    config = resolve(config)
    _require_constant(series, 0, "log1p", config)
    coefficients = {n: mp.mpf((-1) ** (n + 1)) / n for n in range(1, series.order + 1)}
    return _apply(coefficients, series, config)


def log(series: Series, config: Optional[NormalFormConfig] = None) -> Series:
    """Principal logarithm of a series with constant term 1."""
    config = resolve(config)
    _require_constant(series, 1, "log", config)
    return log1p(series - 1, config)


def reciprocal(series: Series, config: Optional[NormalFormConfig] = None) -> Series:
    """1 / a for a series with nonzero constant term."""
    config = resolve(config)
    constant = _constant(series)
    if constant == 0:
        raise LeadingTermError("reciprocal requires a nonzero constant term")
    normalized = series.scale(1 / constant) - 1
    coefficients = {n: (-1) ** n for n in range(series.order + 1)}
    return _apply(coefficients, normalized, config).scale(1 / constant)
