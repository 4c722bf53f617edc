"""
Charts - change of variables between (z, w) and real coordinates (x, y)
"""

from typing import Optional

from mpmath import mp

from geometric_normalization.config import NormalFormConfig
from geometric_normalization.series.bi import BiSeries
from geometric_normalization.series.compose import compose_bi


def xy_to_zw(series: BiSeries, config: Optional[NormalFormConfig] = None) -> BiSeries:
    """Rewrite P(x, y) in z, w via x = (z + w)/2, y = (z - w)/(2i)."""
    if series.variables != "xy":
        raise ValueError(f"Expected a series in (x, y), got '{series.variables}'")
    order = series.order
    half = mp.mpf(1) / 2
    x = BiSeries(order, {(1, 0): half, (0, 1): half})
    y = BiSeries(order, {(1, 0): -half * 1j, (0, 1): half * 1j})
    return compose_bi(series, x, y, config)


def zw_to_xy(series: BiSeries, config: Optional[NormalFormConfig] = None) -> BiSeries:
    """Rewrite P(z, w) in x, y via z = x + iy, w = x - iy."""
    if series.variables != "zw":
        raise ValueError(f"Expected a series in (z, w), got '{series.variables}'")
    order = series.order
    z = BiSeries(order, {(1, 0): 1, (0, 1): 1j}, "xy")
    w = BiSeries(order, {(1, 0): 1, (0, 1): -1j}, "xy")
    return compose_bi(series, z, w, config)
