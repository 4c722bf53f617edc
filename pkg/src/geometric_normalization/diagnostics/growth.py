"""
Coefficient Growth - per-degree size tables and least-squares growth slopes

The profile never asserts divergence; it reports how log max|coeff| grows
against n and against n·log n, and flags the second fit when it is both
steep and tighter than the first.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, List, Optional, Union

import numpy as np
from mpmath import mp

from geometric_normalization.config import NormalFormConfig, resolve
from geometric_normalization.series.bi import BiSeries
from geometric_normalization.series.uni import UniSeries

logger = logging.getLogger(__name__)


@dataclass
class GrowthRow:
    n: int
    max_abs: Any
    nth_root: Any


@dataclass
class GrowthProfile:
    """Raw per-degree table plus the two least-squares slopes."""
    rows: List[GrowthRow] = field(default_factory=list)
    linear_slope: Optional[float] = None
    factorial_slope: Optional[float] = None
    linear_residual: Optional[float] = None
    factorial_residual: Optional[float] = None
    factorial_growth: bool = False

    @property
    def radius_estimate(self) -> Optional[float]:
        """exp(-slope) of the linear fit, a Cauchy-Hadamard style estimate."""
        if self.linear_slope is None:
            return None
        return float(np.exp(-self.linear_slope))

    def csv_rows(self) -> List[str]:
        lines = ["n,max_abs,nth_root"]
        for row in self.rows:
            lines.append(f"{row.n},{mp.nstr(row.max_abs, 15)},{mp.nstr(row.nth_root, 15)}")
        return lines


def _degree_maxima(series: Union[BiSeries, UniSeries]) -> List[Any]:
    maxima = [mp.mpf(0)] * (series.order + 1)
    if isinstance(series, BiSeries):
        for (j, k), value in series.items():
            maxima[j + k] = max(maxima[j + k], abs(value))
    else:
        for n, value in series.items():
            maxima[n] = max(maxima[n], abs(value))
    return maxima


def _fit(x: np.ndarray, y: np.ndarray):
    coefficients, residuals, _, _, _ = np.polyfit(x, y, 1, full=True)
    residual = float(residuals[0]) if len(residuals) else 0.0
    return float(coefficients[0]), residual


def growth_profile(series: Union[BiSeries, UniSeries], config: Optional[NormalFormConfig] = None) -> GrowthProfile:
    """
    (n, max |coeff of degree n|, (max |coeff|)^{1/n}) for n >= 1 with nonzero entries

    Raises:
        ValueError: order below 4
    """
    config = resolve(config)
    if series.order < 4:
        raise ValueError(f"Growth profiles need order >= 4, got {series.order}")
    profile = GrowthProfile()
    for n, size in enumerate(_degree_maxima(series)):
        if n >= 1 and size > 0:
            profile.rows.append(GrowthRow(n, size, mp.root(size, n)))
    if len(profile.rows) < 3:
        logger.debug(f"Only {len(profile.rows)} nonzero degrees; no slopes fitted")
        return profile

    degrees = np.array([row.n for row in profile.rows], dtype=float)
    logs = np.array([float(mp.log(row.max_abs)) for row in profile.rows])
    profile.linear_slope, profile.linear_residual = _fit(degrees, logs)
    profile.factorial_slope, profile.factorial_residual = _fit(degrees * np.log(degrees), logs)
    profile.factorial_growth = (profile.factorial_slope >= config.factorial_slope_threshold
                                and profile.factorial_residual < profile.linear_residual)
    logger.debug(f"Growth slopes: linear {profile.linear_slope:.4f}, n log n {profile.factorial_slope:.4f}")
    return profile
