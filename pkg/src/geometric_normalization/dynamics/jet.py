"""
Diffeomorphism Jets - F(z) = λz + Σ_{2<=j+k<=N} F_jk z^j z̄^k
"""

import logging
from typing import Any, Dict, Optional, Tuple

import numpy as np
from mpmath import mp

from geometric_normalization.arithmetic.rotation import RotationNumber, as_rotation_number
from geometric_normalization.config import NormalFormConfig, resolve, small_divisor_floor
from geometric_normalization.exceptions import SmallDivisorError
from geometric_normalization.series.bi import BiSeries
from geometric_normalization.series.uni import UniSeries

logger = logging.getLogger(__name__)

Index = Tuple[int, int]


def check_non_resonance(lam: Any, degree: int, config: Optional[NormalFormConfig] = None) -> None:
    """
    Guard |1 - λ^m| >= 2^(-precision/4) for 1 <= m <= degree

    Raises:
        SmallDivisorError: first offending m
    """
    floor = small_divisor_floor(config)
    power = mp.mpc(1)
    for m in range(1, degree + 1):
        power *= lam
        if abs(1 - power) < floor:
            raise SmallDivisorError(f"|1 - λ^{m}| = {mp.nstr(abs(1 - power), 5)} is below the guard floor",
                                    degree=m)


class DiffeoJet:
    """
    A truncated germ with linear part λz, λ = e^{2πiω}.

    Instances are immutable; ``with_coefficients`` and ``with_order`` return
    new jets. Coefficients of total degree above ``order`` are dropped.
    """

    __slots__ = ("omega", "lam", "order", "odd", "_coeffs", "_series")

    def __init__(self, omega: Any, coeffs: Optional[Dict[Index, Any]] = None, order: int = 2,
                 odd: bool = False, config: Optional[NormalFormConfig] = None,
                 check_resonance: bool = True):
        config = resolve(config)
        if order < 1:
            raise ValueError(f"Jet order must be >= 1, got {order}")
        self.omega: RotationNumber = as_rotation_number(omega)
        self.lam = self.omega.lam
        self.order = order
        self.odd = odd
        cleaned: Dict[Index, Any] = {}
        for (j, k), value in (coeffs or {}).items():
            if j < 0 or k < 0:
                raise ValueError(f"Negative exponent in index {(j, k)}")
            if j + k < 2:
                raise ValueError(f"Index {(j, k)} is in the fixed linear part")
            if j + k > order:
                continue
            coefficient = mp.mpc(value)
            if coefficient == 0:
                continue
            if odd and (j + k) % 2 == 0:
                raise ValueError(f"Odd jet has an even-degree coefficient at {(j, k)}")
            cleaned[(j, k)] = coefficient
        self._coeffs = cleaned
        self._series: Optional[BiSeries] = None
        if check_resonance:
            check_non_resonance(self.lam, 2 * order, config)

    def coefficient(self, j: int, k: int) -> Any:
        if (j, k) == (1, 0):
            return self.lam
        return self._coeffs.get((j, k), mp.mpc(0))

    def coefficients(self) -> Dict[Index, Any]:
        """Nonlinear coefficients."""
        return dict(self._coeffs)

    @property
    def series(self) -> BiSeries:
        """λz + Σ F_jk z^j w^k as a BiSeries of the jet's order."""
        if self._series is None:
            coeffs = dict(self._coeffs)
            coeffs[(1, 0)] = self.lam
            self._series = BiSeries(self.order, coeffs)
        return self._series

    def with_coefficients(self, updates: Dict[Index, Any]) -> "DiffeoJet":
        coeffs = dict(self._coeffs)
        coeffs.update(updates)
        return self._rebuilt(coeffs, self.order)

    def with_order(self, order: int) -> "DiffeoJet":
        return self._rebuilt(self._coeffs, order)

    def _rebuilt(self, coeffs: Dict[Index, Any], order: int) -> "DiffeoJet":
        jet = DiffeoJet.__new__(DiffeoJet)
        jet.omega = self.omega
        jet.lam = self.lam
        jet.order = order
        jet.odd = self.odd
        cleaned = {}
        for (j, k), value in coeffs.items():
            if j + k > order:
                continue
            value = mp.mpc(value)
            if value == 0:
                continue
            if self.odd and (j + k) % 2 == 0:
                raise ValueError(f"Odd jet has an even-degree coefficient at {(j, k)}")
            cleaned[(j, k)] = value
        jet._coeffs = cleaned
        jet._series = None
        return jet

    def is_holomorphic(self, tolerance: Optional[float] = None) -> bool:
        """True when every coefficient with a z̄ factor vanishes."""
        tolerance = resolve(None).tolerance if tolerance is None else tolerance
        return all(abs(v) <= tolerance for (j, k), v in self._coeffs.items() if k > 0)

    def as_univariate(self) -> UniSeries:
        """The holomorphic part λz + Σ F_n0 z^n."""
        coeffs = {j: v for (j, k), v in self._coeffs.items() if k == 0}
        coeffs[1] = self.lam
        return UniSeries(self.order, coeffs, False, "z")

    @classmethod
    def from_univariate(cls, omega: Any, series: UniSeries, config: Optional[NormalFormConfig] = None,
                        check_resonance: bool = True) -> "DiffeoJet":
        """Holomorphic jet from λz + Σ f_n z^n; the linear coefficient is replaced by λ."""
        coeffs = {(n, 0): v for n, v in series.items() if n >= 2}
        return cls(omega, coeffs, series.order, False, config, check_resonance)

    def __repr__(self) -> str:
        return f"DiffeoJet(omega={self.omega}, order={self.order}, terms={len(self._coeffs)}, odd={self.odd})"


def random_jet(omega: Any, degree: int, order: int, seed: Optional[int] = None, bound: float = 1.0,
               odd: bool = False, holomorphic: bool = False,
               config: Optional[NormalFormConfig] = None) -> DiffeoJet:
    """
    Jet with random coefficients of modulus <= bound in degrees 2..degree

    Args:
        omega: Rotation number
        degree: Highest degree carrying random coefficients
        order: Truncation order of the jet
        seed: Seed for numpy's Generator
        bound: Modulus bound on every coefficient
        odd: Keep odd degrees only
        holomorphic: Keep z^n terms only
    """
    rng = np.random.default_rng(seed)
    coeffs: Dict[Index, Any] = {}
    for total in range(2, min(degree, order) + 1):
        if odd and total % 2 == 0:
            continue
        for j in range(total, -1, -1):
            k = total - j
            if holomorphic and k > 0:
                continue
            radius = bound * float(rng.uniform(0.0, 1.0))
            angle = float(rng.uniform(0.0, 1.0))
            coeffs[(j, k)] = mp.mpf(radius) * mp.expjpi(2 * mp.mpf(angle))
    return DiffeoJet(omega, coeffs, order, odd, config)
