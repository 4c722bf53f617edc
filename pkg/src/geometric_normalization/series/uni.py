"""
Univariate Series - truncated series Σ c_n u^n used for Γ, ρ, τ, ℓ and holomorphic maps
"""

import logging
from typing import Any, Dict, Iterator, Optional, Tuple

from mpmath import mp

from geometric_normalization.config import NormalFormConfig, resolve
from geometric_normalization.exceptions import OrderMismatchError

logger = logging.getLogger(__name__)


class UniSeries:
    """
    Truncated univariate power series with mpmath coefficients.

    When ``real`` is set every coefficient must have a negligible imaginary
    part; it is stripped on construction. ``variable`` is a display name only
    ("z", "R" for the radial variable zw, "u" for curve parameters).
    """

    __slots__ = ("order", "real", "variable", "_coeffs")

    def __init__(self, order: int, coeffs: Optional[Dict[int, Any]] = None, real: bool = False,
                 variable: str = "z", config: Optional[NormalFormConfig] = None):
        if order < 0:
            raise ValueError(f"Truncation order must be non-negative, got {order}")
        self.order = order
        self.real = real
        self.variable = variable
        tolerance = resolve(config).tolerance
        cleaned: Dict[int, Any] = {}
        for n, value in (coeffs or {}).items():
            if n < 0:
                raise ValueError(f"Negative exponent {n}")
            if n > order:
                continue
            coefficient = mp.mpc(value)
            if real:
                if abs(coefficient.imag) > tolerance * max(1, abs(coefficient)):
                    raise ValueError(
                        f"Coefficient {n} has imaginary part {mp.nstr(coefficient.imag, 5)} in a real series"
                    )
                coefficient = mp.mpc(coefficient.real)
            if coefficient != 0:
                cleaned[n] = coefficient
        self._coeffs = cleaned

    @classmethod
    def _trusted(cls, order: int, coeffs: Dict[int, Any], real: bool, variable: str) -> "UniSeries":
        series = cls.__new__(cls)
        series.order = order
        series.real = real
        series.variable = variable
        series._coeffs = coeffs
        return series

    @classmethod
    def zero(cls, order: int, variable: str = "z") -> "UniSeries":
        return cls(order, {}, True, variable)

    @classmethod
    def one(cls, order: int, variable: str = "z") -> "UniSeries":
        return cls(order, {0: 1}, True, variable)

    @classmethod
    def identity(cls, order: int, variable: str = "z") -> "UniSeries":
        return cls(order, {1: 1}, True, variable)

    @classmethod
    def monomial(cls, n: int, order: int, coeff: Any = 1, variable: str = "z") -> "UniSeries":
        return cls(order, {n: coeff}, False, variable)

    def coeff(self, n: int) -> Any:
        return self._coeffs.get(n, mp.mpc(0))

    def __getitem__(self, n: int) -> Any:
        return self.coeff(n)

    def items(self) -> Iterator[Tuple[int, Any]]:
        return iter(sorted(self._coeffs.items()))

    def as_dict(self) -> Dict[int, Any]:
        return dict(self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __repr__(self) -> str:
        kind = "real" if self.real else "complex"
        return f"UniSeries(order={self.order}, {kind}, var={self.variable!r}, terms={len(self._coeffs)})"

    def valuation(self) -> Optional[int]:
        return min(self._coeffs) if self._coeffs else None

    def max_abs(self) -> Any:
        if not self._coeffs:
            return mp.mpf(0)
        return max(abs(value) for value in self._coeffs.values())

    def max_abs_difference(self, other: "UniSeries") -> Any:
        order = min(self.order, other.order)
        return (self.truncate(order) - other.truncate(order)).max_abs()

    def _check_compatible(self, other: "UniSeries") -> None:
        if not isinstance(other, UniSeries):
            raise TypeError(f"Expected UniSeries, got {type(other).__name__}")
        if self.order != other.order:
            raise OrderMismatchError(f"Order mismatch: {self.order} vs {other.order}")

    def __add__(self, other: Any) -> "UniSeries":
        if not isinstance(other, UniSeries):
            other = mp.mpc(other)
            return self + UniSeries(self.order, {0: other}, other.imag == 0, self.variable)
        self._check_compatible(other)
        result = dict(self._coeffs)
        for n, value in other._coeffs.items():
            result[n] = result.get(n, 0) + value
        return UniSeries._trusted(self.order, {n: v for n, v in result.items() if v != 0},
                                  self.real and other.real, self.variable)

    __radd__ = __add__

    def __neg__(self) -> "UniSeries":
        return UniSeries._trusted(self.order, {n: -v for n, v in self._coeffs.items()}, self.real, self.variable)

    def __sub__(self, other: Any) -> "UniSeries":
        return self + (-other)

    def __rsub__(self, other: Any) -> "UniSeries":
        return (-self) + other

    def scale(self, factor: Any) -> "UniSeries":
        factor = mp.mpc(factor)
        if factor == 0:
            return UniSeries.zero(self.order, self.variable)
        real = self.real and factor.imag == 0
        return UniSeries._trusted(self.order, {n: v * factor for n, v in self._coeffs.items()}, real, self.variable)

    def __mul__(self, other: Any) -> "UniSeries":
        if not isinstance(other, UniSeries):
            return self.scale(other)
        self._check_compatible(other)
        product: Dict[int, Any] = {}
        right = sorted(other._coeffs.items())
        for n1, c1 in self._coeffs.items():
            for n2, c2 in right:
                if n1 + n2 > self.order:
                    break
                product[n1 + n2] = product.get(n1 + n2, 0) + c1 * c2
        return UniSeries._trusted(self.order, {n: v for n, v in product.items() if v != 0},
                                  self.real and other.real, self.variable)

    def __rmul__(self, other: Any) -> "UniSeries":
        return self.scale(other)

    def __truediv__(self, other: Any) -> "UniSeries":
        return self.scale(1 / mp.mpc(other))

    def __pow__(self, exponent: int) -> "UniSeries":
        if exponent < 0:
            raise ValueError("Negative powers are not supported; use analytic.reciprocal")
        result = UniSeries.one(self.order, self.variable)
        for _ in range(exponent):
            result = result * self
        return result

    def truncate(self, order: int) -> "UniSeries":
        return self.with_order(min(order, self.order))

    def with_order(self, order: int) -> "UniSeries":
        if order < 0:
            raise ValueError(f"Truncation order must be non-negative, got {order}")
        kept = {n: v for n, v in self._coeffs.items() if n <= order}
        return UniSeries._trusted(order, kept, self.real, self.variable)

    def with_variable(self, variable: str) -> "UniSeries":
        return UniSeries._trusted(self.order, dict(self._coeffs), self.real, variable)

    def realified(self, config: Optional[NormalFormConfig] = None) -> "UniSeries":
        """Same series flagged real; raises ValueError if an imaginary part is not negligible."""
        return UniSeries(self.order, self._coeffs, True, self.variable, config)

    def conjugate(self) -> "UniSeries":
        """Series with conjugated coefficients (c-bar for a curve c)."""
        return UniSeries._trusted(self.order, {n: mp.conj(v) for n, v in self._coeffs.items()},
                                  self.real, self.variable)

    def derivative(self) -> "UniSeries":
        result = {n - 1: v * n for n, v in self._coeffs.items() if n > 0}
        return UniSeries._trusted(max(self.order - 1, 0), result, self.real, self.variable)

    def shift(self, power: int) -> "UniSeries":
        """Multiply by u^power, keeping the order."""
        kept = {n + power: v for n, v in self._coeffs.items() if n + power <= self.order}
        return UniSeries._trusted(self.order, kept, self.real, self.variable)

    def divide_by_power(self, power: int, config: Optional[NormalFormConfig] = None) -> "UniSeries":
        """Exact division by u^power; lower coefficients must vanish to tolerance. Order drops by power."""
        tolerance = resolve(config).tolerance
        scale = max(mp.mpf(1), self.max_abs())
        for n, value in self._coeffs.items():
            if n < power and abs(value) > tolerance * scale:
                raise ValueError(f"Coefficient {n} does not vanish; cannot divide by u^{power}")
        kept = {n - power: v for n, v in self._coeffs.items() if n >= power}
        return UniSeries._trusted(self.order - power, kept, self.real, self.variable)

    def odd_part(self) -> "UniSeries":
        return UniSeries._trusted(self.order, {n: v for n, v in self._coeffs.items() if n % 2},
                                  self.real, self.variable)

    def even_part(self) -> "UniSeries":
        return UniSeries._trusted(self.order, {n: v for n, v in self._coeffs.items() if n % 2 == 0},
                                  self.real, self.variable)

    def evaluate(self, point: Any) -> Any:
        return mp.fsum(value * mp.power(point, n) for n, value in self._coeffs.items())
