"""
Bivariate Series - truncated series Σ c_jk z^j w^k in the complex-extension variables
"""

import logging
from typing import Any, Dict, Iterator, List, Optional, Tuple

from mpmath import mp

from geometric_normalization.config import NormalFormConfig, resolve
from geometric_normalization.exceptions import OrderMismatchError

logger = logging.getLogger(__name__)

Index = Tuple[int, int]

BIVARIATE_VARIABLES = ("zw", "xy")


def multiply_truncated(left: Dict[Index, Any], right: Dict[Index, Any], order: int) -> Dict[Index, Any]:
    """Product of two coefficient maps, dropping every term of total degree above order."""
    product: Dict[Index, Any] = {}
    right_items = sorted(right.items(), key=lambda item: item[0][0] + item[0][1])
    for (j1, k1), c1 in left.items():
        budget = order - j1 - k1
        if budget < 0:
            continue
        for (j2, k2), c2 in right_items:
            if j2 + k2 > budget:
                break
            key = (j1 + j2, k1 + k2)
            product[key] = product.get(key, 0) + c1 * c2
    return {key: value for key, value in product.items() if value != 0}


class BiSeries:
    """
    Truncated bivariate power series with mpmath complex coefficients.

    Only nonzero coefficients are stored. Terms above the truncation order are
    dropped on construction, so every operation stays closed at ``order``.
    ``variables`` names the chart: ``"zw"`` (z and its formal conjugate w) or
    ``"xy"`` (real coordinates).
    """

    __slots__ = ("order", "variables", "_coeffs")

    def __init__(self, order: int, coeffs: Optional[Dict[Index, Any]] = None, variables: str = "zw"):
        if order < 0:
            raise ValueError(f"Truncation order must be non-negative, got {order}")
        if variables not in BIVARIATE_VARIABLES:
            raise ValueError(f"Unknown bivariate chart '{variables}'")
        self.order = order
        self.variables = variables
        cleaned: Dict[Index, Any] = {}
        for (j, k), value in (coeffs or {}).items():
            if j < 0 or k < 0:
                raise ValueError(f"Negative exponent in index {(j, k)}")
            if j + k > order:
                continue
            coefficient = mp.mpc(value)
            if coefficient != 0:
                cleaned[(j, k)] = coefficient
        self._coeffs = cleaned

    @classmethod
    def _trusted(cls, order: int, coeffs: Dict[Index, Any], variables: str) -> "BiSeries":
        # coeffs already hold nonzero mpc values within the order
        series = cls.__new__(cls)
        series.order = order
        series.variables = variables
        series._coeffs = coeffs
        return series

    # Constructors

    @classmethod
    def zero(cls, order: int, variables: str = "zw") -> "BiSeries":
        return cls(order, {}, variables)

    @classmethod
    def one(cls, order: int, variables: str = "zw") -> "BiSeries":
        return cls(order, {(0, 0): 1}, variables)

    @classmethod
    def monomial(cls, j: int, k: int, order: int, coeff: Any = 1, variables: str = "zw") -> "BiSeries":
        return cls(order, {(j, k): coeff}, variables)

    @classmethod
    def first(cls, order: int, variables: str = "zw") -> "BiSeries":
        """The first chart variable (z or x)."""
        return cls.monomial(1, 0, order, 1, variables)

    @classmethod
    def second(cls, order: int, variables: str = "zw") -> "BiSeries":
        """The second chart variable (w or y)."""
        return cls.monomial(0, 1, order, 1, variables)

    @classmethod
    def product_monomial(cls, order: int) -> "BiSeries":
        """ν(z, w) = zw."""
        return cls.monomial(1, 1, order)

    # Access

    def coeff(self, j: int, k: int) -> Any:
        return self._coeffs.get((j, k), mp.mpc(0))

    def __getitem__(self, index: Index) -> Any:
        return self.coeff(*index)

    def items(self) -> Iterator[Tuple[Index, Any]]:
        return iter(self._coeffs.items())

    def indices(self) -> List[Index]:
        return sorted(self._coeffs)

    def as_dict(self) -> Dict[Index, Any]:
        return dict(self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __repr__(self) -> str:
        return f"BiSeries(order={self.order}, vars={self.variables!r}, terms={len(self._coeffs)})"

    def constant_term(self) -> Any:
        return self.coeff(0, 0)

    def homogeneous_part(self, degree: int) -> Dict[Index, Any]:
        return {key: value for key, value in self._coeffs.items() if key[0] + key[1] == degree}

    def valuation(self) -> Optional[int]:
        """Lowest total degree carrying a nonzero coefficient (None for the zero series)."""
        if not self._coeffs:
            return None
        return min(j + k for j, k in self._coeffs)

    def max_abs(self) -> Any:
        if not self._coeffs:
            return mp.mpf(0)
        return max(abs(value) for value in self._coeffs.values())

    def max_abs_difference(self, other: "BiSeries") -> Any:
        """Largest coefficient difference through the common truncation order."""
        order = min(self.order, other.order)
        return (self.truncate(order) - other.truncate(order)).max_abs()

    def hermitian_defect(self) -> Any:
        """max |c_jk - conj(c_kj)|, zero for series real on w = conj(z)."""
        defect = mp.mpf(0)
        for (j, k), value in self._coeffs.items():
            defect = max(defect, abs(value - mp.conj(self.coeff(k, j))))
        return defect

    def _check_compatible(self, other: "BiSeries") -> None:
        if not isinstance(other, BiSeries):
            raise TypeError(f"Expected BiSeries, got {type(other).__name__}")
        if self.order != other.order:
            raise OrderMismatchError(f"Order mismatch: {self.order} vs {other.order}")
        if self.variables != other.variables:
            raise ValueError(f"Chart mismatch: {self.variables} vs {other.variables}")

    # Ring operations

    def __add__(self, other: Any) -> "BiSeries":
        if not isinstance(other, BiSeries):
            return self + BiSeries(self.order, {(0, 0): other}, self.variables)
        self._check_compatible(other)
        result = dict(self._coeffs)
        for key, value in other._coeffs.items():
            result[key] = result.get(key, 0) + value
        return BiSeries._trusted(self.order, {k: v for k, v in result.items() if v != 0}, self.variables)

    __radd__ = __add__

    def __neg__(self) -> "BiSeries":
        return BiSeries._trusted(self.order, {k: -v for k, v in self._coeffs.items()}, self.variables)

    def __sub__(self, other: Any) -> "BiSeries":
        return self + (-other)

    def __rsub__(self, other: Any) -> "BiSeries":
        return (-self) + other

    def scale(self, factor: Any) -> "BiSeries":
        factor = mp.mpc(factor)
        if factor == 0:
            return BiSeries.zero(self.order, self.variables)
        return BiSeries._trusted(self.order, {k: v * factor for k, v in self._coeffs.items()}, self.variables)

    def __mul__(self, other: Any) -> "BiSeries":
        if not isinstance(other, BiSeries):
            return self.scale(other)
        self._check_compatible(other)
        return BiSeries._trusted(self.order, multiply_truncated(self._coeffs, other._coeffs, self.order),
                                 self.variables)

    def __rmul__(self, other: Any) -> "BiSeries":
        return self.scale(other)

    def __truediv__(self, other: Any) -> "BiSeries":
        return self.scale(1 / mp.mpc(other))

    def __pow__(self, exponent: int) -> "BiSeries":
        if exponent < 0:
            raise ValueError("Negative powers are not supported; use analytic.reciprocal")
        result = BiSeries.one(self.order, self.variables)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    # Structural operations

    def tilde(self) -> "BiSeries":
        """f~(z, w) = conj(f(conj w, conj z)): swap exponents and conjugate coefficients."""
        return BiSeries._trusted(self.order, {(k, j): mp.conj(v) for (j, k), v in self._coeffs.items()},
                                 self.variables)

    def truncate(self, order: int) -> "BiSeries":
        order = min(order, self.order)
        return self.with_order(order)

    def with_order(self, order: int) -> "BiSeries":
        """Re-truncate or zero-pad to a new order."""
        if order < 0:
            raise ValueError(f"Truncation order must be non-negative, got {order}")
        kept = {key: value for key, value in self._coeffs.items() if key[0] + key[1] <= order}
        return BiSeries._trusted(order, kept, self.variables)

    def lower_part(self, degree: int) -> "BiSeries":
        """Terms of total degree strictly below degree, at the same order."""
        kept = {key: value for key, value in self._coeffs.items() if key[0] + key[1] < degree}
        return BiSeries._trusted(self.order, kept, self.variables)

    def derivative(self, variable: int) -> "BiSeries":
        """Partial derivative in the first (0) or second (1) chart variable; order drops by one."""
        if variable not in (0, 1):
            raise ValueError("variable must be 0 or 1")
        result: Dict[Index, Any] = {}
        for (j, k), value in self._coeffs.items():
            exponent = j if variable == 0 else k
            if exponent == 0:
                continue
            key = (j - 1, k) if variable == 0 else (j, k - 1)
            result[key] = value * exponent
        return BiSeries._trusted(max(self.order - 1, 0), result, self.variables)

    def divide_by_monomial(self, j: int, k: int, order: Optional[int] = None) -> "BiSeries":
        """Exact division by z^j w^k; every term must be divisible."""
        result: Dict[Index, Any] = {}
        for (a, b), value in self._coeffs.items():
            if a < j or b < k:
                raise ValueError(f"Term {(a, b)} is not divisible by {(j, k)}")
            result[(a - j, b - k)] = value
        target = self.order - j - k if order is None else order
        return BiSeries._trusted(target, {key: v for key, v in result.items() if sum(key) <= target},
                                 self.variables)

    def off_diagonal_max(self) -> Any:
        values = [abs(v) for (j, k), v in self._coeffs.items() if j != k]
        return max(values) if values else mp.mpf(0)

    def diagonal_coefficients(self) -> Dict[int, Any]:
        """n -> c_nn."""
        return {j: value for (j, k), value in self._coeffs.items() if j == k}

    def evaluate(self, first: Any, second: Any) -> Any:
        total = mp.mpc(0)
        for (j, k), value in self._coeffs.items():
            total += value * mp.power(first, j) * mp.power(second, k)
        return total


class HermitianBiSeries(BiSeries):
    """A BiSeries with c_jk = conj(c_kj) to working tolerance (real on w = conj(z))."""

    __slots__ = ()

    def __init__(self, order: int, coeffs: Optional[Dict[Index, Any]] = None, variables: str = "zw",
                 config: Optional[NormalFormConfig] = None):
        super().__init__(order, coeffs, variables)
        config = resolve(config)
        scale = max(mp.mpf(1), self.max_abs())
        defect = self.hermitian_defect()
        if defect > config.tolerance * scale:
            raise ValueError(f"Series is not Hermitian: defect {mp.nstr(defect, 5)}")

    @classmethod
    def from_series(cls, series: BiSeries, config: Optional[NormalFormConfig] = None) -> "HermitianBiSeries":
        return cls(series.order, series.as_dict(), series.variables, config)

    def diagonal_value(self, n: int) -> Any:
        """Real part of c_nn."""
        return self.coeff(n, n).real
