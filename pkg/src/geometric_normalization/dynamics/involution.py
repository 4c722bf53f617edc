"""
Foliation Involutions - τ(z) = -z + O(z^2) with Λ∘τ = Λ for Λ(z) = L(z, z)

Two independent computations are provided: the closed form τ = ℓ⁻¹∘(-ℓ)
with ℓ = z·sqrt(Λ/z²), and a degree-by-degree recursion on the coefficients
of Λ that needs no square root or inversion.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional, Union

from mpmath import mp

from geometric_normalization.config import NormalFormConfig, resolve
from geometric_normalization.exceptions import LeadingTermError, NotAnInvolutionError
from geometric_normalization.series.analytic import sqrt
from geometric_normalization.series.bi import BiSeries
from geometric_normalization.series.compose import compose_uni, diagonal, invert_uni
from geometric_normalization.series.uni import UniSeries

logger = logging.getLogger(__name__)


@dataclass
class Involution:
    """A formal involution tangent to -Id."""
    tau: UniSeries

    @property
    def order(self) -> int:
        return self.tau.order

    def coefficient(self, n: int) -> Any:
        return self.tau.coeff(n)

    def defect(self, config: Optional[NormalFormConfig] = None) -> Any:
        """max |[τ∘τ - Id]_n|."""
        squared = compose_uni(self.tau, self.tau, config)
        return (squared - UniSeries.identity(squared.order)).max_abs()

    def check(self, config: Optional[NormalFormConfig] = None) -> "Involution":
        config = resolve(config)
        defect = self.defect(config)
        if defect > config.tolerance * max(mp.mpf(1), self.tau.max_abs()):
            raise NotAnInvolutionError(f"τ∘τ differs from Id by {mp.nstr(defect, 5)}")
        return self


def _diagonal_of(series: Union[BiSeries, UniSeries], config: NormalFormConfig) -> UniSeries:
    if isinstance(series, BiSeries):
        return diagonal(series, config)
    return series


def _check_quadratic_start(values: UniSeries, config: NormalFormConfig) -> None:
    scale = max(mp.mpf(1), values.max_abs())
    if abs(values.coeff(0)) + abs(values.coeff(1)) > config.tolerance * scale:
        raise LeadingTermError("Λ must start at z^2")
    if abs(values.coeff(2) - 1) > config.tolerance * scale:
        raise LeadingTermError(f"Λ must have z^2 coefficient 1, got {mp.nstr(values.coeff(2), 8)}")


def ell_of(series: Union[BiSeries, UniSeries], config: Optional[NormalFormConfig] = None) -> UniSeries:
    """
    ℓ(z) = z·sqrt(Λ(z)/z²), the odd-symmetric square root of Λ = L(z, z)

    The result has order N - 1 for L of order N.
    """
    config = resolve(config)
    values = _diagonal_of(series, config)
    _check_quadratic_start(values, config)
    root = sqrt(values.divide_by_power(2, config), config)
    return root.with_order(values.order - 1).shift(1).realified(config)


def tau_via_ell(series: Union[BiSeries, UniSeries], config: Optional[NormalFormConfig] = None) -> Involution:
    """τ = ℓ⁻¹∘(-ℓ)."""
    config = resolve(config)
    ell = ell_of(series, config)
    tau = compose_uni(invert_uni(ell, config), -ell, config)
    return Involution(tau.realified(config))


def tau_recursion_coefficients(lam_coeffs: Dict[int, Any], top: int) -> Dict[int, Any]:
    """
    τ_j for 2 <= j <= top - 1 from the coefficients Λ_n, 3 <= n <= top

    For n >= 3:
        τ_{n-1} = -ε_n Λ_n + ½ Σ_{n1+n2=n} τ_{n1} τ_{n2}
                  + ½ Σ_{r>=1} Σ_{n0>=max(0,3-r)} (-1)^{n0} C(n0+r, r) Λ_{n0+r} [τ_*^r]_{n-n0}
    with ε_n = 1 for odd n and 0 otherwise, τ_* = τ + z, and τ_1 = -1 implied.
    """
    tau: Dict[int, Any] = {}
    for n in range(3, top + 1):
        value = -mp.mpc(lam_coeffs.get(n, 0)) if n % 2 else mp.mpc(0)
        quadratic = mp.mpc(0)
        for n1 in range(2, n - 1):
            quadratic += tau.get(n1, 0) * tau.get(n - n1, 0)
        value += quadratic / 2

        # powers of τ_* truncated at degree n
        powers = {1: {j: c for j, c in tau.items() if j <= n}}
        for r in range(2, n // 2 + 1):
            previous = powers[r - 1]
            product: Dict[int, Any] = {}
            for j1, c1 in previous.items():
                for j2, c2 in tau.items():
                    if j1 + j2 <= n:
                        product[j1 + j2] = product.get(j1 + j2, 0) + c1 * c2
            powers[r] = product

        for r in range(1, n // 2 + 1):
            power = powers[r]
            for n0 in range(max(0, 3 - r), n - 2 * r + 1):
                coefficient = power.get(n - n0)
                lam_value = lam_coeffs.get(n0 + r)
                if coefficient is None or lam_value is None:
                    continue
                sign = -1 if n0 % 2 else 1
                value += sign * mp.binomial(n0 + r, r) * lam_value * coefficient / 2
        tau[n - 1] = value
    return tau


def tau_via_recursion(series: Union[BiSeries, UniSeries], config: Optional[NormalFormConfig] = None) -> Involution:
    """τ from the coefficient recursion; order N - 1 for Λ of order N."""
    config = resolve(config)
    values = _diagonal_of(series, config)
    _check_quadratic_start(values, config)
    lam_coeffs = {n: c for n, c in values.items() if n >= 3}
    tau = tau_recursion_coefficients(lam_coeffs, values.order)
    tau[1] = mp.mpc(-1)
    return Involution(UniSeries(values.order - 1, tau, True, "z", config))
