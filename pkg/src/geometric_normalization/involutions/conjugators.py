"""
Involution Conjugators - tangent-to-identity U with τ = U⁻¹∘σ∘U, σ(u) = -u

U = (Id - τ)/2 conjugates τ to σ; V = (Id + τ)/2 is τ-invariant and
E = V∘U⁻¹ is even, so U⁻¹ = Id + E. All tangent-to-identity conjugacies
between two involutions τ, τ' are (Id + E')∘γ∘(Id + E)⁻¹ with γ odd.
"""

import logging
from dataclasses import dataclass
from typing import Any, Optional, Union

import numpy as np
from mpmath import mp

from geometric_normalization.config import NormalFormConfig, resolve
from geometric_normalization.dynamics.involution import Involution
from geometric_normalization.exceptions import NotAnInvolutionError
from geometric_normalization.series.compose import compose_uni, invert_uni
from geometric_normalization.series.uni import UniSeries

logger = logging.getLogger(__name__)

InvolutionLike = Union[Involution, UniSeries]


@dataclass
class Conjugator:
    """The canonical conjugator of an involution with its verification residuals."""
    U: UniSeries
    V: UniSeries
    E: UniSeries
    conjugacy_residual: Any
    inverse_residual: Any
    evenness_residual: Any
    invariance_residual: Any

    @property
    def max_residual(self) -> Any:
        return max(self.conjugacy_residual, self.inverse_residual, self.evenness_residual,
                   self.invariance_residual)


def _tau_series(tau: InvolutionLike) -> UniSeries:
    return tau.tau if isinstance(tau, Involution) else tau


def _check_involution(tau: UniSeries, config: NormalFormConfig) -> None:
    if abs(tau.coeff(1) + 1) > config.tolerance or abs(tau.coeff(0)) > config.tolerance:
        raise NotAnInvolutionError("An involution must be tangent to -Id")
    defect = Involution(tau).defect(config)
    if defect > config.tolerance * max(mp.mpf(1), tau.max_abs()):
        raise NotAnInvolutionError(f"τ∘τ differs from Id by {mp.nstr(defect, 5)}")


def conjugator_of(tau: InvolutionLike, config: Optional[NormalFormConfig] = None) -> Conjugator:
    """U, V, E for one involution, each identity checked."""
    config = resolve(config)
    tau = _tau_series(tau)
    _check_involution(tau, config)
    identity = UniSeries.identity(tau.order, tau.variable)
    u_map = (identity - tau).scale(mp.mpf(1) / 2)
    v_map = (identity + tau).scale(mp.mpf(1) / 2)
    u_inverse = invert_uni(u_map, config)
    e_map = compose_uni(v_map, u_inverse, config)

    conjugated = compose_uni(u_inverse, -u_map, config)
    conjugacy = conjugated.max_abs_difference(tau)
    inverse = u_inverse.max_abs_difference(identity + e_map)
    evenness = e_map.odd_part().max_abs()
    invariance = compose_uni(v_map, tau, config).max_abs_difference(v_map)
    return Conjugator(u_map, v_map, e_map, conjugacy, inverse, evenness, invariance)


def conjugators_between(tau: InvolutionLike, tau_prime: InvolutionLike, gamma: UniSeries,
                        config: Optional[NormalFormConfig] = None) -> UniSeries:
    """
    ψ = (Id + E')∘γ∘(Id + E)⁻¹, a tangent-to-identity map with ψ∘τ = τ'∘ψ

    Raises:
        ValueError: γ is not odd and tangent to the identity
    """
    config = resolve(config)
    scale = max(mp.mpf(1), gamma.max_abs())
    if abs(gamma.coeff(1) - 1) > config.tolerance or gamma.even_part().max_abs() > config.tolerance * scale:
        raise ValueError("γ must be odd and tangent to the identity")
    source = conjugator_of(tau, config)
    target = conjugator_of(tau_prime, config)
    order = min(source.E.order, target.E.order, gamma.order)
    identity = UniSeries.identity(order, gamma.variable)
    inner = invert_uni(identity + source.E.with_order(order).with_variable(gamma.variable), config)
    psi = compose_uni(identity + target.E.with_order(order).with_variable(gamma.variable),
                      compose_uni(gamma.with_order(order), inner, config), config)
    residual = conjugacy_defect(psi, tau, tau_prime, config)
    logger.debug(f"Conjugator residual {mp.nstr(residual, 5)}")
    return psi


def conjugacy_defect(psi: UniSeries, tau: InvolutionLike, tau_prime: InvolutionLike,
                     config: Optional[NormalFormConfig] = None) -> Any:
    """max |ψ∘τ - τ'∘ψ|."""
    tau = _tau_series(tau)
    tau_prime = _tau_series(tau_prime)
    left = compose_uni(psi, tau, config)
    right = compose_uni(tau_prime, psi, config)
    return left.max_abs_difference(right)


def random_involution(order: int, seed: Optional[int] = None, bound: float = 0.5,
                      config: Optional[NormalFormConfig] = None) -> Involution:
    """φ⁻¹∘σ∘φ for a random real tangent-to-identity φ."""
    rng = np.random.default_rng(seed)
    coeffs = {1: 1}
    for n in range(2, order + 1):
        coeffs[n] = mp.mpf(float(rng.uniform(-bound, bound)))
    phi = UniSeries(order, coeffs, True, "z", config)
    tau = compose_uni(invert_uni(phi, config), -phi, config)
    return Involution(tau.realified(config))
