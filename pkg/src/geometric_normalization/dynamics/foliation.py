"""
Invariant Foliation - Γ recovered from L alone, and the balanced series L_F
"""

import logging
from typing import Any, Optional, Tuple

from mpmath import mp

from geometric_normalization.config import NormalFormConfig, resolve
from geometric_normalization.dynamics.admissible import (
    AdmissiblePair,
    AdmissibleSolver,
    BalancedPolicy,
    conjugacy_residual,
    conjugate_radial,
    resonant_free,
)
from geometric_normalization.dynamics.involution import ell_of, tau_via_ell
from geometric_normalization.dynamics.jet import DiffeoJet
from geometric_normalization.exceptions import NotAdmissibleError
from geometric_normalization.series.bi import BiSeries, HermitianBiSeries
from geometric_normalization.series.compose import compose_uni, compose_uni_bi, diagonal, hat_compose, invert_uni
from geometric_normalization.series.uni import UniSeries

logger = logging.getLogger(__name__)


def _even_radial(values: UniSeries, what: str, config: NormalFormConfig) -> UniSeries:
    """R -> Σ values_{2n} R^n after checking that the odd part vanishes."""
    odd_residual = values.odd_part().max_abs()
    if odd_residual > config.tolerance * max(mp.mpf(1), values.max_abs()):
        raise NotAdmissibleError(f"{what} has an odd part of size {mp.nstr(odd_residual, 5)}")
    coeffs = {n // 2: value for n, value in values.items() if n % 2 == 0}
    return UniSeries(values.order // 2, coeffs, True, "R", config)


def gamma_of(L: BiSeries, jet: DiffeoJet, config: Optional[NormalFormConfig] = None) -> Tuple[UniSeries, Any]:
    """
    Γ from Γ(u²) = L∘F̂(ℓ⁻¹(u), ℓ⁻¹(u))

    Returns:
        (Γ, odd_residual)

    Raises:
        NotAdmissibleError: the right-hand side is not even, so L is not admissible for F
    """
    config = resolve(config)
    order = min(L.order, jet.order)
    L = L.truncate(order)
    ell_inverse = invert_uni(ell_of(L, config), config).with_order(order)
    values = compose_uni(diagonal(hat_compose(L, jet.with_order(order), config), config), ell_inverse, config)
    odd_residual = values.odd_part().max_abs()
    gamma = _even_radial(values, "L∘F̂ along ℓ⁻¹", config)
    return gamma, odd_residual


def balanced(jet: DiffeoJet, order: Optional[int] = None, config: Optional[NormalFormConfig] = None) -> AdmissiblePair:
    """
    The balanced pair (L_F, Γ_F) with L_F(z, z) = -z τ_F(z)

    Built from the resonant-free seed L: h = -zτ, g(u²) = h∘ℓ⁻¹(u), L_F = g∘L
    and Γ_F = g∘Γ∘g⁻¹.
    """
    config = resolve(config)
    order = jet.order if order is None else order
    seed = resonant_free(jet, order, config)
    tau = tau_via_ell(seed.L, config).tau
    h = (-tau).with_order(order).shift(1)
    ell_inverse = invert_uni(ell_of(seed.L, config), config).with_order(order)
    g = _even_radial(compose_uni(h, ell_inverse, config), "h∘ℓ⁻¹", config)
    L = HermitianBiSeries.from_series(compose_uni_bi(g, seed.L, config), config)
    gamma = conjugate_radial(g, seed.Gamma, config).realified(config)
    residual = conjugacy_residual(L, gamma, jet.with_order(order), config)
    logger.debug(f"Balanced pair at order {order}: residual {mp.nstr(residual, 5)}")
    return AdmissiblePair(L, gamma, residual)


def balanced_incremental(jet: DiffeoJet, order: Optional[int] = None,
                         config: Optional[NormalFormConfig] = None) -> AdmissiblePair:
    """The balanced pair from the stepper with the balanced diagonal rule."""
    return AdmissibleSolver(jet, order, BalancedPolicy(), config).solve()


def balanced_identity_residual(L: BiSeries, config: Optional[NormalFormConfig] = None) -> Any:
    """max |L(z, z) + z τ(z)| through order N."""
    config = resolve(config)
    tau = tau_via_ell(L, config).tau
    values = diagonal(L, config)
    return (values + tau.with_order(values.order).shift(1)).max_abs()
