"""
Geometric Normal Forms - G = Φ∘F∘Φ⁻¹ with |G|² a function of |ζ|², and its polar form

G(ζ) = λζ(1 + f(|ζ|²)) e^{2πiβ(ζ)} with f real and β Hermitian.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

from mpmath import mp

from geometric_normalization.config import NormalFormConfig, resolve
from geometric_normalization.dynamics.admissible import AdmissiblePair
from geometric_normalization.dynamics.foliation import balanced
from geometric_normalization.dynamics.jet import DiffeoJet
from geometric_normalization.dynamics.morse import morse_phi, morse_residual
from geometric_normalization.exceptions import DecompositionError
from geometric_normalization.series.analytic import exp, log, reciprocal, sqrt
from geometric_normalization.series.bi import BiSeries, HermitianBiSeries
from geometric_normalization.series.compose import compose_bi, compose_uni_bi, invert_bi_pair, square_modulus
from geometric_normalization.series.uni import UniSeries

logger = logging.getLogger(__name__)


def geometric_normal_form(jet: DiffeoJet, phi: BiSeries, order: Optional[int] = None,
                          config: Optional[NormalFormConfig] = None) -> Tuple[BiSeries, Any]:
    """
    G = Φ∘F∘Φ⁻¹ through the complex extension

    Returns:
        (G, off-diagonal residual of |G|²)
    """
    config = resolve(config)
    order = min(jet.order, phi.order) if order is None else order
    phi = phi.truncate(order)
    psi = invert_bi_pair(phi, config)
    forward = jet.with_order(order).series
    inner = compose_bi(forward, psi, psi.tilde(), config)
    normal_form = compose_bi(phi, inner, inner.tilde(), config)
    residual = square_modulus(normal_form, config).off_diagonal_max()
    return normal_form, residual


def radial_profile(normal_form: BiSeries, config: Optional[NormalFormConfig] = None) -> UniSeries:
    """Γ with |G|²(z, w) = Γ(zw) read off the diagonal monomials."""
    modulus = square_modulus(normal_form, config)
    return UniSeries(normal_form.order // 2, modulus.diagonal_coefficients(), True, "R", config)


def polar_decompose(normal_form: BiSeries,
                    config: Optional[NormalFormConfig] = None) -> Tuple[UniSeries, HermitianBiSeries]:
    """
    Split a geometric normal form into its radial factor f and phase β

    Returns:
        (f, β) with f of order ⌊N/2⌋ - 1 in R and β of order 2⌊N/2⌋ - 1

    Raises:
        DecompositionError: G is not divisible by ζ or |G|² depends on more than |ζ|²
    """
    config = resolve(config)
    order = normal_form.order
    scale = max(mp.mpf(1), normal_form.max_abs())
    undivided = max((abs(v) for (j, k), v in normal_form.items() if j == 0), default=mp.mpf(0))
    if undivided > config.tolerance * scale:
        raise DecompositionError(f"G has terms without a ζ factor (size {mp.nstr(undivided, 5)})")
    modulus = square_modulus(normal_form, config)
    off_diagonal = modulus.off_diagonal_max()
    if off_diagonal > config.tolerance * max(mp.mpf(1), modulus.max_abs()):
        raise DecompositionError(f"|G|² has off-diagonal terms of size {mp.nstr(off_diagonal, 5)}")

    lam = normal_form.coeff(1, 0)
    half = order // 2
    # Γ(R)/R = (1 + f(R))²
    radial: Dict[int, Any] = {n - 1: value for n, value in modulus.diagonal_coefficients().items() if n >= 1}
    scaled_radial = UniSeries(half - 1, radial, True, "R", config)
    f = (sqrt(scaled_radial, config) - 1).realified(config)

    beta_order = 2 * half - 1
    quotient: Dict[Tuple[int, int], Any] = {}
    for (j, k), value in normal_form.items():
        if j >= 1 and j - 1 + k <= beta_order:
            quotient[(j - 1, k)] = value / lam
    ratio = BiSeries(beta_order, quotient)
    radial_factor = compose_uni_bi(f, BiSeries.product_monomial(beta_order), config) + 1
    phase = log(ratio * reciprocal(radial_factor, config), config)
    beta = HermitianBiSeries.from_series(phase.scale(1 / (2j * mp.pi)), config)
    return f, beta


def reconstruct_polar(lam: Any, f: UniSeries, beta: BiSeries, order: Optional[int] = None,
                      config: Optional[NormalFormConfig] = None) -> BiSeries:
    """λζ(1 + f(ζζ̄)) e^{2πiβ}, by default through one degree above β."""
    config = resolve(config)
    order = beta.order + 1 if order is None else order
    inner_order = order - 1
    radial = compose_uni_bi(f, BiSeries.product_monomial(inner_order), config).with_order(inner_order) + 1
    phase = exp(beta.with_order(inner_order).scale(2j * mp.pi), config)
    body = radial * phase
    shifted = {(j + 1, k): value * lam for (j, k), value in body.items()}
    return BiSeries(order, shifted)


@dataclass
class NormalizationReport:
    """Everything the geometric normalization of one jet produces."""
    pair: AdmissiblePair
    phi: BiSeries
    morse_residual: Any
    normal_form: BiSeries
    off_diagonal_residual: Any
    radial_factor: UniSeries
    phase: HermitianBiSeries
    conservative: bool


def normalize(jet: DiffeoJet, order: Optional[int] = None,
              config: Optional[NormalFormConfig] = None) -> NormalizationReport:
    """Balanced pair, Φ = morse_phi(L_F), G = Φ∘F∘Φ⁻¹ and its polar data."""
    config = resolve(config)
    order = jet.order if order is None else order
    pair = balanced(jet, order, config)
    phi = morse_phi(pair.L, config)
    normal_form, off_diagonal = geometric_normal_form(jet, phi, order, config)
    f, beta = polar_decompose(normal_form, config)
    defect = (pair.Gamma - UniSeries.identity(pair.Gamma.order, "R")).max_abs()
    conservative = defect <= config.tolerance * max(mp.mpf(1), pair.L.max_abs())
    logger.info(f"Normalized jet at order {order}: off-diagonal residual {mp.nstr(off_diagonal, 5)}")
    return NormalizationReport(pair, phi, morse_residual(phi, pair.L, config), normal_form, off_diagonal,
                               f, beta, conservative)
