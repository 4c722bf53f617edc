"""
Divergent Constructions - jets whose admissible series or involutions grow factorially

Each constructor walks an incremental admissible solver up to the degree
where a super-Liouville witness n enters, reads the part G of the next
coefficient that does not depend on the new terms of F, and picks the
signs of F_{1,n} and F_{n+1,0} so that they add to G instead of cancelling
it. The resulting inequality is checked before the witness is recorded.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, List, Optional

from mpmath import mp

from geometric_normalization.arithmetic.liouville import lambda_power_distance, super_liouville_witnesses
from geometric_normalization.arithmetic.rotation import RotationNumber, as_rotation_number
from geometric_normalization.config import NormalFormConfig, admitting_divisor, resolve, working_precision
from geometric_normalization.dynamics.admissible import (
    AdmissibleSolver, BalancedPolicy, DiagonalPolicy, ResonantPolicy,
)
from geometric_normalization.dynamics.involution import tau_recursion_coefficients
from geometric_normalization.dynamics.jet import DiffeoJet
from geometric_normalization.exceptions import GuardError, NormalFormError
from geometric_normalization.series.uni import UniSeries

logger = logging.getLogger(__name__)


@dataclass
class WitnessRecord:
    """One witness n_p and the inequality it produced."""
    p: int
    n: int
    sign: Any
    free_part: Any
    distance: Any
    attained: Any
    bound: Any
    satisfied: bool


@dataclass
class ConstructedExample:
    """A constructed jet, its witness records and the series the inequalities are read from."""
    jet: DiffeoJet
    witnesses: List[WitnessRecord] = field(default_factory=list)
    complete: bool = True
    series: Any = None

    @property
    def holds(self) -> bool:
        return bool(self.witnesses) and all(w.satisfied for w in self.witnesses)


def _default_jet(omega: RotationNumber, odd: bool, config: NormalFormConfig) -> DiffeoJet:
    return DiffeoJet(omega, {}, 2, odd, config)


def _select_witnesses(omega: Any, minimum: int, p_max: int, odd_only: bool, scan_limit: Optional[int],
                      config: NormalFormConfig) -> List[int]:
    try:
        found = super_liouville_witnesses(omega, scan_limit, odd_only, config)
    except GuardError as e:
        logger.warning(f"Witness scan stopped early: {e}")
        found = []
    chosen = [n for n in found if n >= minimum][:p_max]
    if len(chosen) < p_max:
        logger.warning(f"Only {len(chosen)} of {p_max} witnesses found (n >= {minimum})")
    return chosen


def lifted_config(omega: Any, order: int, config: Optional[NormalFormConfig] = None) -> NormalFormConfig:
    """Configuration whose guard floor admits every |1 - λ^m| with m <= order."""
    config = resolve(config)
    omega = as_rotation_number(omega)
    smallest = min(lambda_power_distance(omega, m, config)[0] for m in range(1, order + 1))
    return admitting_divisor(smallest, config)


def _jet_at_precision(jet: DiffeoJet, order: int, config: NormalFormConfig) -> DiffeoJet:
    # λ is recomputed at the current mpmath precision
    return DiffeoJet(jet.omega, jet.coefficients(), order, jet.odd, config, check_resonance=False)


def _advance(solver: AdmissibleSolver, degree: int) -> None:
    while solver.degree < degree:
        solver.step()


def _linear_sign(lam: Any, value: Any) -> int:
    return 1 if mp.re(lam) * mp.re(value) >= 0 else -1


def siegel_divergent(omega: Any, jet: Optional[DiffeoJet] = None, p_max: int = 1,
                     config: Optional[NormalFormConfig] = None, scan_limit: Optional[int] = None,
                     policy: Optional[DiagonalPolicy] = None) -> ConstructedExample:
    """
    F = J + Σ_p ±(z z̄^{n_p} + z^{n_p+1}) with |L_{n_p+1,1}| >= 2 n_p! |cos 2πω|

    Args:
        omega: Super-Liouville rotation number
        jet: The prescribed N-jet J; λz by default
        p_max: Number of witnesses to use
        scan_limit: Largest k scanned for witnesses
        policy: Diagonal policy of the admissible series; balanced by default

    Returns:
        ConstructedExample with series = L solved through n_last + 2
    """
    config = resolve(config)
    omega = as_rotation_number(omega)
    jet = _default_jet(omega, False, config) if jet is None else jet
    witnesses = _select_witnesses(omega, jet.order, p_max, False, scan_limit, config)
    example = ConstructedExample(jet, complete=len(witnesses) == p_max)
    if not witnesses:
        return example

    order = witnesses[-1] + 2
    config = lifted_config(omega, order, config)
    with working_precision(config):
        solver = AdmissibleSolver(_jet_at_precision(jet, order, config), order, policy or BalancedPolicy(), config)
        cosine = abs(mp.re(solver.lam))
        for p, n in enumerate(witnesses, start=1):
            _advance(solver, n + 1)
            free_part = solver.prepare()[(n + 1, 1)]
            sign = _linear_sign(solver.lam, free_part)
            solver.set_jet_coefficients({(1, n): sign, (n + 1, 0): sign})
            solver.commit()
            attained = abs(solver.coefficient(n + 1, 1))
            bound = 2 * mp.factorial(n) * cosine
            distance, _ = lambda_power_distance(omega, n, config)
            record = WitnessRecord(p, n, sign, free_part, distance, attained, bound, attained >= bound)
            example.witnesses.append(record)
            logger.info(f"Witness n_{p} = {n}: |L_{n + 1},1| = {mp.nstr(attained, 8)} vs bound {mp.nstr(bound, 8)}")
            if not record.satisfied:
                logger.warning(f"Inequality fails at witness n_{p} = {n}")
        _advance(solver, order)
        example.jet = solver.jet
        example.series = solver.pair().L
    return example


def _tau_coefficient(solver: AdmissibleSolver, index: int) -> Any:
    lam_coeffs = solver.diagonal_coefficients(index + 1)
    return tau_recursion_coefficients(lam_coeffs, index + 1)[index]


def tau_divergent(omega: Any, jet: Optional[DiffeoJet] = None, p_max: int = 1,
                  config: Optional[NormalFormConfig] = None,
                  scan_limit: Optional[int] = None) -> ConstructedExample:
    """
    F = J + Σ_p i u_p (z^{n_p+1} - z z̄^{n_p}) with |τ_{n_p+1}| >= 2 n_p! |cos 2πω|

    The witnesses n_p are odd; u_p = ±v_p with v_p the sign of Im(λ^{n_p} - 1).

    Returns:
        ConstructedExample with series = τ_F through n_last + 1
    """
    config = resolve(config)
    omega = as_rotation_number(omega)
    jet = _default_jet(omega, False, config) if jet is None else jet
    witnesses = _select_witnesses(omega, jet.order, p_max, True, scan_limit, config)
    example = ConstructedExample(jet, complete=len(witnesses) == p_max)
    if not witnesses:
        return example

    order = witnesses[-1] + 2
    config = lifted_config(omega, order, config)
    with working_precision(config):
        solver = AdmissibleSolver(_jet_at_precision(jet, order, config), order, ResonantPolicy(), config)
        lam = solver.lam
        cosine = abs(mp.re(lam))
        for p, n in enumerate(witnesses, start=1):
            _advance(solver, n + 1)
            trial = solver.fork()
            trial.step()
            free_part = _tau_coefficient(trial, n + 1)

            xi = lam ** n - 1
            identity_gap = abs(mp.re(xi) + abs(xi) ** 2 / 2)
            if identity_gap > config.tolerance * max(mp.mpf(1), abs(xi)):
                raise NormalFormError(f"Re ξ = -|ξ|²/2 fails at n = {n} by {mp.nstr(identity_gap, 5)}")
            v = 1 if mp.im(xi) >= 0 else -1
            u = v if _linear_sign(lam, free_part) > 0 else -v
            solver.set_jet_coefficients({(1, n): mp.mpc(0, -u), (n + 1, 0): mp.mpc(0, u)})
            solver.commit()

            attained = abs(_tau_coefficient(solver, n + 1))
            bound = 2 * mp.factorial(n) * cosine
            record = WitnessRecord(p, n, u, free_part, abs(xi), attained, bound, attained >= bound)
            example.witnesses.append(record)
            logger.info(f"Witness n_{p} = {n}: |τ_{n + 1}| = {mp.nstr(attained, 8)} vs bound {mp.nstr(bound, 8)}")
            if not record.satisfied:
                logger.warning(f"τ inequality fails at witness n_{p} = {n}")
        _advance(solver, order)
        example.jet = solver.jet
        coeffs = tau_recursion_coefficients(solver.diagonal_coefficients(order), order)
        coeffs[1] = mp.mpc(-1)
        example.series = UniSeries(order - 1, coeffs, True, "z", config)
    return example


def odd_siegel_divergent(omega_double: Any, jet: Optional[DiffeoJet] = None, p_max: int = 1,
                         config: Optional[NormalFormConfig] = None, scan_limit: Optional[int] = None,
                         policy: Optional[DiagonalPolicy] = None) -> ConstructedExample:
    """
    Odd F at ω = ω'/2 with |L_{2n_p+1,1}| >= 2 n_p! |cos 2πω|

    Args:
        omega_double: ω' = 2ω, a super-Liouville number; its witnesses n_p give λ^{2n_p} near 1
        jet: Odd N-jet at ω; λz by default

    Returns:
        ConstructedExample with an odd jet and series = L through 2n_last + 2
    """
    config = resolve(config)
    omega_double = as_rotation_number(omega_double)
    omega = omega_double.halved()
    jet = _default_jet(omega, True, config) if jet is None else jet
    if not jet.odd:
        raise ValueError("odd_siegel_divergent requires an odd jet")
    minimum = max((jet.order + 1) // 2, 1)
    witnesses = _select_witnesses(omega_double, minimum, p_max, False, scan_limit, config)
    example = ConstructedExample(jet, complete=len(witnesses) == p_max)
    if not witnesses:
        return example

    order = 2 * witnesses[-1] + 2
    config = lifted_config(omega, order, config)
    with working_precision(config):
        solver = AdmissibleSolver(_jet_at_precision(jet, order, config), order, policy or BalancedPolicy(), config)
        cosine = abs(mp.re(solver.lam))
        for p, n in enumerate(witnesses, start=1):
            top = 2 * n + 1
            _advance(solver, top)
            free_part = solver.prepare()[(top, 1)]
            sign = _linear_sign(solver.lam, free_part)
            solver.set_jet_coefficients({(1, 2 * n): sign, (top, 0): sign})
            solver.commit()
            attained = abs(solver.coefficient(top, 1))
            bound = 2 * mp.factorial(n) * cosine
            distance, _ = lambda_power_distance(omega_double, n, config)
            record = WitnessRecord(p, n, sign, free_part, distance, attained, bound, attained >= bound)
            example.witnesses.append(record)
            logger.info(f"Odd witness n_{p} = {n}: |L_{top},1| = {mp.nstr(attained, 8)} vs bound {mp.nstr(bound, 8)}")
            if not record.satisfied:
                logger.warning(f"Odd inequality fails at witness n_{p} = {n}")
        _advance(solver, order)
        example.jet = solver.jet
        example.series = solver.pair().L
    return example
