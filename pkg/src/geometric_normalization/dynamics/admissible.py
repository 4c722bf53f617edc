"""
Admissible Pairs - degree-by-degree solution of L∘F = Γ∘L

At total degree m the part of L∘F - Γ∘L built from already known data is
A_rs. Off-diagonal coefficients follow from (1 - λ^{r-s}) L_rs = A_rs,
Γ_n = A_nn on the diagonal, and the diagonal coefficient L_nn is the free
parameter chosen by a policy (resonant part, χ target or balanced rule).
"""

import copy
import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

from mpmath import mp

from geometric_normalization.config import NormalFormConfig, resolve, residual_tolerance, small_divisor_floor
from geometric_normalization.dynamics.involution import tau_recursion_coefficients
from geometric_normalization.dynamics.jet import DiffeoJet
from geometric_normalization.exceptions import NotAdmissibleError, SmallDivisorError
from geometric_normalization.series.bi import BiSeries, HermitianBiSeries
from geometric_normalization.series.compose import compose_uni, compose_uni_bi, hat_compose, invert_uni
from geometric_normalization.series.uni import UniSeries

logger = logging.getLogger(__name__)

Index = Tuple[int, int]


@dataclass
class AdmissiblePair:
    """An admissible series L with its radial map Γ: L∘F = Γ∘L through ``order``."""

    L: HermitianBiSeries
    Gamma: UniSeries
    residual_norm: Any = 0

    @property
    def order(self) -> int:
        return self.L.order

    def verify(self, jet: DiffeoJet, config: Optional[NormalFormConfig] = None) -> Any:
        self.residual_norm = conjugacy_residual(self.L, self.Gamma, jet, config)
        return self.residual_norm


def conjugacy_residual(L: BiSeries, Gamma: UniSeries, jet: Any, config: Optional[NormalFormConfig] = None) -> Any:
    """max |[L∘F - Γ∘L]_rs| through the common order."""
    lhs = hat_compose(L, jet, config)
    rhs = compose_uni_bi(Gamma, L, config)
    return lhs.max_abs_difference(rhs)


def condition_factor(lam: Any, order: int) -> Any:
    """κ = max_{1<=m<=2N} |1 - λ^m|^{-1}."""
    kappa = mp.mpf(1)
    power = mp.mpc(1)
    for _ in range(2 * order):
        power *= lam
        kappa = max(kappa, 1 / abs(1 - power))
    return kappa


def dominant_coefficient(jet: DiffeoJet, r: int, s: int) -> Any:
    """λ·conj(F_{s,r-1}) + λ̄·F_{r,s-1}: the part of A_rs linear in the degree r+s-1 coefficients of F."""
    value = mp.mpc(0)
    if r >= 1:
        value += jet.lam * mp.conj(jet.coefficient(s, r - 1))
    if s >= 1:
        value += mp.conj(jet.lam) * jet.coefficient(r, s - 1)
    return value


class DiagonalPolicy:
    """Chooses L_nn once the off-diagonal coefficients of degree 2n are known."""

    name = "base"

    def diagonal_value(self, solver: "AdmissibleSolver", n: int, off_diagonal_sum: Any) -> Any:
        raise NotImplementedError


class ResonantPolicy(DiagonalPolicy):
    """L_nn = ρ_n for a prescribed resonant part ρ (zero by default)."""

    name = "resonant"

    def __init__(self, rho: Optional[UniSeries] = None):
        self.rho = rho

    def diagonal_value(self, solver: "AdmissibleSolver", n: int, off_diagonal_sum: Any) -> Any:
        if self.rho is None:
            return mp.mpc(0)
        return self.rho.coeff(n)


class ChiPolicy(DiagonalPolicy):
    """L_nn = χ_n - Σ_{r+s=2n, r≠s} L_rs, so that the even part of L(z, z) is χ(z²)."""

    name = "chi"

    def __init__(self, chi: UniSeries):
        self.chi = chi

    def diagonal_value(self, solver: "AdmissibleSolver", n: int, off_diagonal_sum: Any) -> Any:
        return self.chi.coeff(n) - off_diagonal_sum


class BalancedPolicy(DiagonalPolicy):
    """L_nn = -τ_{2n-1} - Σ_{r+s=2n, r≠s} L_rs, so that L(z, z) = -z τ(z)."""

    name = "balanced"

    def diagonal_value(self, solver: "AdmissibleSolver", n: int, off_diagonal_sum: Any) -> Any:
        lam_coeffs = solver.diagonal_coefficients(2 * n - 1)
        tau = tau_recursion_coefficients(lam_coeffs, 2 * n)
        return -tau[2 * n - 1] - off_diagonal_sum


class AdmissibleSolver:
    """
    Incremental solver for admissible pairs.

    The state is consistent through ``degree``: every L_rs with r + s <= degree
    and every Γ_n with 2n <= degree is final. ``prepare`` exposes the A_rs of
    the next degree before any division, ``commit`` divides and advances.
    Coefficients of F of degree d may still be changed while d >= degree.
    """

    def __init__(self, jet: DiffeoJet, order: Optional[int] = None, policy: Optional[DiagonalPolicy] = None,
                 config: Optional[NormalFormConfig] = None):
        self.config = resolve(config)
        order = jet.order if order is None else order
        if order < 2:
            raise ValueError(f"Order must be >= 2, got {order}")
        self.order = order
        self.jet = jet if jet.order == order else jet.with_order(order)
        self.policy = policy if policy is not None else ResonantPolicy()
        self.lam = self.jet.lam
        self._floor = small_divisor_floor(self.config)
        self._lam_powers = {0: mp.mpc(1)}
        for e in range(1, order + 1):
            self._lam_powers[e] = self._lam_powers[e - 1] * self.lam
            self._lam_powers[-e] = mp.conj(self._lam_powers[e])
        self._L: Dict[Index, Any] = {(1, 1): mp.mpc(1)}
        self._gamma: Dict[int, Any] = {1: mp.mpc(1)}
        self.degree = 2
        self.pending: Optional[Dict[Index, Any]] = None
        self._table: Optional[Dict[Index, BiSeries]] = None

    # State access

    def coefficient(self, r: int, s: int) -> Any:
        return self._L.get((r, s), mp.mpc(0))

    def gamma_coefficient(self, n: int) -> Any:
        return self._gamma.get(n, mp.mpc(0))

    def diagonal_coefficients(self, upto: int) -> Dict[int, Any]:
        """Λ_m = Σ_{r+s=m} L_rs for 3 <= m <= upto."""
        totals: Dict[int, Any] = {}
        for (r, s), value in self._L.items():
            m = r + s
            if 3 <= m <= upto:
                totals[m] = totals.get(m, 0) + value
        return totals

    def current_series(self) -> BiSeries:
        """The solved part of L as a series of order ``degree``."""
        return BiSeries(self.degree, self._L)

    def fork(self) -> "AdmissibleSolver":
        """Independent copy sharing the immutable series snapshots."""
        clone = copy.copy(self)
        clone._L = dict(self._L)
        clone._gamma = dict(self._gamma)
        clone.pending = dict(self.pending) if self.pending is not None else None
        return clone

    def set_jet_coefficients(self, updates: Dict[Index, Any]) -> None:
        """Change coefficients of F that have not entered the solved degrees yet."""
        for (j, k) in updates:
            if j + k < self.degree:
                raise ValueError(
                    f"F_{j}{k} has degree {j + k} and already entered the solution through degree {self.degree}"
                )
        self.jet = self.jet.with_coefficients(updates)
        self._table = None
        self.pending = None

    # Solving

    def _power_table(self) -> Dict[Index, BiSeries]:
        # F^r F~^s truncated at the solver order, for 2 <= r + s <= order - 1
        if self._table is None:
            forward = self.jet.series
            backward = forward.tilde()
            table = {}
            row = BiSeries.one(self.order)
            for r in range(self.order):
                if r > 0:
                    row = row * forward
                current = row
                for s in range(self.order - r):
                    if s > 0:
                        current = current * backward
                    if r + s >= 2:
                        table[(r, s)] = current
            self._table = table
        return self._table

    def prepare(self) -> Dict[Index, Any]:
        """A_rs for the next degree m = degree + 1, every r + s = m."""
        m = self.degree + 1
        if m > self.order:
            raise ValueError(f"Solver already reached order {self.order}")
        table = self._power_table()
        values: Dict[Index, Any] = {(r, m - r): mp.mpc(0) for r in range(m + 1)}
        for (r, s), coefficient in self._L.items():
            if r + s < 2:
                continue
            for index, value in table[(r, s)].homogeneous_part(m).items():
                values[index] += coefficient * value
        gamma = UniSeries(m, self._gamma, False, "R")
        partial = BiSeries(m, self._L)
        for index, value in compose_uni_bi(gamma, partial, self.config).homogeneous_part(m).items():
            values[index] -= value
        self.pending = values
        return dict(values)

    def commit(self) -> None:
        """Solve degree m from the prepared A_rs and advance."""
        if self.pending is None:
            self.prepare()
        m = self.degree + 1
        values = self.pending
        off_diagonal_sum = mp.mpc(0)
        for r in range(m, -1, -1):
            s = m - r
            if r == s:
                continue
            divisor = 1 - self._lam_powers[r - s]
            if abs(divisor) < self._floor:
                raise SmallDivisorError(
                    f"|1 - λ^{r - s}| = {mp.nstr(abs(divisor), 5)} below the guard floor at degree {m}",
                    degree=m, index=(r, s),
                )
            value = values[(r, s)] / divisor
            if value != 0:
                self._L[(r, s)] = value
            off_diagonal_sum += value
        if m % 2 == 0:
            n = m // 2
            self._gamma[n] = values[(n, n)]
            diagonal = mp.mpc(self.policy.diagonal_value(self, n, off_diagonal_sum))
            if diagonal != 0:
                self._L[(n, n)] = diagonal
        self.degree = m
        self.pending = None
        logger.debug(f"Admissible solver ({self.policy.name}) committed degree {m}")

    def step(self) -> "AdmissibleSolver":
        self.commit()
        return self

    def solve(self) -> AdmissiblePair:
        while self.degree < self.order:
            self.step()
        return self.pair()

    def pair(self) -> AdmissiblePair:
        """The admissible pair solved so far, with its conjugacy residual."""
        L = HermitianBiSeries(self.degree, self._L, "zw", self.config)
        gamma = UniSeries(self.degree // 2, self._gamma, True, "R", self.config)
        residual = conjugacy_residual(L, gamma, self.jet.with_order(self.degree), self.config)
        tolerance = residual_tolerance(condition_factor(self.lam, self.degree), self.config)
        if residual > tolerance * max(mp.mpf(1), L.max_abs()):
            logger.warning(f"Conjugacy residual {mp.nstr(residual, 5)} exceeds {mp.nstr(tolerance, 5)}")
        return AdmissiblePair(L, gamma, residual)


def solve_admissible(jet: DiffeoJet, rho: Optional[UniSeries] = None, order: Optional[int] = None,
                     config: Optional[NormalFormConfig] = None) -> AdmissiblePair:
    """The unique admissible pair with resonant part ρ."""
    return AdmissibleSolver(jet, order, ResonantPolicy(rho), config).solve()


def solve_admissible_incremental(solver: AdmissibleSolver) -> AdmissibleSolver:
    """Advance an incremental solver by one total degree."""
    return solver.step()


def solve_admissible_chi(jet: DiffeoJet, chi: UniSeries, order: Optional[int] = None,
                         config: Optional[NormalFormConfig] = None) -> AdmissiblePair:
    """The unique admissible pair whose even diagonal part χ_L equals chi."""
    config = resolve(config)
    if abs(chi.coeff(1) - 1) > config.tolerance or abs(chi.coeff(0)) > config.tolerance:
        raise ValueError("chi must be tangent to the identity")
    return AdmissibleSolver(jet, order, ChiPolicy(chi), config).solve()


def resonant_free(jet: DiffeoJet, order: Optional[int] = None,
                  config: Optional[NormalFormConfig] = None) -> AdmissiblePair:
    return solve_admissible(jet, None, order, config)


def resonant_part(L: BiSeries, config: Optional[NormalFormConfig] = None) -> UniSeries:
    """ρ_L(R) = Σ_{n>=2} L_nn R^n."""
    coeffs = {n: value for n, value in L.diagonal_coefficients().items() if n >= 2}
    return UniSeries(L.order // 2, coeffs, True, "R", config)


def chi_of(L: BiSeries, config: Optional[NormalFormConfig] = None) -> UniSeries:
    """χ_L with χ_L(z²) = ½(L(z, z) + L(-z, -z))."""
    totals: Dict[int, Any] = {}
    for (r, s), value in L.items():
        if (r + s) % 2 == 0:
            totals[(r + s) // 2] = totals.get((r + s) // 2, 0) + value
    return UniSeries(L.order // 2, totals, True, "R", config)


def conjugate_radial(g: UniSeries, gamma: UniSeries, config: Optional[NormalFormConfig] = None) -> UniSeries:
    """g∘Γ∘g⁻¹."""
    return compose_uni(g, compose_uni(gamma, invert_uni(g, config), config), config)


def _check_group_element(g: UniSeries, config: NormalFormConfig) -> None:
    if abs(g.coeff(0)) > config.tolerance or abs(g.coeff(1) - 1) > config.tolerance:
        raise ValueError("g must be tangent to the identity")


def group_act(g: UniSeries, pair: AdmissiblePair, jet: DiffeoJet,
              config: Optional[NormalFormConfig] = None) -> AdmissiblePair:
    """(g∘L, g∘Γ∘g⁻¹), re-verified against F."""
    config = resolve(config)
    _check_group_element(g, config)
    L = HermitianBiSeries.from_series(compose_uni_bi(g.realified(config), pair.L, config), config)
    g_radial = g.with_order(pair.Gamma.order).realified(config)
    gamma = conjugate_radial(g_radial, pair.Gamma, config).realified(config)
    residual = conjugacy_residual(L, gamma, jet, config)
    return AdmissiblePair(L, gamma, residual)


def solve_orbit_element(L: BiSeries, target: BiSeries,
                        config: Optional[NormalFormConfig] = None) -> Tuple[UniSeries, Any]:
    """
    g with g∘L = target, solved on the diagonal monomials (zw)^n

    Returns:
        (g, residual) where residual = max |g∘L - target| through the common order
    """
    config = resolve(config)
    order = min(L.order, target.order)
    L = L.truncate(order)
    target = target.truncate(order)
    coeffs: Dict[int, Any] = {1: mp.mpc(1)}
    for n in range(2, order // 2 + 1):
        partial = UniSeries(order // 2, coeffs, False, "R")
        known = compose_uni_bi(partial, L, config).coeff(n, n)
        coeffs[n] = target.coeff(n, n) - known
    g = UniSeries(order // 2, coeffs, True, "R", config)
    residual = compose_uni_bi(g, L, config).max_abs_difference(target)
    if residual > config.tolerance * max(mp.mpf(1), target.max_abs()):
        logger.debug(f"Orbit residual {mp.nstr(residual, 5)}: series are not on one orbit")
    return g, residual


def require_admissible(pair: AdmissiblePair, jet: DiffeoJet, config: Optional[NormalFormConfig] = None) -> None:
    """Raise NotAdmissibleError if the pair's residual exceeds the scaled tolerance."""
    config = resolve(config)
    residual = pair.verify(jet, config)
    tolerance = residual_tolerance(condition_factor(jet.lam, pair.order), config)
    if residual > tolerance * max(mp.mpf(1), pair.L.max_abs()):
        raise NotAdmissibleError(f"Conjugacy residual {mp.nstr(residual, 5)} exceeds {mp.nstr(tolerance, 5)}")
