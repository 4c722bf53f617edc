"""
Affine Family Degree Check - polynomial dependence of normal-form coefficients on t

For F_t = (1 - t)F0 + tF1 the coefficients L*_rs and L_rs are polynomials
in t of degree <= r + s - 2, τ_n of degree <= n - 1 and Γ_n of degree
<= 2n - 2. Each bound D is tested by interpolating through D + 1 Chebyshev
nodes and predicting the value at a held-out node.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from mpmath import mp

from geometric_normalization.config import NormalFormConfig, resolve
from geometric_normalization.dynamics.admissible import resonant_free
from geometric_normalization.dynamics.foliation import balanced
from geometric_normalization.dynamics.involution import tau_via_recursion
from geometric_normalization.dynamics.jet import DiffeoJet

logger = logging.getLogger(__name__)

TARGETS = ("Lstar", "tau", "Lbalanced", "Gamma")

Key = Tuple[str, Tuple[int, ...]]


@dataclass
class CoefficientCheck:
    """Holdout test of one coefficient against its degree bound."""
    target: str
    index: Tuple[int, ...]
    bound: int
    residual: Any
    scale: Any
    status: str

    @property
    def within_bound(self) -> bool:
        return self.status == "within bound"


@dataclass
class IpmReport:
    """All coefficient checks of one affine family, in deterministic order."""
    order: int
    nodes: List[Any]
    checks: List[CoefficientCheck] = field(default_factory=list)

    @property
    def max_residual(self) -> Any:
        return max((c.residual for c in self.checks), default=mp.mpf(0))

    @property
    def failures(self) -> List[CoefficientCheck]:
        return [c for c in self.checks if not c.within_bound]

    @property
    def holds(self) -> bool:
        return not self.failures


def affine_family(jet0: DiffeoJet, jet1: DiffeoJet, t: Any, check_resonance: bool = False) -> DiffeoJet:
    """(1 - t)F0 + tF1 coefficientwise; both jets share λ."""
    if jet0.omega != jet1.omega:
        raise ValueError(f"Family members have different rotation numbers: {jet0.omega}, {jet1.omega}")
    order = min(jet0.order, jet1.order)
    first, second = jet0.coefficients(), jet1.coefficients()
    t = mp.mpf(t)
    coeffs = {}
    for index in set(first) | set(second):
        coeffs[index] = (1 - t) * first.get(index, 0) + t * second.get(index, 0)
    return DiffeoJet(jet0.omega, coeffs, order, jet0.odd and jet1.odd, check_resonance=check_resonance)


def chebyshev_nodes(count: int) -> List[Any]:
    """cos((2k + 1)π / 2count), k = 0..count-1."""
    if count < 1:
        raise ValueError(f"Need at least one node, got {count}")
    return [mp.cos((2 * k + 1) * mp.pi / (2 * count)) for k in range(count)]


def degree_bound(target: str, index: Tuple[int, ...]) -> int:
    if target in ("Lstar", "Lbalanced"):
        return index[0] + index[1] - 2
    if target == "tau":
        return index[0] - 1
    if target == "Gamma":
        return 2 * index[0] - 2
    raise ValueError(f"Unknown target '{target}'; expected one of {', '.join(TARGETS)}")


def _max_bound(targets: Sequence[str], order: int) -> int:
    bounds = []
    for target in targets:
        if target in ("Lstar", "Lbalanced", "tau"):
            bounds.append(order - 2)
        else:
            bounds.append(2 * (order // 2) - 2)
    return max(bounds)


def _sample(jet: DiffeoJet, targets: Sequence[str], order: int, config: NormalFormConfig) -> Dict[Key, Any]:
    values: Dict[Key, Any] = {}
    if "Lstar" in targets or "tau" in targets:
        pair = resonant_free(jet, order, config)
        if "Lstar" in targets:
            for (r, s), value in _off_unit(pair.L, order):
                values[("Lstar", (r, s))] = value
        if "tau" in targets:
            tau = tau_via_recursion(pair.L, config).tau
            for n in range(2, order):
                values[("tau", (n,))] = tau.coeff(n)
    if "Lbalanced" in targets or "Gamma" in targets:
        pair = balanced(jet, order, config)
        if "Lbalanced" in targets:
            for (r, s), value in _off_unit(pair.L, order):
                values[("Lbalanced", (r, s))] = value
        if "Gamma" in targets:
            for n in range(2, order // 2 + 1):
                values[("Gamma", (n,))] = pair.Gamma.coeff(n)
    return values


def _off_unit(L: Any, order: int) -> List[Tuple[Tuple[int, int], Any]]:
    # every (r, s) with 3 <= r + s <= order, zeros included
    return [((r, m - r), L.coeff(r, m - r)) for m in range(3, order + 1) for r in range(m + 1)]


def interpolate_and_predict(nodes: Sequence[Any], values: Sequence[Any], degree: int, holdout: int) -> Any:
    """Fit the degree-D polynomial through the first D + 1 samples and evaluate it at nodes[holdout]."""
    size = degree + 1
    vandermonde = mp.matrix(size, size)
    rhs = mp.matrix(size, 1)
    for i in range(size):
        for j in range(size):
            vandermonde[i, j] = nodes[i] ** j
        rhs[i] = values[i]
    coefficients = mp.lu_solve(vandermonde, rhs)
    return mp.polyval([coefficients[j] for j in range(size - 1, -1, -1)], nodes[holdout])


def ipm_degree_check(jet0: DiffeoJet, jet1: DiffeoJet, order: Optional[int] = None,
                     targets: Sequence[str] = TARGETS, threads: int = 1, samples: Optional[int] = None,
                     config: Optional[NormalFormConfig] = None) -> IpmReport:
    """
    Verify the degree bounds in t for the requested targets

    Args:
        jet0, jet1: Endpoints of the affine family
        order: Solver order N
        targets: Any of "Lstar", "tau", "Lbalanced", "Gamma"
        threads: Worker threads for the per-node solves
        samples: Number of nodes; at least the largest bound plus two

    Returns:
        IpmReport with one CoefficientCheck per coefficient, sorted by target and index
    """
    config = resolve(config)
    order = min(jet0.order, jet1.order) if order is None else order
    for target in targets:
        if target not in TARGETS:
            raise ValueError(f"Unknown target '{target}'; expected one of {', '.join(TARGETS)}")
    nodes = chebyshev_nodes(max(_max_bound(targets, order) + 2, samples or 0))
    jets = [affine_family(jet0.with_order(order), jet1.with_order(order), t, check_resonance=True)
            for t in nodes]

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda jet: _sample(jet, targets, order, config), jets))
    else:
        results = [_sample(jet, targets, order, config) for jet in jets]

    report = IpmReport(order=order, nodes=nodes)
    for key in sorted(results[0]):
        target, index = key
        values = [result[key] for result in results]
        bound = degree_bound(target, index)
        scale = max(mp.mpf(1), max(abs(v) for v in values))
        tolerance = config.ipm_tolerance * scale
        residual = abs(interpolate_and_predict(nodes, values, bound, bound + 1) - values[bound + 1])
        if residual <= tolerance:
            status = "within bound"
        elif bound + 2 < len(nodes):
            relaxed = abs(interpolate_and_predict(nodes, values, bound + 1, bound + 2) - values[bound + 2])
            status = "exceeds bound" if relaxed <= tolerance else "unresolved"
        else:
            status = "unresolved"
        report.checks.append(CoefficientCheck(target, index, bound, residual, scale, status))
        if status != "within bound":
            logger.warning(f"{target}{index}: holdout residual {mp.nstr(residual, 5)} at degree {bound} ({status})")
    logger.info(f"IPM check at order {order}: {len(report.checks)} coefficients, "
                f"max residual {mp.nstr(report.max_residual, 5)}")
    return report
