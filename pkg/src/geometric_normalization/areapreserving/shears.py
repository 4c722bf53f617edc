"""
Hamiltonian Shears - exact area-preserving building blocks

shear_map(a, b, c, d) is the time-one map of H = c(ax + by)^(d+1), which is
polynomial because ax + by is constant along the flow. Homogeneous
Hamiltonians are split into sums of such powers by span_decompose.
"""

import logging
from typing import Any, List, Tuple

from mpmath import mp
from sympy import Matrix, Rational, binomial

from geometric_normalization.areapreserving.polymap import (
    PLANE, X, Y, PlanarPolyMap, homogeneous, to_rational,
)
from geometric_normalization.exceptions import DecompositionError

logger = logging.getLogger(__name__)

# Node directions are rational points on the unit circle with denominators below this
NODE_DENOMINATOR = 10 ** 4


def shear_map(a: Any, b: Any, c: Any, d: int) -> PlanarPolyMap:
    """(x, y) -> (x + (d+1) c b (ax + by)^d, y - (d+1) c a (ax + by)^d)."""
    if d < 1:
        raise ValueError(f"Shear degree must be >= 1, got {d}")
    a, b, c = (to_rational(v) for v in (a, b, c))
    form = (X * a + Y * b) ** d
    scale = c * (d + 1)
    return PlanarPolyMap([(X + form * (scale * b), Y - form * (scale * a))])


def _integrate(p: Any, variable: int) -> Any:
    terms = {}
    for (i, j), coeff in p.items():
        if variable == 0:
            terms[(i + 1, j)] = coeff / (i + 1)
        else:
            terms[(i, j + 1)] = coeff / (j + 1)
    return PLANE.from_dict(terms) if terms else PLANE.zero


def hamiltonian_primitive(g: Any, h: Any) -> Any:
    """
    H with ∂H/∂y = g and ∂H/∂x = -h, without constant term

    Raises:
        DecompositionError: g_x + h_y != 0
    """
    g, h = PLANE(g), PLANE(h)
    if g.diff(X) + h.diff(Y) != 0:
        raise DecompositionError("The pair (g, h) is not Hamiltonian: g_x + h_y != 0")
    partial = _integrate(g, 1)
    remainder = -h - partial.diff(X)
    return partial + _integrate(remainder, 0)


def span_nodes(degree: int) -> List[Tuple[Any, Any]]:
    """
    degree + 1 distinct rational directions (a_j, b_j) on the unit circle

    (a_j, b_j) = ((1 - t²)/(1 + t²), 2t/(1 + t²)) with t a rational
    approximation of tan(jπ/(2(degree + 1))), so the angles are close to
    jπ/(degree + 1).
    """
    nodes = []
    for j in range(degree + 1):
        half_angle = mp.mpf(j) * mp.pi / (2 * (degree + 1))
        t = Rational(mp.nstr(mp.tan(half_angle), 30)).limit_denominator(NODE_DENOMINATOR)
        nodes.append(((1 - t ** 2) / (1 + t ** 2), 2 * t / (1 + t ** 2)))
    return nodes


def span_decompose(H: Any, degree: int) -> List[Tuple[Any, Any, Any]]:
    """
    Write a homogeneous H of the given degree as Σ c_j (a_j x + b_j y)^degree

    Returns:
        degree + 1 triples (c_j, a_j, b_j) of sympy Rationals; the
        reconstruction is exact

    Raises:
        DecompositionError: H is not homogeneous of that degree or the node system is singular
    """
    H = PLANE(H)
    if H != homogeneous(H, degree):
        raise DecompositionError(f"H is not homogeneous of degree {degree}")
    nodes = span_nodes(degree)
    if not H:
        return [(Rational(0), a, b) for a, b in nodes]
    system = Matrix(degree + 1, degree + 1,
                    lambda p, j: binomial(degree, p) * nodes[j][0] ** p * nodes[j][1] ** (degree - p))
    rhs = Matrix(degree + 1, 1, lambda p, _: PLANE.domain.to_sympy(H.get((p, degree - p), PLANE.domain.zero)))
    try:
        solution = system.LUsolve(rhs)
    except ValueError as e:
        raise DecompositionError(f"Span node system is singular at degree {degree}: {e}")
    terms = [(solution[j], a, b) for j, (a, b) in enumerate(nodes)]
    rebuilt = PLANE.zero
    for c, a, b in terms:
        rebuilt += (X * to_rational(a) + Y * to_rational(b)) ** degree * to_rational(c)
    if rebuilt != H:
        raise DecompositionError(f"Span decomposition does not reproduce H at degree {degree}")
    logger.debug(f"Decomposed a degree-{degree} Hamiltonian into {len(terms)} powers")
    return terms


def shears_for_hamiltonian(H: Any, degree: int) -> PlanarPolyMap:
    """Shears whose composition agrees with Id + (∂H/∂y, -∂H/∂x) through degree - 1."""
    result = PlanarPolyMap.identity()
    for c, a, b in span_decompose(H, degree):
        if c != 0:
            result = result.then(shear_map(a, b, c, degree - 1))
    return result

