"""
Planar Polynomial Maps - exact compositions of polynomial factors over Q

A map is stored as the list of factors it is composed of (factors[0] is
applied first), so long products of shears never need to be expanded.
Jacobian determinants follow from the chain rule and jets from truncated
composition; both are exact.
"""

import logging
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from mpmath import mp
from sympy import Rational
from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement, ring

logger = logging.getLogger(__name__)

PLANE, X, Y = ring("x,y", QQ)

Components = Tuple[PolyElement, PolyElement]

# Refuse to expand compositions whose degree bound exceeds this
DEFAULT_EXPANSION_LIMIT = 64


def to_rational(value: Any) -> Any:
    """Convert ints, strings ("3/5", "0.25"), Fractions and sympy Rationals to QQ elements."""
    if isinstance(value, str):
        return QQ.from_sympy(Rational(value.strip()))
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Rational):
        return QQ.from_sympy(value)
    return QQ.convert(value)


def polynomial(terms: Dict[Tuple[int, int], Any]) -> PolyElement:
    """Polynomial in x, y from a map (i, j) -> coefficient of x^i y^j."""
    return PLANE.from_dict({monom: to_rational(c) for monom, c in terms.items() if to_rational(c) != 0})


def total_degree(p: PolyElement) -> int:
    """Total degree; -1 for the zero polynomial."""
    return max((i + j for i, j in p.keys()), default=-1)


def truncate(p: PolyElement, order: int) -> PolyElement:
    result = PLANE.zero
    for monom, coeff in p.items():
        if monom[0] + monom[1] <= order:
            result[monom] = coeff
    return result


def homogeneous(p: PolyElement, degree: int) -> PolyElement:
    result = PLANE.zero
    for monom, coeff in p.items():
        if monom[0] + monom[1] == degree:
            result[monom] = coeff
    return result


def multiply_truncated(p1: PolyElement, p2: PolyElement, order: int) -> PolyElement:
    result = PLANE.zero
    get = result.get
    items2 = sorted(p2.items(), key=lambda item: item[0][0] + item[0][1])
    for (i1, j1), c1 in p1.items():
        budget = order - i1 - j1
        for (i2, j2), c2 in items2:
            if i2 + j2 > budget:
                break
            monom = (i1 + i2, j1 + j2)
            result[monom] = get(monom, 0) + c1 * c2
    result.strip_zero()
    return result


def compose_truncated(p: PolyElement, u: PolyElement, v: PolyElement, order: int) -> PolyElement:
    """p(u, v) truncated at total degree order; u and v must vanish at the origin."""
    rows: Dict[int, Dict[int, Any]] = {}
    for (i, j), coeff in p.items():
        if i + j <= order:
            rows.setdefault(i, {})[j] = coeff
    if not rows:
        return PLANE.zero
    u = truncate(u, order)
    v = truncate(v, order)
    max_j = max(max(row) for row in rows.values())
    v_powers = [PLANE.one]
    for _ in range(max_j):
        v_powers.append(multiply_truncated(v_powers[-1], v, order))
    result = PLANE.zero
    for i in range(max(rows), -1, -1):
        if result:
            result = multiply_truncated(result, u, order)
        for j, coeff in rows.get(i, {}).items():
            result = result + v_powers[j] * coeff
    return result


def compose_exact(p: PolyElement, u: PolyElement, v: PolyElement) -> PolyElement:
    return p.compose([(X, u), (Y, v)])


def jacobian(components: Components) -> PolyElement:
    p, q = components
    return p.diff(X) * q.diff(Y) - p.diff(Y) * q.diff(X)


def linear_part(components: Components) -> Tuple[Any, Any, Any, Any]:
    """(a, b, c, d) with the linear part (a x + b y, c x + d y)."""
    p, q = components
    return (p.get((1, 0), QQ(0)), p.get((0, 1), QQ(0)), q.get((1, 0), QQ(0)), q.get((0, 1), QQ(0)))


def inverse_jet(components: Components, order: int) -> Components:
    """
    Inverse of a polynomial map through total degree order

    Raises:
        ValueError: the linear part is singular or the map moves the origin
    """
    p, q = (truncate(c, order) for c in components)
    if p.get((0, 0), 0) or q.get((0, 0), 0):
        raise ValueError("The map must fix the origin")
    a, b, c, d = linear_part((p, q))
    det = a * d - b * c
    if det == 0:
        raise ValueError("The linear part is singular")
    higher_p = p - (X * a + Y * b)
    higher_q = q - (X * c + Y * d)
    inv = (d / det, -b / det, -c / det, a / det)
    u, v = X * inv[0] + Y * inv[1], X * inv[2] + Y * inv[3]
    for _ in range(order):
        rest_p = X - compose_truncated(higher_p, u, v, order)
        rest_q = Y - compose_truncated(higher_q, u, v, order)
        u, v = rest_p * inv[0] + rest_q * inv[1], rest_p * inv[2] + rest_q * inv[3]
    return u, v


class PlanarPolyMap:
    """
    An exact polynomial map of the plane kept as a composition of factors.

    ``factors[0]`` is applied first. ``jet``, ``jacobian_determinant`` and
    ``is_odd`` work on the factors directly; ``expand`` multiplies them out.
    """

    def __init__(self, factors: Sequence[Components]):
        self.factors: List[Components] = [(PLANE(p), PLANE(q)) for p, q in factors]

    @classmethod
    def identity(cls) -> "PlanarPolyMap":
        return cls([])

    @classmethod
    def linear(cls, a: Any, b: Any, c: Any, d: Any) -> "PlanarPolyMap":
        """(x, y) -> (a x + b y, c x + d y)."""
        a, b, c, d = (to_rational(v) for v in (a, b, c, d))
        return cls([(X * a + Y * b, X * c + Y * d)])

    @classmethod
    def from_components(cls, p: PolyElement, q: PolyElement) -> "PlanarPolyMap":
        return cls([(p, q)])

    def then(self, other: "PlanarPolyMap") -> "PlanarPolyMap":
        """other∘self."""
        return PlanarPolyMap(self.factors + other.factors)

    def compose(self, other: "PlanarPolyMap") -> "PlanarPolyMap":
        """self∘other."""
        return PlanarPolyMap(other.factors + self.factors)

    def degree_bound(self) -> int:
        bound = 1
        for p, q in self.factors:
            bound *= max(total_degree(p), total_degree(q), 1)
        return bound

    def jet(self, order: int) -> Components:
        """Components of the composition truncated at total degree order."""
        u, v = X, Y
        for p, q in self.factors:
            u, v = compose_truncated(p, u, v, order), compose_truncated(q, u, v, order)
        return truncate(u, order), truncate(v, order)

    def expand(self, max_degree: int = DEFAULT_EXPANSION_LIMIT) -> Components:
        """
        Fully expanded components

        Raises:
            ValueError: the degree bound exceeds max_degree
        """
        bound = self.degree_bound()
        if bound > max_degree:
            raise ValueError(f"Expansion degree bound {bound} exceeds {max_degree}")
        u, v = X, Y
        for p, q in self.factors:
            u, v = compose_exact(p, u, v), compose_exact(q, u, v)
        return u, v

    def jacobian_determinant(self, max_degree: int = DEFAULT_EXPANSION_LIMIT) -> PolyElement:
        """det DF by the chain rule; constant factor determinants need no expansion."""
        result = PLANE.one
        prefix = PlanarPolyMap.identity()
        for factor in self.factors:
            det = jacobian(factor)
            if total_degree(det) <= 0:
                result = result * det
            else:
                u, v = prefix.expand(max_degree)
                result = result * compose_exact(det, u, v)
            prefix = PlanarPolyMap(prefix.factors + [factor])
        return result

    def is_area_preserving(self, max_degree: int = DEFAULT_EXPANSION_LIMIT) -> bool:
        return self.jacobian_determinant(max_degree) == PLANE.one

    def is_odd(self) -> bool:
        """Every factor has odd-degree monomials only."""
        return all((i + j) % 2 == 1 for p, q in self.factors for (i, j) in list(p.keys()) + list(q.keys()))

    def apply(self, point: Tuple[Any, Any]) -> Tuple[Any, Any]:
        """Exact image of a rational point."""
        x, y = (to_rational(c) for c in point)
        for p, q in self.factors:
            x, y = p.evaluate([(X, x), (Y, y)]), q.evaluate([(X, x), (Y, y)])
        return x, y

    def __len__(self) -> int:
        return len(self.factors)

    def __repr__(self) -> str:
        return f"PlanarPolyMap(factors={len(self.factors)}, degree_bound={self.degree_bound()})"


def rational_rotation(omega: Any, max_denominator: int = 10 ** 6) -> PlanarPolyMap:
    """
    Exact rotation by the rational point ((1 - t²)/(1 + t²), 2t/(1 + t²)), t ≈ tan(πω)

    The rotation number of the result is arctan(t)/π, close to ω.
    """
    omega = mp.mpf(omega)
    if mp.almosteq(mp.frac(omega * 2), 0):
        raise ValueError("ω must not be a multiple of 1/2")
    t = Rational(mp.nstr(mp.tan(mp.pi * omega), 30)).limit_denominator(max_denominator)
    cos_value = (1 - t ** 2) / (1 + t ** 2)
    sin_value = 2 * t / (1 + t ** 2)
    return PlanarPolyMap.linear(cos_value, -sin_value, sin_value, cos_value)
