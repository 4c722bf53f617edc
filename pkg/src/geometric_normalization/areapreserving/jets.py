"""
Jet Extension - polynomial area-preserving maps with a prescribed N-jet

Starting from the linear part, each degree n + 1 is fixed by composing with
shears: J∘F_n⁻¹ = Id + (g, h) + ..., and (g, h) = (∂H/∂y, -∂H/∂x) for a
homogeneous H that span_decompose splits into powers of linear forms.
"""

import logging
from typing import Any, Optional, Tuple

from geometric_normalization.areapreserving.polymap import (
    PLANE, X, Y, Components, PlanarPolyMap, compose_truncated, homogeneous, inverse_jet, jacobian,
    linear_part, total_degree, truncate,
)
from geometric_normalization.areapreserving.shears import hamiltonian_primitive, shears_for_hamiltonian
from geometric_normalization.exceptions import DecompositionError, JetNotExtendableError, NormalFormError

logger = logging.getLogger(__name__)


def area_defect(components: Components, order: int) -> Any:
    """det DJ - 1 through degree order - 1, exact for a jet of the given order."""
    return truncate(jacobian(components) - 1, order - 1)


def _first_even_degree(components: Components) -> Optional[int]:
    degrees = sorted({i + j for p in components for (i, j) in p.keys() if (i + j) % 2 == 0})
    return degrees[0] if degrees else None


def extend_jet(jet: Components, order: Optional[int] = None, odd: bool = False) -> PlanarPolyMap:
    """
    Polynomial area-preserving map whose order-jet is the given jet

    Args:
        jet: Components (P, Q) over Q with P, Q vanishing at the origin
        order: Jet order N; defaults to the total degree of the jet
        odd: Require an odd jet and return an odd map

    Raises:
        JetNotExtendableError: the area defect does not vanish at some degree
    """
    p, q = PLANE(jet[0]), PLANE(jet[1])
    order = max(total_degree(p), total_degree(q), 1) if order is None else order
    p, q = truncate(p, order), truncate(q, order)
    if p.get((0, 0), 0) or q.get((0, 0), 0):
        raise JetNotExtendableError("The jet must fix the origin", degree=0)
    if odd:
        even = _first_even_degree((p, q))
        if even is not None:
            raise JetNotExtendableError(f"Odd extension requested for a jet with degree-{even} terms", degree=even)

    a, b, c, d = linear_part((p, q))
    if a * d - b * c != 1:
        raise JetNotExtendableError(f"Linear part has determinant {a * d - b * c}, not 1", degree=1)
    result = PlanarPolyMap.linear(a, b, c, d)

    for n in range(1, order):
        top = n + 1
        if odd and top % 2 == 0:
            continue
        inverse = inverse_jet(result.jet(top), top)
        residual_p = compose_truncated(p, inverse[0], inverse[1], top) - X
        residual_q = compose_truncated(q, inverse[0], inverse[1], top) - Y
        if truncate(residual_p, n) or truncate(residual_q, n):
            raise NormalFormError(f"Extension lost agreement below degree {top}")
        g, h = homogeneous(residual_p, top), homogeneous(residual_q, top)
        if not g and not h:
            continue
        try:
            H = hamiltonian_primitive(g, h)
        except DecompositionError:
            raise JetNotExtendableError(f"The degree-{top} correction is not Hamiltonian", degree=top)
        shears = shears_for_hamiltonian(H, top + 1)
        result = result.then(shears)
        logger.debug(f"Degree {top}: appended {len(shears)} shears")

    if result.jet(order) != (p, q):
        raise NormalFormError(f"Extended map does not reproduce the {order}-jet")
    logger.info(f"Extended a {order}-jet with {len(result)} factors")
    return result


def jet_of_map(components: Tuple, order: int) -> Components:
    """Truncation of explicit components, as accepted by extend_jet."""
    return truncate(PLANE(components[0]), order), truncate(PLANE(components[1]), order)
