"""
Serialization - JSON and CSV documents for series, jets, pairs and polynomial maps

Series:   {"order": N, "vars": "zw"|"xy", "entries": [[j, k, re, im], ...]}
          {"order": N, "vars": "z"|"R"|"u", "entries": [[n, re, im], ...]}
Jets:     {"omega": "cf:2,1,43", "order": N, "odd": false, "coeffs": [[j, k, re, im], ...]}
Pairs:    {"order": N, "L": series, "Gamma": series, "residual": str}
Polymaps: {"vars": "xy", "order": N, "components": [[[i, j, "p/q"], ...], [[i, j, "p/q"], ...]]}

Univariate entries carry one exponent and so have three fields, where
bivariate entries and jet coefficients have four; "vars" tells them apart.

Coefficients are decimal strings with enough digits to restore the working
precision; entries are sorted so equal inputs give byte-identical output.
"""

import json
import logging
import math
from typing import Any, Dict, List, Optional, Union

from mpmath import mp

from geometric_normalization.areapreserving.polymap import PLANE, Components, PlanarPolyMap, polynomial
from geometric_normalization.arithmetic.continued_fraction import ContinuedFraction
from geometric_normalization.arithmetic.rotation import RotationNumber
from geometric_normalization.config import NormalFormConfig, resolve
from geometric_normalization.dynamics.admissible import AdmissiblePair
from geometric_normalization.dynamics.jet import DiffeoJet
from geometric_normalization.exceptions import SeriesFormatError
from geometric_normalization.series.bi import BiSeries
from geometric_normalization.series.uni import UniSeries

logger = logging.getLogger(__name__)

BI_VARIABLES = ("zw", "xy")
UNI_VARIABLES = ("z", "R", "u")


def significant_digits() -> int:
    """Digits that restore the current working precision."""
    return int(math.ceil(mp.prec * math.log10(2))) + 2


def format_number(value: Any) -> str:
    return mp.nstr(mp.mpf(value), significant_digits())


def _complex_entry(value: Any) -> List[str]:
    value = mp.mpc(value)
    return [format_number(value.real), format_number(value.imag)]


def _parse_number(text: Any, where: str) -> Any:
    try:
        return mp.mpf(str(text))
    except (ValueError, TypeError):
        raise SeriesFormatError(f"Cannot parse coefficient '{text}' in {where}")


def _require(document: Any, key: str, where: str) -> Any:
    if not isinstance(document, dict) or key not in document:
        raise SeriesFormatError(f"Missing '{key}' in {where}")
    return document[key]


def series_to_dict(series: Union[BiSeries, UniSeries]) -> Dict[str, Any]:
    if isinstance(series, BiSeries):
        entries = [[j, k] + _complex_entry(v) for (j, k), v in sorted(series.items())]
        return {"order": series.order, "vars": series.variables, "entries": entries}
    entries = [[n] + _complex_entry(v) for n, v in sorted(series.items())]
    return {"order": series.order, "vars": series.variable, "entries": entries}


def series_from_dict(document: Dict[str, Any],
                     config: Optional[NormalFormConfig] = None) -> Union[BiSeries, UniSeries]:
    """
    Raises:
        SeriesFormatError: missing keys, unknown variables or malformed entries
    """
    order = _require(document, "order", "series")
    variables = _require(document, "vars", "series")
    entries = _require(document, "entries", "series")
    if not isinstance(order, int) or order < 0:
        raise SeriesFormatError(f"Series order must be a non-negative integer, got {order!r}")
    if variables in BI_VARIABLES:
        coeffs = {}
        for entry in entries:
            if not isinstance(entry, list) or len(entry) != 4:
                raise SeriesFormatError(f"Bivariate entries need [j, k, re, im], got {entry!r}")
            j, k, re, im = entry
            coeffs[(int(j), int(k))] = mp.mpc(_parse_number(re, "series"), _parse_number(im, "series"))
        return BiSeries(order, coeffs, variables)
    if variables in UNI_VARIABLES:
        coeffs = {}
        for entry in entries:
            if not isinstance(entry, list) or len(entry) != 3:
                raise SeriesFormatError(f"Univariate entries need [n, re, im], got {entry!r}")
            n, re, im = entry
            coeffs[int(n)] = mp.mpc(_parse_number(re, "series"), _parse_number(im, "series"))
        return UniSeries(order, coeffs, False, variables, config)
    raise SeriesFormatError(f"Unknown series variables '{variables}'")


def jet_to_dict(jet: DiffeoJet) -> Dict[str, Any]:
    entries = [[j, k] + _complex_entry(v) for (j, k), v in sorted(jet.coefficients().items())]
    return {"omega": str(jet.omega), "order": jet.order, "odd": jet.odd, "coeffs": entries}


def jet_from_dict(document: Dict[str, Any], order: Optional[int] = None,
                  config: Optional[NormalFormConfig] = None) -> DiffeoJet:
    """
    DiffeoJet from its JSON form; ``order`` overrides the stored order

    Raises:
        SeriesFormatError: missing keys or malformed entries
    """
    config = resolve(config)
    omega = RotationNumber.parse(str(_require(document, "omega", "jet")))
    stored_order = document.get("order", config.default_order)
    coeffs = {}
    for entry in document.get("coeffs", []):
        if not isinstance(entry, list) or len(entry) not in (3, 4):
            raise SeriesFormatError(f"Jet coefficients need [j, k, re, im], got {entry!r}")
        j, k, re = entry[:3]
        im = entry[3] if len(entry) == 4 else "0"
        coeffs[(int(j), int(k))] = mp.mpc(_parse_number(re, "jet"), _parse_number(im, "jet"))
    if (1, 0) in coeffs:
        del coeffs[(1, 0)]
    try:
        return DiffeoJet(omega, coeffs, stored_order if order is None else order,
                         bool(document.get("odd", False)), config)
    except ValueError as e:
        if isinstance(e, SeriesFormatError):
            raise
        raise SeriesFormatError(f"Invalid jet: {e}")


def pair_to_dict(pair: AdmissiblePair) -> Dict[str, Any]:
    return {
        "order": pair.order,
        "L": series_to_dict(pair.L),
        "Gamma": series_to_dict(pair.Gamma),
        "residual": format_number(pair.residual_norm),
    }


def cf_to_dict(cf: ContinuedFraction) -> Dict[str, Any]:
    return {"quotients": [str(r) for r in cf.quotients]}


def cf_from_dict(document: Dict[str, Any]) -> ContinuedFraction:
    quotients = _require(document, "quotients", "continued fraction")
    try:
        return ContinuedFraction(tuple(int(str(r)) for r in quotients))
    except ValueError as e:
        raise SeriesFormatError(f"Invalid continued fraction: {e}")


def _poly_entries(p: Any) -> List[List[Any]]:
    to_sympy = PLANE.domain.to_sympy
    return [[i, j, str(to_sympy(c))] for (i, j), c in sorted(p.items())]


def polymap_components_to_dict(components: Components, order: int) -> Dict[str, Any]:
    return {"vars": "xy", "order": order, "components": [_poly_entries(components[0]), _poly_entries(components[1])]}


def polymap_to_dict(planar_map: PlanarPolyMap, order: int) -> Dict[str, Any]:
    """The factors of a composition plus its order-jet."""
    return {
        "vars": "xy",
        "order": order,
        "factors": [[_poly_entries(p), _poly_entries(q)] for p, q in planar_map.factors],
        "jet": [_poly_entries(c) for c in planar_map.jet(order)],
    }


def polymap_components_from_dict(document: Dict[str, Any]) -> Components:
    """
    (P, Q) over Q from {"vars": "xy", "components": [...]}; entries are [i, j, c] or [i, j, re, im] with im = 0

    Raises:
        SeriesFormatError: wrong variables, complex or unparsable coefficients
    """
    if document.get("vars", "xy") != "xy":
        raise SeriesFormatError(f"Polynomial maps use vars 'xy', got '{document.get('vars')}'")
    components = _require(document, "components", "polynomial map")
    if not isinstance(components, list) or len(components) != 2:
        raise SeriesFormatError("A polynomial map needs exactly two components")
    result = []
    for entries in components:
        terms = {}
        for entry in entries:
            if not isinstance(entry, list) or len(entry) not in (3, 4):
                raise SeriesFormatError(f"Polynomial entries need [i, j, c], got {entry!r}")
            if len(entry) == 4 and str(entry[3]).strip() not in ("0", "0.0", "-0.0"):
                raise SeriesFormatError(f"Polynomial coefficients must be real, got {entry!r}")
            try:
                terms[(int(entry[0]), int(entry[1]))] = str(entry[2])
            except (TypeError, ValueError):
                raise SeriesFormatError(f"Invalid polynomial entry {entry!r}")
        try:
            result.append(polynomial(terms))
        except (ValueError, TypeError, SyntaxError) as e:
            raise SeriesFormatError(f"Cannot parse polynomial coefficients: {e}")
    return result[0], result[1]


def growth_to_csv(profile: Any) -> str:
    return "\n".join(profile.csv_rows())


def dumps(document: Any) -> str:
    """Deterministic JSON rendering."""
    return json.dumps(document, indent=2, sort_keys=True)


def polynomial_from_dict(document: Dict[str, Any]) -> Any:
    """
    A single polynomial over Q from {"vars": "xy", "entries": [[i, j, c], ...]}

    Raises:
        SeriesFormatError: wrong variables or unparsable coefficients
    """
    entries = _require(document, "entries", "polynomial")
    wrapped = {"vars": document.get("vars", "xy"), "components": [entries, []]}
    return polymap_components_from_dict(wrapped)[0]
