#!/usr/bin/env python3
"""
Geometric Normalization - Command Line Interface

Data is written to stdout (or --output), diagnostics to stderr. Exit codes:
0 on success, 2 when a precision or small-divisor guard trips or a
verification fails, 1 on usage and input errors.
"""

import argparse
import logging
import sys
import traceback
from typing import Any, Dict, List, Optional

from mpmath import mp

from geometric_normalization import __version__
from geometric_normalization.areapreserving.generating import generating_map
from geometric_normalization.areapreserving.jets import extend_jet
from geometric_normalization.areapreserving.polymap import total_degree
from geometric_normalization.arithmetic.continued_fraction import (
    ContinuedFraction, bruno_partial_sums, determinant_identity_holds, golden_fraction, non_bruno_construct,
)
from geometric_normalization.arithmetic.liouville import odd_super_liouville_construct, verify_odd_super_liouville
from geometric_normalization.arithmetic.rotation import RotationNumber
from geometric_normalization.config import NormalFormConfig, apply_precision, residual_tolerance
from geometric_normalization.constructions.classic import CLASSIC_KINDS, classic_map, covering_identity_check
from geometric_normalization.constructions.divergent import (
    ConstructedExample, odd_siegel_divergent, siegel_divergent, tau_divergent,
)
from geometric_normalization.diagnostics.growth import growth_profile
from geometric_normalization.dynamics.admissible import (
    AdmissiblePair, condition_factor, resonant_free, solve_admissible,
)
from geometric_normalization.dynamics.conservative import (
    is_formally_conservative, linearization_residual, linearize_holomorphic,
)
from geometric_normalization.dynamics.foliation import balanced, balanced_identity_residual
from geometric_normalization.dynamics.involution import tau_via_ell, tau_via_recursion
from geometric_normalization.dynamics.jet import DiffeoJet, random_jet
from geometric_normalization.dynamics.normal_form import normalize
from geometric_normalization.exceptions import GuardError, NormalFormError, UsageError
from geometric_normalization.family.ipm import TARGETS, ipm_degree_check
from geometric_normalization.involutions.conjugators import conjugator_of
from geometric_normalization.series.uni import UniSeries
from geometric_normalization.utils.file_utils import read_json_document, write_text_output
from geometric_normalization.utils.serialization import (
    cf_to_dict, dumps, format_number, growth_to_csv, jet_from_dict, jet_to_dict, pair_to_dict,
    polymap_components_from_dict, polymap_components_to_dict, polymap_to_dict, polynomial_from_dict,
    series_from_dict, series_to_dict,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_GUARD = 2


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting on bad usage."""

    def error(self, message: str):
        raise UsageError(message)


def _int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"Expected comma-separated integers, got '{text}'")


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--omega", default="golden", help="Rotation number: golden, cf:a,b,c or a decimal")
    common.add_argument("--order", type=int, help="Truncation order N")
    common.add_argument("--precision-bits", type=int, default=256, help="Coefficient precision in bits")
    common.add_argument("--tol", type=float, default=1e-30, help="Residual tolerance")
    common.add_argument("--format", choices=["json", "csv"], default="json", help="Output format")
    common.add_argument("--output", help="Write output to this file instead of stdout")
    common.add_argument("--verbose", "-v", action="store_true", help="Debug logging on stderr")
    common.add_argument("--seed", type=int, default=0, help="Seed for random test jets (default 0)")
    common.add_argument("--threads", type=int, default=1, help="Worker threads where supported")
    return common


def _jet_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", help="DiffeoJet JSON; a random jet is generated when omitted")
    parser.add_argument("--degree", type=int, default=4, help="Highest degree of a random jet")
    parser.add_argument("--bound", type=float, default=1.0, help="Coefficient bound of a random jet")
    parser.add_argument("--odd", action="store_true", help="Random jet with odd degrees only")
    parser.add_argument("--holomorphic", action="store_true", help="Random jet without z̄ terms")


def _witness_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed-cf", type=_int_list, help="Seed quotients for an odd super-Liouville ω")
    parser.add_argument("--ell", type=int, help="Number of seed quotients kept (default: all)")
    parser.add_argument("--depth", type=int, default=3, help="Depth of the constructed continued fraction")
    parser.add_argument("--p", type=int, default=1, help="Number of witnesses")
    parser.add_argument("--scan-limit", type=int, help="Largest power of λ scanned for witnesses")


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = _Parser(prog="geonorm", description="Geometric normalization of planar maps")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", parser_class=_Parser)

    for name, description in [
        ("admissible", "Admissible pair (L, Γ) with a prescribed resonant part"),
        ("balanced", "The balanced pair (L_F, Γ_F)"),
        ("normalize", "Geometric normal form G = Φ∘F∘Φ⁻¹ and its polar data"),
        ("linearize", "Holomorphic linearizer h with h∘F = λh"),
        ("conservative", "Test Γ = Id"),
    ]:
        sub = commands.add_parser(name, parents=[common], help=description)
        _jet_options(sub)
        if name == "admissible":
            sub.add_argument("--rho", help="Resonant part as univariate series JSON (vars 'R')")

    sub = commands.add_parser("involution", parents=[common], help="Foliation involution τ_F")
    _jet_options(sub)
    sub.add_argument("--conjugator", action="store_true", help="Also report the conjugator U, V, E identities")

    sub = commands.add_parser("verify", parents=[common], help="Conjugacy residual of a pair or of the resonant-free pair")
    _jet_options(sub)
    sub.add_argument("--pair", help="AdmissiblePair JSON to verify")

    sub = commands.add_parser("bruno", parents=[common], help="Bruno partial sums")
    sub.add_argument("--cf", type=_int_list, help="Quotients a,b,c; golden mean when omitted")
    sub.add_argument("--depth", type=int, default=10, help="Number of partial sums")
    sub.add_argument("--non-bruno", action="store_true", help="Use the explicit non-Bruno quotients")

    sub = commands.add_parser("odd-liouville", parents=[common], help="Construct an odd super-Liouville ω")
    sub.add_argument("--seed-cf", type=_int_list, default=[2, 1], help="Seed quotients")
    sub.add_argument("--ell", type=int, help="Number of seed quotients kept (default: all)")
    sub.add_argument("--depth", type=int, default=3, help="Total number of quotients")

    sub = commands.add_parser("jet-extend", parents=[common], help="Polynomial area-preserving map with a given jet")
    sub.add_argument("--input", required=True, help="Polynomial map JSON with vars 'xy'")
    sub.add_argument("--odd", action="store_true", help="Require and produce an odd map")

    sub = commands.add_parser("generating-map", parents=[common], help="Area-preserving jet from u(x, y')")
    sub.add_argument("--input", required=True, help="Polynomial JSON {vars: 'xy', entries: [[i, j, c], ...]}")

    for name, description in [
        ("example-siegel", "Siegel-type divergent example"),
        ("example-tau", "Example with a divergent involution"),
        ("example-odd", "Odd Siegel-type example at ω = ω'/2"),
    ]:
        sub = commands.add_parser(name, parents=[common], help=description)
        _witness_options(sub)
        sub.add_argument("--input", help="Prescribed jet J as DiffeoJet JSON")

    sub = commands.add_parser("example-classic", parents=[common], help="Classic holomorphic maps")
    sub.add_argument("--kind", choices=CLASSIC_KINDS, default="yoccoz")
    sub.add_argument("--d", type=int, default=2)

    sub = commands.add_parser("covering", parents=[common], help="Covering identity ρ∘f_d = P_{dω,d}∘ρ")
    sub.add_argument("--d", type=int, default=2)

    sub = commands.add_parser("ipm-check", parents=[common], help="Degree bounds in t along an affine family")
    sub.add_argument("--input0", help="DiffeoJet JSON of F0 (random when omitted)")
    sub.add_argument("--input1", help="DiffeoJet JSON of F1 (random when omitted)")
    sub.add_argument("--degree", type=int, default=4, help="Highest degree of random endpoints")
    sub.add_argument("--targets", default=",".join(TARGETS), help="Comma-separated targets")
    sub.add_argument("--samples", type=int, help="Number of interpolation nodes")

    sub = commands.add_parser("growth", parents=[common], help="Coefficient growth profile of a series")
    sub.add_argument("--input", required=True, help="Series JSON")
    return parser


# Helpers

def _config(args: argparse.Namespace) -> NormalFormConfig:
    return NormalFormConfig(precision_bits=args.precision_bits, tolerance=args.tol)


def _order(args: argparse.Namespace, config: NormalFormConfig, fallback: Optional[int] = None) -> int:
    if args.order is not None:
        return args.order
    return fallback if fallback is not None else config.default_order


def _load_jet(args: argparse.Namespace, config: NormalFormConfig, path: Optional[str] = None,
              seed: Optional[int] = None) -> DiffeoJet:
    path = path if path is not None else getattr(args, "input", None)
    order = _order(args, config)
    if path:
        return jet_from_dict(read_json_document(path), order, config)
    return random_jet(RotationNumber.parse(args.omega), args.degree, order, args.seed if seed is None else seed,
                      getattr(args, "bound", 1.0), getattr(args, "odd", False),
                      getattr(args, "holomorphic", False), config)


def _emit(args: argparse.Namespace, document: Dict[str, Any]) -> None:
    write_text_output(dumps(document), args.output)


def _example_omega(args: argparse.Namespace, config: NormalFormConfig) -> RotationNumber:
    if args.seed_cf:
        ell = len(args.seed_cf) if args.ell is None else args.ell
        cf = odd_super_liouville_construct(args.seed_cf, ell, args.depth, config)
        omega = RotationNumber.from_cf(cf)
    else:
        omega = RotationNumber.parse(args.omega)
    if omega.required_precision() > mp.prec:
        logger.warning(f"ω needs about {omega.required_precision()} bits; working precision is {mp.prec}")
    return omega


def _example_document(example: ConstructedExample) -> Dict[str, Any]:
    witnesses = []
    for record in example.witnesses:
        witnesses.append({
            "p": record.p,
            "n": record.n,
            "sign": format_number(mp.re(mp.mpc(record.sign))),
            "free_part": [format_number(mp.re(record.free_part)), format_number(mp.im(record.free_part))],
            "distance": format_number(record.distance),
            "attained": format_number(record.attained),
            "bound": format_number(record.bound),
            "satisfied": record.satisfied,
        })
    document = {"jet": jet_to_dict(example.jet), "witnesses": witnesses, "complete": example.complete,
                "holds": example.holds}
    if example.series is not None:
        document["series"] = series_to_dict(example.series)
    return document


# Subcommands

def cmd_admissible(args: argparse.Namespace, config: NormalFormConfig) -> int:
    jet = _load_jet(args, config)
    rho = None
    if args.rho:
        rho = series_from_dict(read_json_document(args.rho), config)
        if not isinstance(rho, UniSeries):
            raise UsageError("--rho must be a univariate series")
    pair = solve_admissible(jet, rho, jet.order, config)
    _emit(args, pair_to_dict(pair))
    return EXIT_OK


def cmd_balanced(args: argparse.Namespace, config: NormalFormConfig) -> int:
    jet = _load_jet(args, config)
    pair = balanced(jet, jet.order, config)
    document = pair_to_dict(pair)
    document["balanced_identity_residual"] = format_number(balanced_identity_residual(pair.L, config))
    _emit(args, document)
    return EXIT_OK


def cmd_involution(args: argparse.Namespace, config: NormalFormConfig) -> int:
    jet = _load_jet(args, config)
    pair = resonant_free(jet, jet.order, config)
    via_ell = tau_via_ell(pair.L, config)
    via_recursion = tau_via_recursion(pair.L, config)
    document = {
        "tau": series_to_dict(via_recursion.tau),
        "two_path_difference": format_number(via_ell.tau.max_abs_difference(via_recursion.tau)),
        "involution_defect": format_number(via_recursion.defect(config)),
    }
    if args.conjugator:
        conjugator = conjugator_of(via_recursion, config)
        document["conjugator"] = {
            "U": series_to_dict(conjugator.U),
            "V": series_to_dict(conjugator.V),
            "E": series_to_dict(conjugator.E),
            "conjugacy_residual": format_number(conjugator.conjugacy_residual),
            "inverse_residual": format_number(conjugator.inverse_residual),
            "evenness_residual": format_number(conjugator.evenness_residual),
            "invariance_residual": format_number(conjugator.invariance_residual),
        }
    _emit(args, document)
    return EXIT_OK


def cmd_normalize(args: argparse.Namespace, config: NormalFormConfig) -> int:
    jet = _load_jet(args, config)
    report = normalize(jet, jet.order, config)
    _emit(args, {
        "pair": pair_to_dict(report.pair),
        "phi": series_to_dict(report.phi),
        "morse_residual": format_number(report.morse_residual),
        "normal_form": series_to_dict(report.normal_form),
        "off_diagonal_residual": format_number(report.off_diagonal_residual),
        "radial_factor": series_to_dict(report.radial_factor),
        "phase": series_to_dict(report.phase),
        "conservative": report.conservative,
    })
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, config: NormalFormConfig) -> int:
    jet = _load_jet(args, config)
    if args.pair:
        document = read_json_document(args.pair)
        L = series_from_dict(document.get("L", {}), config)
        gamma = series_from_dict(document.get("Gamma", {}), config)
        pair = AdmissiblePair(L, gamma, mp.mpf(0))
    else:
        pair = resonant_free(jet, jet.order, config)
    residual = pair.verify(jet, config)
    tolerance = residual_tolerance(condition_factor(jet.lam, pair.order), config) * max(mp.mpf(1), pair.L.max_abs())
    passed = residual <= tolerance
    _emit(args, {"order": pair.order, "residual": format_number(residual), "tolerance": format_number(tolerance),
                 "passed": passed})
    return EXIT_OK if passed else EXIT_GUARD


def cmd_linearize(args: argparse.Namespace, config: NormalFormConfig) -> int:
    jet = _load_jet(args, config)
    h, pair = linearize_holomorphic(jet, jet.order, config)
    _emit(args, {"h": series_to_dict(h), "residual": format_number(linearization_residual(h, jet, config)),
                 "pair": pair_to_dict(pair)})
    return EXIT_OK


def cmd_conservative(args: argparse.Namespace, config: NormalFormConfig) -> int:
    jet = _load_jet(args, config)
    flag, gamma = is_formally_conservative(jet, jet.order, config)
    _emit(args, {"conservative": flag, "Gamma": series_to_dict(gamma)})
    return EXIT_OK


def cmd_bruno(args: argparse.Namespace, config: NormalFormConfig) -> int:
    if args.non_bruno:
        cf = non_bruno_construct(args.depth + 1)
    elif args.cf:
        cf = ContinuedFraction(tuple(args.cf))
    else:
        cf = golden_fraction(args.depth + 1)
    sums = bruno_partial_sums(cf, min(args.depth, cf.depth - 1))
    if args.format == "csv":
        lines = ["k,partial_sum"] + [f"{k},{format_number(s)}" for k, s in enumerate(sums, 1)]
        write_text_output("\n".join(lines), args.output)
    else:
        _emit(args, {"cf": cf_to_dict(cf), "denominators": [str(q) for q in cf.denominators()],
                     "partial_sums": [format_number(s) for s in sums],
                     "determinant_identity": determinant_identity_holds(cf)})
    return EXIT_OK


def cmd_odd_liouville(args: argparse.Namespace, config: NormalFormConfig) -> int:
    ell = len(args.seed_cf) if args.ell is None else args.ell
    cf = odd_super_liouville_construct(args.seed_cf, ell, args.depth, config)
    report = verify_odd_super_liouville(cf, ell, config)
    _emit(args, {
        "cf": cf_to_dict(cf),
        "denominators": [str(q) for q in cf.denominators()],
        "records": [{"k": r.k, "q": str(r.q), "odd": r.odd, "bound_holds": r.bound_holds} for r in report.records],
        "seed_gap_holds": report.seed_gap_holds,
        "holds": report.holds,
    })
    return EXIT_OK


def cmd_jet_extend(args: argparse.Namespace, config: NormalFormConfig) -> int:
    document = read_json_document(args.input)
    components = polymap_components_from_dict(document)
    order = args.order if args.order is not None else document.get("order")
    if order is None:
        order = max(total_degree(components[0]), total_degree(components[1]), 1)
    planar_map = extend_jet(components, order, args.odd)
    result = polymap_to_dict(planar_map, order)
    result["odd"] = planar_map.is_odd()
    _emit(args, result)
    return EXIT_OK


def cmd_generating_map(args: argparse.Namespace, config: NormalFormConfig) -> int:
    u = polynomial_from_dict(read_json_document(args.input))
    order = _order(args, config)
    result = generating_map(u, order, RotationNumber.parse(args.omega), config)
    document = polymap_components_to_dict(result.components, order)
    document["area_defect_vanishes"] = not result.area_defect
    document["jet"] = jet_to_dict(result.jet)
    _emit(args, document)
    return EXIT_OK



def _run_example(args: argparse.Namespace, config: NormalFormConfig, constructor: Any, odd: bool = False) -> int:
    omega = _example_omega(args, config)
    jet = None
    if args.input:
        jet = jet_from_dict(read_json_document(args.input), None, config)
    example = constructor(omega, jet, args.p, config, args.scan_limit)
    _emit(args, _example_document(example))
    return EXIT_OK if example.holds and example.complete else EXIT_GUARD


def cmd_example_siegel(args: argparse.Namespace, config: NormalFormConfig) -> int:
    return _run_example(args, config, siegel_divergent)


def cmd_example_tau(args: argparse.Namespace, config: NormalFormConfig) -> int:
    return _run_example(args, config, tau_divergent)


def cmd_example_odd(args: argparse.Namespace, config: NormalFormConfig) -> int:
    return _run_example(args, config, odd_siegel_divergent)


def cmd_example_classic(args: argparse.Namespace, config: NormalFormConfig) -> int:
    jet = classic_map(RotationNumber.parse(args.omega), args.kind, _order(args, config), args.d, config)
    _emit(args, jet_to_dict(jet))
    return EXIT_OK


def cmd_covering(args: argparse.Namespace, config: NormalFormConfig) -> int:
    order = _order(args, config, 8)
    residual = covering_identity_check(RotationNumber.parse(args.omega), args.d, order, config)
    _emit(args, {"d": args.d, "order": order, "residual": format_number(residual)})
    return EXIT_OK


def cmd_ipm_check(args: argparse.Namespace, config: NormalFormConfig) -> int:
    targets = [t.strip() for t in args.targets.split(",") if t.strip()]
    seed = args.seed
    jet0 = _load_jet(args, config, args.input0 or "", seed)
    jet1 = _load_jet(args, config, args.input1 or "", seed + 1)
    report = ipm_degree_check(jet0, jet1, _order(args, config, 8), targets, args.threads, args.samples, config)
    if args.format == "csv":
        lines = ["target,index,bound,residual,status"]
        for check in report.checks:
            index = "-".join(str(i) for i in check.index)
            lines.append(f"{check.target},{index},{check.bound},{mp.nstr(check.residual, 8)},{check.status}")
        write_text_output("\n".join(lines), args.output)
    else:
        _emit(args, {
            "order": report.order,
            "nodes": [format_number(t) for t in report.nodes],
            "max_residual": format_number(report.max_residual),
            "holds": report.holds,
            "checks": [{"target": c.target, "index": list(c.index), "bound": c.bound,
                        "residual": mp.nstr(c.residual, 8), "status": c.status} for c in report.checks],
        })
    return EXIT_OK if report.holds else EXIT_GUARD


def cmd_growth(args: argparse.Namespace, config: NormalFormConfig) -> int:
    series = series_from_dict(read_json_document(args.input), config)
    profile = growth_profile(series, config)
    if args.format == "csv":
        write_text_output(growth_to_csv(profile), args.output)
    else:
        _emit(args, {
            "rows": [{"n": r.n, "max_abs": format_number(r.max_abs), "nth_root": format_number(r.nth_root)}
                     for r in profile.rows],
            "linear_slope": profile.linear_slope,
            "factorial_slope": profile.factorial_slope,
            "factorial_growth": profile.factorial_growth,
        })
    return EXIT_OK


COMMANDS = {
    "admissible": cmd_admissible,
    "balanced": cmd_balanced,
    "involution": cmd_involution,
    "normalize": cmd_normalize,
    "verify": cmd_verify,
    "linearize": cmd_linearize,
    "conservative": cmd_conservative,
    "bruno": cmd_bruno,
    "odd-liouville": cmd_odd_liouville,
    "jet-extend": cmd_jet_extend,
    "generating-map": cmd_generating_map,
    "example-siegel": cmd_example_siegel,
    "example-tau": cmd_example_tau,
    "example-odd": cmd_example_odd,
    "example-classic": cmd_example_classic,
    "covering": cmd_covering,
    "ipm-check": cmd_ipm_check,
    "growth": cmd_growth,
}


def run(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run one subcommand and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:
        return int(e.code or 0)
    if not args.command:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE

    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        config = _config(args)
        apply_precision(config)
        return COMMANDS[args.command](args, config)
    except GuardError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_GUARD
    except (NormalFormError, ValueError, OSError) as e:
        print(f"Error: {e}", file=sys.stderr)
        if args.verbose:
            traceback.print_exc()
        return EXIT_USAGE


def main():
    """Console script entry point"""
    sys.exit(run())


if __name__ == "__main__":
    main()
