"""Command-line entry point.

Every report is key-sorted JSON carrying the tool version, the seed and the
order cap in force.  Exit codes: 0 success, 1 parse or validation error,
2 agreement or property failure, 3 resource cap.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from . import __version__, config
from .birkhoff import parse_datum
from .cube import Cube, extension_status_by_direction, is_n_fold_extension
from .dsl import parse_cube, parse_group, serialize_cube
from .errors import AgreementFailure, HigherExtError, ResourceCapError, ValidationError
from .groups import Subgroup, generators_of
from .higher_central import bracket_report, centralize_n, is_n_fold_central
from .homology import integral_homology
from .hopf import hopf_delta_n
from .properties import DEFAULT_BUDGET, SUITES, run_property_suite


def subgroup_json(H: Subgroup) -> dict:
    G = H.parent
    return {"order": H.order,
            "generators": [G.element_label(g) for g in generators_of(H)],
            "elements": [int(g) for g in H.array]}


def _dump(payload: dict, args: argparse.Namespace) -> str:
    payload = dict(payload, version=__version__, seed=args.seed, order_cap=config.order_cap())
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _load_cube(path: str) -> Cube:
    try:
        text = Path(path).read_text() if path != "-" else sys.stdin.read()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_cube(text)


def cmd_check_extension(args: argparse.Namespace) -> str:
    A = _load_cube(args.cube)
    status = is_n_fold_extension(A)
    if not args.dim_report:
        return "true\n" if status else "false\n"
    by_direction = extension_status_by_direction(A) if A.dim else []
    if any(s != status for s in by_direction):
        raise AgreementFailure(f"extension status depends on the direction: {by_direction}")
    return _dump({"dim": A.dim, "extension": status, "by_direction": by_direction}, args)


def _bracket_json(report) -> dict:
    return {"explicit": subgroup_json(report.explicit) if report.explicit is not None else None,
            "categorical": subgroup_json(report.categorical) if report.categorical is not None else None,
            "agree": report.agree}


def _default_route(A: Cube) -> str:
    return "both" if A.dim <= config.CATEGORICAL_BRACKET_DIM_CAP else "explicit"


def cmd_check_central(args: argparse.Namespace) -> str:
    A = _load_cube(args.cube)
    D = parse_datum(args.datum)
    central = is_n_fold_central(A, D)
    route = _default_route(A)
    if route == "explicit" and D.modulus and A.dim > 1:
        route = "categorical"
    report = bracket_report(A, D, route)
    return _dump({"central": central, "datum": D.name, "dim": A.dim, "bracket": _bracket_json(report)}, args)


def cmd_centralize(args: argparse.Namespace) -> str:
    A = _load_cube(args.cube)
    C = centralize_n(A, parse_datum(args.datum))
    text = json.dumps(serialize_cube(C), sort_keys=True) + "\n"
    if args.output:
        Path(args.output).write_text(text)
        return _dump({"written": args.output, "dim": C.dim, "top_order": C.top.order}, args)
    return text


def cmd_bracket(args: argparse.Namespace) -> str:
    A = _load_cube(args.cube)
    D = parse_datum(args.datum)
    report = bracket_report(A, D, args.route)
    if not report.agree:
        raise AgreementFailure("explicit and categorical brackets disagree")
    return _dump({"route": args.route, "datum": D.name, "dim": A.dim, **_bracket_json(report)}, args)


def cmd_hopf(args: argparse.Namespace) -> str:
    A = _load_cube(args.cube)
    D = parse_datum(args.datum)
    report = hopf_delta_n(A, D)
    return _dump({
        "datum": D.name,
        "dim": report.dim,
        "numerator": subgroup_json(report.numerator),
        "denominator": subgroup_json(report.denominator),
        "quotient_order": report.quotient.order,
        "abelian_invariants": report.abelian_invariants,
        "presentation_conditions_met": report.presentation_conditions_met,
    }, args)


def cmd_homology(args: argparse.Namespace) -> str:
    G = parse_group(args.group)
    result = integral_homology(G, args.degree)
    return _dump({"group": args.group, "group_order": G.order, "degree": args.degree, **result.to_dict()}, args)


def cmd_verify(args: argparse.Namespace) -> tuple[str, int]:
    reports = run_property_suite(args.suite or None, seed=args.seed, budget=args.budget)
    passed = all(r.ok for r in reports)
    text = _dump({"budget": args.budget, "all_passed": passed, "reports": [r.to_dict() for r in reports]}, args)
    return text, 0 if passed else 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="higherext", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--order-cap", type=int, default=None,
                        help=f"override the group order cap (also settable via {config.ORDER_CAP_ENV})")
    sub = parser.add_subparsers(dest="command", required=True)

    def cube_command(name: str, help_text: str, datum: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("cube", help="cube document (JSON file, or - for stdin)")
        p.add_argument("--seed", type=int, default=0)
        if datum:
            p.add_argument("--datum", default="ab", help="ab or ab-mod:m")
        return p

    p = cube_command("check-extension", "is the cube an n-fold extension", datum=False)
    p.add_argument("--dim-report", action="store_true", help="report the status through every direction")
    p.set_defaults(func=cmd_check_extension)

    cube_command("check-central", "centrality verdict and bracket").set_defaults(func=cmd_check_central)

    p = cube_command("centralize", "divide the top vertex by the bracket")
    p.add_argument("-o", "--output", help="write the centralized cube here")
    p.set_defaults(func=cmd_centralize)

    p = cube_command("bracket", "the n-fold bracket as a subgroup of the top vertex")
    p.add_argument("--route", choices=("explicit", "categorical", "both"), default="both")
    p.set_defaults(func=cmd_bracket)

    cube_command("hopf", "Hopf-formula quotient of the cube").set_defaults(func=cmd_hopf)

    p = sub.add_parser("homology", help="integral homology of a group")
    p.add_argument("group", help='group spec, e.g. "Z2 x Z2" or "perm 3: (0 1 2), (0 1)"')
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("verify", help="run seeded property suites")
    p.add_argument("--suite", action="append", metavar="ID", help=f"one of: {', '.join(SUITES)}")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_verify)
    return parser


def _exit_code(exc: HigherExtError) -> int:
    if isinstance(exc, AgreementFailure):
        return 2
    if isinstance(exc, ResourceCapError):
        return 3
    return 1


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.order_cap is not None:
        if args.order_cap <= 0:
            parser.error("--order-cap must be positive")
        config.set_order_cap(args.order_cap)
    try:
        out: Any = args.func(args)
    except HigherExtError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _exit_code(exc)
    code = 0
    if isinstance(out, tuple):
        out, code = out
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
