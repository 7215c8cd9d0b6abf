"""Batch command line front end.

Four subcommands: catalog (build and export the indecomposable table),
product (one Hall product with full chi provenance), verify (the identity
suites), and hallpoly (one interpolated count).  Machine-readable JSON goes to
stdout or --out with sorted keys; a short human summary goes to stderr.

Exit codes: 0 success, 1 verification failure or internal inconsistency,
2 invalid input, 3 budget or interpolation-stability refusal.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources

from . import hallalg
from .errors import (
    BudgetError,
    HallcrestError,
    InputError,
    InstabilityError,
    InternalCheckError,
)
from .gfarith import PrimeField
from .hallpoly import ChiConfig, chi_ext_middle, chi_filtration
from .quiverlab import dim_add, parse_quiver
from .repcore import DEFAULT_PRIMES, IndecTable, IsoClass

BUNDLED = ("a2", "a3", "d4", "loop2")

SUITES = (
    "assoc",
    "lie",
    "initial",
    "pbw",
    "green-degen",
    "green-classical",
    "comult",
    "jacobi",
    "ext-vanishing",
    "all",
)


def _load_quiver(source: str):
    if os.path.exists(source):
        with open(source, "r", encoding="utf-8") as fh:
            return parse_quiver(fh.read())
    name = source[:-3] if source.endswith(".qv") else source
    if name in BUNDLED:
        text = resources.files("hallcrest.quivers").joinpath(f"{name}.qv").read_text()
        return parse_quiver(text)
    raise InputError(
        f"no quiver file {source!r}; bundled names are {', '.join(BUNDLED)}"
    )


def _parse_bound(text: str, presentation):
    try:
        bound = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise InputError(f"bad dimension bound {text!r}") from None
    if len(bound) != presentation.n_vertices:
        raise InputError(
            f"dimension bound has {len(bound)} entries, quiver has "
            f"{presentation.n_vertices} vertices"
        )
    if any(v < 0 for v in bound):
        raise InputError("dimension bound entries must be >= 0")
    return bound


def _parse_primes(text: str | None):
    if text is None:
        return None
    try:
        primes = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise InputError(f"bad prime list {text!r}") from None
    if len(set(primes)) != len(primes):
        raise InputError("primes must be distinct")
    for p in primes:
        try:
            PrimeField(p)
        except ValueError:
            raise InputError(f"{p} is not a prime") from None
    return primes


def _parse_class(text: str, table: IndecTable) -> IsoClass:
    return table.validate_iso(IsoClass.parse(text))


def _emit(payload, out_path: str | None):
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _note(msg: str):
    print(msg, file=sys.stderr)


# -- subcommands -----------------------------------------------------------------


def cmd_catalog(args) -> tuple[dict, int]:
    presentation = _load_quiver(args.quiver)
    bound = _parse_bound(args.dim_bound, presentation)
    primes = _parse_primes(args.primes)
    if primes is None:
        excluded = presentation.excluded_primes()
        primes = tuple(p for p in DEFAULT_PRIMES if p not in excluded)[:3]
    table = IndecTable(presentation, bound)
    for p in primes:
        table.ensure_prime(p)
    payload = {
        "quiver": args.quiver,
        "dim_bound": list(bound),
        "primes": list(primes),
        "classes": table.export(primes),
    }
    _note(
        f"catalog: {len(payload['classes'])} indecomposable classes within "
        f"{bound} at primes {', '.join(map(str, primes))}"
    )
    return payload, 0


def cmd_product(args) -> tuple[dict, int]:
    presentation = _load_quiver(args.quiver)
    bound = _parse_bound(args.dim_bound, presentation)
    table = IndecTable(presentation, bound)
    config = ChiConfig(primes=_parse_primes(args.primes))
    left = _parse_class(args.left, table)
    right = _parse_class(args.right, table)
    d = dim_add(table.dim_of(left), table.dim_of(right))
    coeffs = {}
    provenance = {}
    for x in table.iso_classes(d):
        res = chi_filtration((left, right), x, table, config)
        provenance[str(x)] = res.as_dict()
        if res.value:
            coeffs[str(x)] = res.value
    payload = {
        "left": str(left),
        "right": str(right),
        "product": coeffs,
        "chi": provenance,
    }
    terms = " + ".join(
        (f"{c}*u[{x}]" if c != 1 else f"u[{x}]") for x, c in sorted(coeffs.items())
    )
    _note(f"u[{left}] * u[{right}] = {terms or '0'}")
    return payload, 0


def _suite_reports(table: IndecTable, bound, suite: str, config, primes):
    classical_primes = primes if primes is not None else (2, 3)
    hereditary = table.presentation.is_hereditary()
    if suite == "assoc":
        return [hallalg.verify_associativity(table, bound, config)]
    if suite == "lie":
        return [hallalg.verify_lie(table, bound, config)]
    if suite == "jacobi":
        lie = hallalg.verify_lie(table, bound, config)
        jac = [c for c in lie.checks if c.name.startswith("jacobi")]
        return [hallalg.Report("jacobi", jac)]
    if suite == "initial":
        return [hallalg.verify_initial_terms(table, bound, config=config)]
    if suite == "pbw":
        return [hallalg.verify_pbw(table, bound, config=config)]
    if suite == "green-degen":
        return [hallalg.green_degenerate_suite(table, bound, config)]
    if suite == "green-classical":
        return [hallalg.green_classical_suite(table, bound, p) for p in classical_primes]
    if suite == "comult":
        return [
            hallalg.verify_comult_hom(table, bound, config),
            hallalg.verify_comult_agreement(table, bound, config),
            hallalg.verify_coassociativity(table, bound),
        ]
    if suite == "ext-vanishing":
        return [hallalg.verify_ext_vanishing(table, bound, config)]
    if suite == "all":
        reports = [
            hallalg.verify_associativity(table, bound, config),
            hallalg.verify_initial_terms(table, bound, config=config),
            hallalg.verify_pbw(table, bound, config=config),
            hallalg.verify_lie(table, bound, config),
            hallalg.green_degenerate_suite(table, bound, config),
        ]
        if hereditary:
            for p in classical_primes:
                reports.append(hallalg.green_classical_suite(table, bound, p))
        else:
            reports.append(("green-classical", "presentation has relations"))
        reports.extend(
            [
                hallalg.verify_comult_hom(table, bound, config),
                hallalg.verify_comult_agreement(table, bound, config),
                hallalg.verify_coassociativity(table, bound),
                hallalg.verify_ext_vanishing(table, bound, config),
            ]
        )
        return reports
    raise InputError(f"unknown suite {suite!r}")


def cmd_verify(args) -> tuple[dict, int]:
    presentation = _load_quiver(args.quiver)
    bound = _parse_bound(args.dim_bound, presentation)
    primes = _parse_primes(args.primes)
    table = IndecTable(presentation, bound)
    config = ChiConfig(primes=primes)
    reports = _suite_reports(table, bound, args.suite, config, primes)
    entries = []
    all_passed = True
    for rep in reports:
        if isinstance(rep, tuple):
            suite, reason = rep
            entries.append({"suite": suite, "skipped": True, "reason": reason})
            _note(f"verify {suite}: skipped ({reason})")
            continue
        entries.append(rep.as_dict())
        all_passed = all_passed and rep.passed
        _note(
            f"verify {rep.suite}: {'pass' if rep.passed else 'FAIL'} "
            f"({len(rep.checks)} checks, {len(rep.failed)} failed)"
        )
    payload = {
        "quiver": args.quiver,
        "dim_bound": list(bound),
        "suite": args.suite,
        "passed": all_passed,
        "reports": entries,
    }
    return payload, 0 if all_passed else 1


def cmd_hallpoly(args) -> tuple[dict, int]:
    presentation = _load_quiver(args.quiver)
    bound = _parse_bound(args.dim_bound, presentation)
    table = IndecTable(presentation, bound)
    config = ChiConfig(primes=_parse_primes(args.primes), strict=args.strict)
    exprs = [_parse_class(text, table) for text in args.classes]
    if len(exprs) < 2:
        raise InputError("need at least one subquotient class and the total class")
    target = exprs[-1]
    rest = exprs[:-1]
    if args.kind == "filt":
        res = chi_filtration(tuple(rest), target, table, config)
    else:
        if len(rest) != 2:
            raise InputError("ext needs exactly three classes: quotient, sub, middle")
        res = chi_ext_middle(rest[0], rest[1], target, table, config)
    payload = {
        "kind": args.kind,
        "classes": [str(c) for c in rest],
        "target": str(target),
        "chi": res.as_dict(),
    }
    _note(
        f"chi {args.kind} {', '.join(map(str, rest))} in {target}: "
        + (f"{res.value} via {res.polynomial}" if res.stable else "UNSTABLE")
    )
    return payload, 0 if res.stable else 3


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiver", required=True, help="quiver file or bundled name")
    common.add_argument("--dim-bound", required=True, help="per-vertex bound, e.g. 2,2")
    common.add_argument("--primes", help="explicit prime ladder, e.g. 2,3,5")
    common.add_argument("--out", help="write the JSON payload to this file")
    common.add_argument(
        "--strict",
        action="store_true",
        help="raise on interpolation instability instead of reporting it",
    )
    parser = argparse.ArgumentParser(
        prog="hallcrest",
        description="Exact Hall algebra computations for quivers with relations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("catalog", parents=[common], help="build and export the class table")
    p_prod = sub.add_parser("product", parents=[common], help="one Hall product")
    p_prod.add_argument("left", help="class expression, e.g. S2 or 2*S1+M11 or 0")
    p_prod.add_argument("right")
    p_verify = sub.add_parser("verify", parents=[common], help="run identity suites")
    p_verify.add_argument("--suite", default="all", choices=SUITES)
    p_poly = sub.add_parser("hallpoly", parents=[common], help="one interpolated count")
    p_poly.add_argument("kind", choices=["filt", "ext"])
    p_poly.add_argument(
        "classes",
        nargs="+",
        help="subquotient classes then the total class (filt), or quotient, sub, middle (ext)",
    )
    return parser


HANDLERS = {
    "catalog": cmd_catalog,
    "product": cmd_product,
    "verify": cmd_verify,
    "hallpoly": cmd_hallpoly,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        payload, code = HANDLERS[args.command](args)
    except (BudgetError, InstabilityError) as exc:
        _note(f"refused: {exc}")
        return 3
    except InternalCheckError as exc:
        _note(f"internal check failed: {exc}")
        return 1
    except HallcrestError as exc:
        _note(f"error: {exc}")
        return 2
    _emit(payload, args.out)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
