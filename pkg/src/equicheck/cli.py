"""Command line front end.

Every command prints one JSON report to stdout.  Exit status is 0 when
all checks pass, 1 when a verification fails and 2 for usage or data
errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import __version__
from .catalog import (Catalog, CatalogError, catalog_checksum, catalog_path,
                      derive_equivariance_conditions, load_catalog, theorem11_summary,
                      verify_explicit_rep, verify_map_on_surface)
from .lattice import KINDS, LatticeError, enumerate_classes, figure1_audit
from .p2 import ConsistencyError, classify, passes_filters, reduce_to_representative
from .poly import DomainError
from .rep import (NormalFormParams, boundary_profile, check_homomorphism,
                  check_lemma32_conditions, fingerprint, fixed_locus,
                  is_generically_transitive, kernel_order, make_normal_form, make_rho,
                  make_tau, stabilizer_order)
from .solve import UnsupportedShape

FAMILY_CHECKS = ("homomorphism", "kernel", "stabilizer", "boundary", "fixed", "fingerprint")


class UsageError(Exception):
    pass


def _checksum() -> str:
    try:
        return catalog_checksum()
    except OSError:
        return ""


def report(command: str, inputs: dict, verdicts, passed: bool, start: float) -> dict:
    return {"command": command, "inputs": inputs, "verdicts": verdicts, "passed": passed,
            "elapsed_ms": round((time.perf_counter() - start) * 1000, 3),
            "tool_version": __version__, "catalog_checksum": _checksum()}


def _alpha(text: str) -> tuple[Fraction, Fraction, Fraction]:
    try:
        parts = [Fraction(x) for x in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad --alpha {text!r}") from exc
    if len(parts) != 3:
        raise UsageError("--alpha takes three comma-separated values")
    return tuple(parts)


def cmd_verify_family(args) -> tuple[dict, bool]:
    if args.tau:
        if args.k is None or args.k == 0:
            raise UsageError("--tau needs -k with k != 0")
        fam, inputs = make_tau(args.d, args.k), {"family": "tau", "d": args.d, "k": args.k}
        params = None
    elif args.rho:
        if args.d == 0:
            raise UsageError("--rho needs d != 0")
        fam, inputs = make_rho(args.d), {"family": "rho", "d": args.d}
        params = None
    else:
        if args.k1 is None or args.k2 is None or args.alpha is None:
            raise UsageError("--normal-form needs --k1, --k2 and --alpha")
        try:
            params = NormalFormParams(args.d, args.k1, args.k2, *_alpha(args.alpha))
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        fam = make_normal_form(params)
        inputs = {"family": "normal-form", **params.as_dict()}
    checks = [c for c in FAMILY_CHECKS if args.all or getattr(args, c)]
    if not checks:
        checks = ["homomorphism"]
    inputs["checks"] = checks
    out, ok = {}, True
    hom = check_homomorphism(fam)
    out["homomorphism"] = {"passed": hom.passed, "witness": hom.witness}
    ok = hom.passed
    transitive = hom.passed and is_generically_transitive(fam)
    out["generically_transitive"] = transitive
    if params is not None:
        out["lemma_conditions"] = check_lemma32_conditions(params)
        if hom.passed and passes_filters(params):
            red = reduce_to_representative(params)
            out["reduction"] = red.as_dict()
    for name in checks:
        if name == "homomorphism" or not hom.passed:
            continue
        try:
            if name == "kernel":
                out["kernel_order"] = kernel_order(fam)
            elif name == "stabilizer":
                out["stabilizer_order"] = stabilizer_order(fam)
            elif name == "boundary":
                out["boundary"] = boundary_profile(fam).as_dict()
            elif name == "fixed":
                out["fixed_locus"] = fixed_locus(fam).as_dict()
            elif name == "fingerprint":
                out["fingerprint"] = fingerprint(fam).as_dict()
        except (DomainError, UnsupportedShape, ValueError) as exc:
            out[name] = {"error": str(exc)}
            ok = False
    return {"inputs": inputs, "verdicts": out}, ok


def cmd_classify(args) -> tuple[dict, bool]:
    if args.bound < 1:
        raise UsageError("--bound must be at least 1")
    values = tuple(int(v) for v in args.alpha_values.split(","))
    try:
        res = classify(args.d, args.bound, alpha_values=values, jobs=args.jobs)
    except ConsistencyError as exc:
        return {"inputs": {"d": args.d, "bound": args.bound},
                "verdicts": {"error": str(exc)}}, False
    verdicts = res.as_dict(witnesses=args.witnesses)
    verdicts.pop("elapsed")
    ok = all(w.verified for w in res.witnesses)
    return {"inputs": {"d": args.d, "bound": args.bound, "alpha_values": list(values)},
            "verdicts": verdicts}, ok


def _surface_report(sid: str, wanted: list[str]) -> tuple[dict, bool]:
    cat = load_catalog()
    e = cat.surface(sid)
    out, ok = {"type": e.ade_type, "degree": e.degree}, True
    if "map" in wanted:
        c = verify_map_on_surface(e)
        out["map"] = c.as_dict()
        ok &= c.passed is not False
    if "conditions" in wanted:
        if e.expected_conditions is None:
            out["conditions"] = {"status": "n/a"}
        else:
            v = derive_equivariance_conditions(e)
            out["conditions"] = v.as_dict()
            if not v.transitive:
                out["conditions"]["note"] = "no generically transitive action"
            ok &= v.matches_paper
    if "rep" in wanted:
        checks = verify_explicit_rep(e)
        out["rep"] = [c.as_dict() for c in checks]
        ok &= all(c.passed is not False for c in checks)
    return out, ok


def cmd_surface(args) -> tuple[dict, bool]:
    cat = load_catalog()
    ids = [s.id for s in cat.surfaces]
    if args.all:
        chosen = ids
    elif args.id:
        if args.id not in ids:
            raise UsageError(f"unknown surface {args.id!r}; known: {', '.join(ids)}")
        chosen = [args.id]
    else:
        raise UsageError("give a surface id or --all")
    wanted = [w for w in ("map", "conditions", "rep") if getattr(args, w)]
    if not wanted:
        wanted = ["map", "conditions", "rep"]
    if args.jobs > 1 and len(chosen) > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_surface_report, chosen, [wanted] * len(chosen)))
    else:
        results = [_surface_report(s, wanted) for s in chosen]
    verdicts = {sid: r for sid, (r, _) in zip(chosen, results)}
    ok = all(k for _, k in results)
    if args.all or args.summary:
        if args.all:
            audit = figure1_audit(cat)
            verdicts["figure1_audit"] = audit.as_dict()
            ok &= audit.ok
        if args.summary:
            verdicts["summary"] = theorem11_summary(cat)
    return {"inputs": {"surfaces": chosen, "checks": wanted, "summary": bool(args.summary)},
            "verdicts": verdicts}, ok


def cmd_lattice(args) -> tuple[dict, bool]:
    if args.audit_figure1:
        audit = figure1_audit(load_catalog())
        return {"inputs": {"audit_figure1": True}, "verdicts": audit.as_dict()}, audit.ok
    if args.r is None:
        raise UsageError("lattice needs -r or --audit-figure1")
    kind = "minus2" if args.minus2 else "minus1"
    try:
        classes = enumerate_classes(args.r, kind)
    except LatticeError as exc:
        raise UsageError(str(exc)) from exc
    verdicts = {"kind": kind, "count": len(classes)}
    if not args.count:
        verdicts["classes"] = [str(c) for c in classes]
    return {"inputs": {"r": args.r, "kind": kind}, "verdicts": verdicts}, True


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="equicheck", description="Verify G_d actions and del Pezzo data.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--output", help="also write the JSON report to this file")
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("verify-family", help="checks on tau, rho or a normal form")
    which = f.add_mutually_exclusive_group(required=True)
    which.add_argument("--tau", action="store_true")
    which.add_argument("--rho", action="store_true")
    which.add_argument("--normal-form", action="store_true")
    f.add_argument("-d", type=int, required=True)
    f.add_argument("-k", type=int)
    f.add_argument("--k1", type=int)
    f.add_argument("--k2", type=int)
    f.add_argument("--alpha", help="three values, e.g. 0,1,1")
    for c in FAMILY_CHECKS:
        f.add_argument(f"--{c}", action="store_true")
    f.add_argument("--all", action="store_true")

    c = sub.add_parser("classify", help="representatives of faithful transitive actions")
    c.add_argument("-d", type=int, required=True)
    c.add_argument("--bound", type=int, default=3)
    c.add_argument("--alpha-values", default="1")
    c.add_argument("--witnesses", action="store_true")
    c.add_argument("--jobs", type=int, default=1)

    s = sub.add_parser("surface", help="catalog surface checks")
    s.add_argument("id", nargs="?")
    s.add_argument("--all", action="store_true")
    s.add_argument("--map", action="store_true")
    s.add_argument("--conditions", action="store_true")
    s.add_argument("--rep", action="store_true")
    s.add_argument("--summary", action="store_true")
    s.add_argument("--jobs", type=int, default=1)

    l = sub.add_parser("lattice", help="negative classes and the degeneration diagram audit")
    l.add_argument("-r", type=int)
    kind = l.add_mutually_exclusive_group()
    kind.add_argument("--minus1", action="store_true")
    kind.add_argument("--minus2", action="store_true")
    l.add_argument("--count", action="store_true")
    l.add_argument("--audit-figure1", action="store_true")
    return p


COMMANDS = {"verify-family": cmd_verify_family, "classify": cmd_classify,
            "surface": cmd_surface, "lattice": cmd_lattice}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        body, ok = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"equicheck: error: {exc}", file=sys.stderr)
        return 2
    except CatalogError as exc:
        print(f"equicheck: catalog error: {exc}", file=sys.stderr)
        return 2
    rep = report(args.command, body["inputs"], body["verdicts"], ok, start)
    text = json.dumps(rep, sort_keys=True, indent=2, default=str)
    print(text)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
