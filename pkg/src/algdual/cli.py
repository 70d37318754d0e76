"""algctl: validate finite algebra documents, compute duals and round trips.

Usage
-----
    algctl check FILE [--kind K] [--format json|text]
    algctl dual FILE [-o OUT]
    algctl plonka {sum,decompose} FILE [-o OUT]
    algctl hom A B --kind K (--count | --list) [--format json|text]
    algctl iso A B --kind K
    algctl roundtrip FILE [--format json|text]
    algctl hasse FILE --order {join,meet,box} [-o OUT]
    algctl gen [--size N] [--fibers K] [--seed S] [-o OUT]

FILE arguments take paths to JSON documents or ``builtin:{two,s2,wk,three}``.

Exit codes
----------
    0  valid / pass / found
    1  validation failure, kind mismatch, or absent isomorphism
    2  unreadable or malformed input (parse diagnostics on stderr)

Output on stdout is byte-identical for identical inputs, flags and seeds;
timing goes to stderr.  Set ``ALGCTL_COLOR=1`` to colorize text reports.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from random import Random

from . import duality, lattices
from .algebra import (
    FiniteAlgebra,
    ValidationReport,
    enumerate_homs,
    find_isomorphism,
    order_from_binary,
)
from .documents import (
    ALGEBRA_KINDS,
    Document,
    check_document,
    document_data,
    dumps_document,
    load_document,
    realize_document,
)
from .duality import GRSpace, GRSpaceWithInvolution, FiniteSpace
from .errors import AlgebraError, DocumentError, IsomorphismFailure
from .generate import random_ibsl
from .hasse import dot_hasse
from .lattices import FinitePoset
from .systems import DirectSystem, InverseSystem, plonka_decompose, plonka_sum
from .algebra import Check

_IDENTITY_VARS = ("x", "y", "z")


def _color_enabled() -> bool:
    return os.environ.get("ALGCTL_COLOR") == "1"


def _tag(ok: bool) -> str:
    tag = "PASS" if ok else "FAIL"
    if _color_enabled():
        code = "32" if ok else "31"
        return f"\x1b[{code}m{tag}\x1b[0m"
    return tag


def _witness_text(check: Check, payload) -> str:
    if check.witness is None:
        return ""
    names = None
    if isinstance(payload, FiniteAlgebra) and payload.names:
        names = payload.names

    def show(v):
        if names is not None and isinstance(v, int) and 0 <= v < len(names):
            return names[v]
        return str(v)

    vals = check.witness
    if names is not None and len(vals) <= len(_IDENTITY_VARS):
        body = ", ".join(f"{n}={show(v)}"
                         for n, v in zip(_IDENTITY_VARS, vals))
    else:
        body = ", ".join(show(v) for v in vals)
    return f"  witness ({body})"


def _report_lines(report: ValidationReport, payload=None) -> list[str]:
    lines = [f"subject: {report.subject}"]
    for c in report.checks:
        note = f"  [{c.note}]" if c.note else ""
        lines.append(f"  [{_tag(c.holds)}] {c.name}"
                     f"{_witness_text(c, payload)}{note}")
    lines.append(f"result: {_tag(report.ok)}")
    return lines


def _report_json(report: ValidationReport) -> dict:
    return {
        "subject": report.subject,
        "ok": report.ok,
        "checks": [
            {"name": c.name, "holds": c.holds,
             "witness": list(c.witness) if c.witness is not None else None,
             "note": c.note}
            for c in report.checks],
    }


def _emit_report(report: ValidationReport, payload, fmt: str, out) -> None:
    if fmt == "json":
        import json

        out.write(json.dumps(_report_json(report), ensure_ascii=False,
                             indent=2, sort_keys=True) + "\n")
    else:
        out.write("\n".join(_report_lines(report, payload)) + "\n")


def _write_output(text: str, path) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _checked_payload(path: str):
    """Load, semantically validate, and realize; raises AlgebraError with a
    report on semantic failure."""
    doc = load_document(path)
    report = check_document(doc)
    if not report.ok:
        raise AlgebraError(
            f"{path}: invalid {doc.kind} document: "
            f"{[c.name for c in report.failures()]}", report)
    return doc.kind, realize_document(doc)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_check(args) -> int:
    doc = load_document(args.file)
    if args.kind and args.kind != doc.kind:
        print(f"kind mismatch: document is {doc.kind!r}, expected "
              f"{args.kind!r}", file=sys.stderr)
        return 1
    t0 = time.perf_counter()
    report = check_document(doc)
    elapsed = time.perf_counter() - t0
    _emit_report(report, doc.payload, args.format, sys.stdout)
    print(f"# elapsed {elapsed:.4f}s", file=sys.stderr)
    return 0 if report.ok else 1


def _dual_object(kind: str, obj):
    if kind == "ibsl":
        return duality.dual_of_ibsl(obj), None
    if kind == "bsl":
        return duality.dual_of_bsl(obj), None
    if kind == "ba":
        return duality.stone_dual(obj), None
    if kind == "dl":
        return lattices.priestley_dual(obj), None
    if kind == "gr":
        if isinstance(obj, GRSpaceWithInvolution):
            return duality.dual_of_gr(obj), "ibsl"
        return duality.bsl_of_gr(obj), "bsl"
    if kind == "space":
        return duality.ba_of_space(obj), "ba"
    if kind == "poset":
        return lattices.dl_of_poset(obj), "dl"
    if kind == "direct-system":
        if obj.kind == "ba":
            return duality.lift_functor_dir_to_inv(obj), None
        if obj.kind == "dl":
            return lattices.lift_system_dl_to_posets(obj), None
        raise AlgebraError(f"no dual for systems of kind {obj.kind!r}")
    if kind == "inverse-system":
        if obj.index.size and isinstance(obj.term(0), FinitePoset):
            return lattices.lift_system_posets_to_dl(obj), None
        return duality.lift_functor_inv_to_dir(obj), None
    raise AlgebraError(f"no dual defined for kind {kind!r}")


def cmd_dual(args) -> int:
    kind, obj = _checked_payload(args.file)
    dual, out_kind = _dual_object(kind, obj)
    _write_output(dumps_document(dual, out_kind), args.output)
    return 0


def cmd_plonka(args) -> int:
    kind, obj = _checked_payload(args.file)
    if args.mode == "sum":
        if kind != "direct-system":
            raise AlgebraError("plonka sum expects a direct-system document")
        out_kind = "ibsl" if obj.kind == "ba" else "bsl"
        _write_output(dumps_document(plonka_sum(obj), out_kind), args.output)
        return 0
    if kind == "ibsl":
        system = plonka_decompose(obj)
    elif kind == "bsl":
        system = lattices.plonka_decompose_bsl(obj)
    else:
        raise AlgebraError("plonka decompose expects an ibsl or bsl document")
    _write_output(dumps_document(system), args.output)
    return 0


def cmd_hom(args) -> int:
    _, a = _checked_payload(args.a)
    _, b = _checked_payload(args.b)
    homs = enumerate_homs(a, b, args.kind)
    if args.format == "json":
        import json

        data = {"count": len(homs)}
        if args.list:
            data["homs"] = [list(h.map) for h in homs]
        sys.stdout.write(json.dumps(data, sort_keys=True) + "\n")
    elif args.list:
        for h in homs:
            sys.stdout.write(" ".join(str(v) for v in h.map) + "\n")
    else:
        sys.stdout.write(f"{len(homs)}\n")
    return 0


def cmd_iso(args) -> int:
    _, a = _checked_payload(args.a)
    _, b = _checked_payload(args.b)
    iso = find_isomorphism(a, b, args.kind)
    if iso is None:
        print("no isomorphism", file=sys.stderr)
        return 1
    sys.stdout.write(" ".join(str(v) for v in iso.map) + "\n")
    return 0


def _roundtrip_checks(kind: str, obj) -> list[Check]:
    checks = []

    def attempt(name, thunk):
        try:
            thunk()
            checks.append(Check(name, True))
        except AlgebraError as exc:
            checks.append(Check(name, False, None, str(exc)))

    if kind == "ibsl":
        def plonka_trip():
            system = plonka_decompose(obj)
            if find_isomorphism(plonka_sum(system), obj, "ibsl") is None:
                raise IsomorphismFailure("sum of decomposition not isomorphic")

        attempt("plonka-roundtrip", plonka_trip)
        attempt("double-dual-iso", lambda: duality.eps_iso(obj))
    elif kind == "ba":
        attempt("stone-double-dual", lambda: duality.stone_double_dual_iso(obj))
    elif kind == "bsl":
        def plonka_trip():
            system = lattices.plonka_decompose_bsl(obj)
            if find_isomorphism(plonka_sum(system), obj, "bsl") is None:
                raise IsomorphismFailure("sum of decomposition not isomorphic")

        attempt("plonka-roundtrip", plonka_trip)
    elif kind == "dl":
        attempt("birkhoff-double-dual", lambda: lattices.dl_double_dual_iso(obj))
    elif kind == "poset":
        attempt("downset-double-dual", lambda: lattices.poset_double_dual_iso(obj))
    elif kind == "gr" and isinstance(obj, GRSpaceWithInvolution):
        attempt("double-dual-iso", lambda: duality.delta_iso(obj))
    else:
        raise AlgebraError(f"no roundtrip defined for kind {kind!r}")
    return checks


def cmd_roundtrip(args) -> int:
    kind, obj = _checked_payload(args.file)
    t0 = time.perf_counter()
    checks = _roundtrip_checks(kind, obj)
    elapsed = time.perf_counter() - t0
    report = ValidationReport(f"roundtrip of {kind}", tuple(checks))
    _emit_report(report, obj, args.format, sys.stdout)
    print(f"# elapsed {elapsed:.4f}s", file=sys.stderr)
    return 0 if report.ok else 1


def cmd_hasse(args) -> int:
    kind, obj = _checked_payload(args.file)
    labels = None
    if kind in ALGEBRA_KINDS:
        if args.order == "box":
            raise AlgebraError("the box order exists only on GR spaces")
        op = "join" if args.order == "join" else "meet"
        leq = order_from_binary(obj.binary(op), op)
        labels = obj.names
    elif kind == "gr":
        if args.order == "join":
            raise AlgebraError(
                "GR spaces carry the base order (--order meet) and the "
                "derived order (--order box)")
        leq = obj.leq if args.order == "meet" else obj.box
    elif kind == "poset":
        leq = obj.leq
    else:
        raise AlgebraError(f"no order diagram for kind {kind!r}")
    _write_output(dot_hasse(leq, labels), args.output)
    return 0


def cmd_gen(args) -> int:
    rng = Random(args.seed)
    fibers = args.fibers if args.fibers else rng.randint(1, 3)
    max_atoms = 2
    while fibers * (1 << max_atoms + 1) <= args.size and max_atoms < 4:
        max_atoms += 1
    algebra = random_ibsl(rng, max_fibers=fibers, max_atoms=max_atoms)
    while algebra.size > args.size:
        algebra = random_ibsl(rng, max_fibers=fibers, max_atoms=max_atoms)
    _write_output(dumps_document(algebra, "ibsl"), args.output)
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="algctl",
        description="Validate finite algebra documents, compute duals, "
                    "Plonka sums and duality round trips.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("json", "text"), default="text")

    p = sub.add_parser("check", help="validate a document against its kind")
    p.add_argument("file")
    p.add_argument("--kind", choices=("ibsl", "ba", "bsl", "dl", "sl", "gr",
                                      "poset", "space", "direct-system",
                                      "inverse-system"))
    add_format(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("dual", help="compute the dual object")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("plonka", help="Plonka sum or decomposition")
    p.add_argument("mode", choices=("sum", "decompose"))
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_plonka)

    p = sub.add_parser("hom", help="enumerate kind-preserving maps")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--kind", required=True,
                   choices=("sl", "bsl", "dl", "ibsl", "ba", "gr", "igr"))
    group = p.add_mutually_exclusive_group()
    group.add_argument("--count", action="store_true")
    group.add_argument("--list", action="store_true")
    add_format(p)
    p.set_defaults(func=cmd_hom)

    p = sub.add_parser("iso", help="search for an isomorphism")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--kind", required=True,
                   choices=("sl", "bsl", "dl", "ibsl", "ba", "gr", "igr"))
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("roundtrip",
                       help="run the decomposition and double-dual checks")
    p.add_argument("file")
    add_format(p)
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("hasse", help="emit a Hasse diagram in DOT")
    p.add_argument("file")
    p.add_argument("--order", choices=("join", "meet", "box"),
                   default="join")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_hasse)

    p = sub.add_parser("gen", help="generate a random involutive "
                                   "bisemilattice document")
    p.add_argument("--size", type=int, default=12,
                   help="maximum carrier size (default 12)")
    p.add_argument("--fibers", type=int, default=0,
                   help="number of Boolean fibers (default: random 1-3)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AlgebraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.report is not None:
            for line in _report_lines(exc.report):
                print(line, file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
