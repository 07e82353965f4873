"""Command line front end: ``ppforge check|construct|classify|roundtrip``.

Exit codes: 0 everything passed, 1 usage or input error, 2 a mathematical
violation (failed check, failed precondition, or roundtrip mismatch).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Callable

import numpy as np

from . import catalog
from .algebras import (
    CheckReport,
    compare,
    is_associative,
    is_commutative,
    is_lie,
    is_poisson,
    is_pre_lie,
    is_pre_poisson,
    is_zinbiel,
    sub_adjacent,
)
from .bialgebra import double_of_bialgebra, is_pre_poisson_bialgebra
from .errors import PPForgeError, UnknownCheck, VerificationError
from .exact_core import format_scalar, scalar, zeros
from .geometry import (
    compatible_pre_poisson,
    is_manin_triple,
    is_nondegenerate,
    is_phase_space,
    is_quadratic_pre_poisson,
    is_skew,
    is_symplectic_poisson,
    phase_space,
)
from .representations import coregular_rep, is_pre_poisson_rep, semidirect_pre_poisson
from .rota_baxter import (
    QuadraticRBPrePoisson,
    RBSymplecticPoisson,
    descendent,
    factorizable_from_quadratic_rb,
    is_quadratic_rb,
    is_rb_poisson,
    is_rb_pre_poisson,
    is_rb_symplectic_poisson,
    phase_space_from_rb_symplectic,
    quadratic_rb_from_factorizable,
)
from .serialization import (
    Document,
    algebra_document,
    bialgebra_document,
    make_document,
    parse_document,
    poisson_document,
    rmatrix_document,
    serialize,
)
from .yang_baxter import (
    check_coboundary_conditions,
    classify_r,
    coboundary_bialgebra,
    s_equation,
    skew_part_invariant,
    zinbiel_ybe,
)


class UsageError(Exception):
    pass


# -- check registry ----------------------------------------------------------------------

def _omega(doc: Document):
    doc.require("omega")
    return doc["omega"]


def _ybe(doc: Document) -> CheckReport:
    rm = doc.rmatrix()
    zero = zeros((rm.dim,) * 3)
    return (compare("zinbiel-ybe", zinbiel_ybe(rm), zero, 3)
            + compare("s-equation", s_equation(rm), zero, 3))


def _rb(doc: Document) -> CheckReport:
    doc.require("B", "weight")
    if "star" in doc:
        return is_rb_pre_poisson(doc.pre_poisson(), doc["B"], doc["weight"])
    return is_rb_poisson(doc.poisson(), doc["B"], doc["weight"])


def _quadratic_rb(doc: Document) -> CheckReport:
    doc.require("B", "weight", "omega")
    return is_quadratic_rb(QuadraticRBPrePoisson(doc.pre_poisson(), doc["B"], doc["weight"],
                                                 doc["omega"], check=False))


def _rb_symplectic(doc: Document) -> CheckReport:
    doc.require("B", "weight", "omega")
    return is_rb_symplectic_poisson(RBSymplecticPoisson(doc.poisson(), doc["B"], doc["weight"],
                                                        doc["omega"], check=False))


CHECKS: dict[str, Callable[[Document], CheckReport]] = {
    "zinbiel": lambda d: is_zinbiel(d.pre_poisson().star),
    "pre-lie": lambda d: is_pre_lie(d.pre_poisson().circ),
    "pre-poisson": lambda d: is_pre_poisson(d.pre_poisson()),
    "commutative": lambda d: is_commutative(d.poisson().dot),
    "associative": lambda d: is_associative(d.poisson().dot),
    "lie": lambda d: is_lie(d.poisson().bracket),
    "poisson": lambda d: is_poisson(d.poisson()),
    "form": lambda d: is_skew(_omega(d)) + is_nondegenerate(_omega(d)),
    "symplectic": lambda d: is_symplectic_poisson(d.poisson(), _omega(d)),
    "quadratic": lambda d: is_quadratic_pre_poisson(d.pre_poisson(), _omega(d)),
    "phase-space": lambda d: is_phase_space(d.poisson(), d.split(), _omega(d)),
    "manin-triple": lambda d: is_manin_triple(d.pre_poisson(), d.split(), _omega(d)),
    "bialgebra": lambda d: is_pre_poisson_bialgebra(d.bialgebra()),
    "rep": lambda d: is_pre_poisson_rep(d.rep()),
    "coboundary": lambda d: check_coboundary_conditions(d.rmatrix()),
    "ybe": _ybe,
    "lr-invariant": lambda d: skew_part_invariant(d.rmatrix()),
    "rb": _rb,
    "quadratic-rb": _quadratic_rb,
    "rb-symplectic": _rb_symplectic,
}


def default_checks(doc: Document) -> list[str]:
    by_kind = {"algebra": ["pre-poisson"], "poisson": ["poisson"], "bialgebra": ["bialgebra"],
               "rmatrix": ["ybe", "lr-invariant"], "rb": ["rb"], "form": ["form"], "rep": ["rep"]}
    if doc.kind in by_kind:
        return by_kind[doc.kind]
    has = doc.fields.keys()
    if {"B", "omega"} <= has:
        return ["quadratic-rb"] if "star" in has else ["rb-symplectic"]
    if "r" in has:
        return ["ybe", "lr-invariant"]
    if "omega" in has:
        return ["manin-triple"] if "star" in has else ["phase-space"]
    return ["pre-poisson"] if "star" in has else ["poisson"]


def run_checks(doc: Document, names: list[str]) -> dict[str, CheckReport]:
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise UnknownCheck(f"unknown check {unknown[0]!r}; available: {', '.join(sorted(CHECKS))}")
    return {name: CHECKS[name](doc) for name in names}


# -- output --------------------------------------------------------------------------------

def _color(text: str, code: str) -> str:
    if os.environ.get("PPFORGE_COLOR", "0") == "1":
        return f"\033[{code}m{text}\033[0m"
    return text


def _sorted(rep: CheckReport):
    return sorted(rep.violations, key=lambda v: (v.identity_id, v.indices))


def _violation_json(v) -> dict:
    return {"identity": v.identity_id, "indices": list(v.indices),
            "lhs": [format_scalar(x) for x in v.lhs], "rhs": [format_scalar(x) for x in v.rhs]}


def format_reports(reports: dict[str, CheckReport], as_json: bool) -> str:
    if as_json:
        body = {"passed": all(reports.values()),
                "checks": {name: {"passed": rep.passed,
                                  "violations": [_violation_json(v) for v in _sorted(rep)]}
                           for name, rep in reports.items()}}
        return json.dumps(body, indent=2, sort_keys=True) + "\n"
    lines = []
    for name, rep in reports.items():
        if rep:
            lines.append(f"{name}: {_color('pass', '32')}")
            continue
        lines.append(f"{name}: {_color('FAIL', '31')} ({len(rep.violations)} violations)")
        lines.extend("  " + v.describe() for v in _sorted(rep))
    return "\n".join(lines) + "\n"


# -- catalog documents -------------------------------------------------------------------

def _double_bundle(name: str, weight=None) -> Document:
    rm = catalog.double_r(name)
    d, w, split = catalog.double(name)
    extra = {}
    if weight is not None:
        q = quadratic_rb_from_factorizable(rm, weight)
        extra = {"B": q.B, "weight": q.weight}
    return make_document("bundle", d.dim, split=(split.dim_p, split.dim_q), star=d.star,
                         circ=d.circ, r=rm.r, omega=w, **extra)


def catalog_names() -> list[str]:
    names = list(catalog.ALGEBRAS)
    names += [f"double-{n}" for n in catalog.ALGEBRAS]
    names += [f"rb-double-{n}" for n in catalog.ALGEBRAS]
    names += [f"bialgebra-{n}" for n in catalog.BIALGEBRAS]
    names += [f"rmatrix-{n}" for n in catalog.R_INSTANCES]
    names += [f"rb0-{n}" for n in catalog.poisson_rb0_pairs()]
    return names


def catalog_document(name: str) -> Document:
    if name in catalog.ALGEBRAS:
        return algebra_document(catalog.algebra(name))
    prefix, _, rest = name.partition("-")
    if prefix == "double" and rest in catalog.ALGEBRAS:
        return _double_bundle(rest)
    if name.startswith("rb-double-") and name[10:] in catalog.ALGEBRAS:
        return _double_bundle(name[10:], 1)
    if prefix == "bialgebra" and rest in catalog.BIALGEBRAS:
        return bialgebra_document(catalog.bialgebra(rest))
    if prefix == "rmatrix" and rest in catalog.R_INSTANCES:
        return rmatrix_document(catalog.r_instance(rest))
    if prefix == "rb0" and rest in catalog.poisson_rb0_pairs():
        p, B = catalog.poisson_rb0_pairs()[rest]
        return make_document("rb", p.dim, dot=p.dot, bracket=p.bracket, B=B, weight=0)
    raise UsageError(f"unknown catalog entry {name!r}; available: {', '.join(catalog_names())}")


# -- constructions ----------------------------------------------------------------------------

def _verified(doc: Document, reports: dict[str, CheckReport]) -> Document:
    failed = {k: v for k, v in reports.items() if not v}
    if failed:
        raise VerificationError("constructed object failed its own checks",
                                sum(failed.values(), CheckReport()))
    return doc


def _phase_space(doc: Document) -> Document:
    big, w = phase_space(doc.pre_poisson())
    n = doc.dim
    out = make_document("bundle", big.dim, split=(n, n), dot=big.dot, bracket=big.bracket, omega=w)
    return _verified(out, run_checks(out, ["phase-space"]))


def _double(doc: Document) -> Document:
    d, w, split = double_of_bialgebra(doc.bialgebra())
    out = make_document("bundle", d.dim, split=(split.dim_p, split.dim_q), star=d.star,
                        circ=d.circ, omega=w)
    return _verified(out, run_checks(out, ["manin-triple"]))


def _descendent(doc: Document) -> Document:
    doc.require("B", "weight")
    out = algebra_document(descendent(doc.pre_poisson(), doc["B"], doc["weight"]))
    return _verified(out, run_checks(out, ["pre-poisson"]))


def _coboundary(doc: Document) -> Document:
    out = bialgebra_document(coboundary_bialgebra(doc.rmatrix(), check=False))
    return _verified(out, run_checks(out, ["bialgebra"]))


def _semidirect(doc: Document) -> Document:
    rep = doc.rep() if doc.kind == "rep" else coregular_rep(doc.pre_poisson())
    out = algebra_document(semidirect_pre_poisson(rep.algebra, rep))
    return _verified(out, run_checks(out, ["pre-poisson"]))


def _compatible(doc: Document) -> Document:
    w = _omega(doc)
    p = compatible_pre_poisson(doc.poisson(), w)
    out = make_document("bundle", p.dim, star=p.star, circ=p.circ, omega=w)
    return _verified(out, run_checks(out, ["quadratic"]))


def _quadratic_rb_doc(doc: Document, weight) -> Document:
    q = quadratic_rb_from_factorizable(doc.rmatrix(), weight)
    extra = {"split": doc["split"]} if "split" in doc else {}
    out = make_document("bundle", q.algebra.dim, star=q.algebra.star, circ=q.algebra.circ,
                        B=q.B, weight=q.weight, omega=q.omega, **extra)
    return _verified(out, run_checks(out, ["quadratic-rb"]))


def _factorizable_r(doc: Document) -> Document:
    doc.require("B", "weight", "omega")
    q = QuadraticRBPrePoisson(doc.pre_poisson(), doc["B"], doc["weight"], doc["omega"])
    rm = factorizable_from_quadratic_rb(q)
    flags = classify_r(rm)
    if not flags.factorizable:
        raise VerificationError(f"reconstructed r is not factorizable: {flags.as_dict()}")
    return rmatrix_document(rm)


def _rb_phase_space(doc: Document) -> Document:
    doc.require("B", "weight", "omega")
    q = RBSymplecticPoisson(doc.poisson(), doc["B"], doc["weight"], doc["omega"])
    big, w, split = phase_space_from_rb_symplectic(q)
    return make_document("bundle", big.dim, split=(split.dim_p, split.dim_q), dot=big.dot,
                         bracket=big.bracket, omega=w)


def _sub_adjacent(doc: Document) -> Document:
    out = poisson_document(sub_adjacent(doc.pre_poisson()))
    return _verified(out, run_checks(out, ["poisson"]))


TARGETS: dict[str, Callable] = {
    "sub-adjacent": lambda d, lam: _sub_adjacent(d),
    "phase-space": lambda d, lam: _phase_space(d),
    "double": lambda d, lam: _double(d),
    "descendent": lambda d, lam: _descendent(d),
    "coboundary": lambda d, lam: _coboundary(d),
    "semidirect": lambda d, lam: _semidirect(d),
    "compatible-pre-poisson": lambda d, lam: _compatible(d),
    "quadratic-rb": _quadratic_rb_doc,
    "factorizable-r": lambda d, lam: _factorizable_r(d),
    "rb-phase-space": lambda d, lam: _rb_phase_space(d),
}


# -- commands ---------------------------------------------------------------------------------

def cmd_check(doc: Document, names: list[str], as_json: bool, out) -> int:
    reports = run_checks(doc, names or default_checks(doc))
    out.write(format_reports(reports, as_json))
    return 0 if all(reports.values()) else 2


def cmd_construct(doc: Document, target: str, weight, out) -> int:
    if target not in TARGETS:
        raise UsageError(f"unknown target {target!r}; available: {', '.join(TARGETS)}")
    out.write(serialize(TARGETS[target](doc, weight)))
    return 0


def cmd_classify(doc: Document, as_json: bool, out) -> int:
    rm = doc.rmatrix()
    flags = classify_r(rm).as_dict()
    support = {"z_support": int(np.count_nonzero(zinbiel_ybe(rm) != 0)),
               "s_support": int(np.count_nonzero(s_equation(rm) != 0))}
    if as_json:
        out.write(json.dumps({**flags, **support}, indent=2) + "\n")
    else:
        lines = [f"{k}: {str(v).lower()}" for k, v in flags.items()]
        lines += [f"{k}: {v}" for k, v in support.items()]
        out.write("\n".join(lines) + "\n")
    return 0


def _tensor_text(arr) -> str:
    return json.dumps(np.vectorize(format_scalar, otypes=[object])(arr).tolist())


def cmd_roundtrip(doc: Document, weight, as_json: bool, out) -> int:
    rm = doc.rmatrix()
    q = quadratic_rb_from_factorizable(rm, weight)
    back = factorizable_from_quadratic_rb(q)
    diffs = []
    if not np.array_equal(back.r, rm.r):
        diffs.append(("r", rm.r, back.r))
    # a bundle that stores B and omega must match the constructed ones
    for name, built in (("B", q.B), ("omega", q.omega)):
        if name in doc and not np.array_equal(doc[name], built):
            diffs.append((name, doc[name], built))
    if "weight" in doc and doc["weight"] != q.weight and "B" in doc:
        diffs.append(("weight", np.array([doc["weight"]]), np.array([q.weight])))
    if as_json:
        body = {"passed": not diffs,
                "mismatches": {name: {"input": json.loads(_tensor_text(a)),
                                      "reconstructed": json.loads(_tensor_text(b))}
                               for name, a, b in diffs}}
        out.write(json.dumps(body, indent=2, sort_keys=True) + "\n")
    elif not diffs:
        out.write(f"roundtrip: {_color('pass', '32')} (weight {format_scalar(q.weight)})\n")
    else:
        out.write(f"roundtrip: {_color('FAIL', '31')}\n")
        for name, a, b in diffs:
            out.write(f"  {name} input:         {_tensor_text(a)}\n")
            out.write(f"  {name} reconstructed: {_tensor_text(b)}\n")
    return 0 if not diffs else 2


# -- entry point --------------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for failed checks here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ppforge", description="Exact checks and constructions "
                                     "for pre-Poisson algebras, bialgebras and r-matrices.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("check", "construct", "classify", "roundtrip"):
        p = sub.add_parser(name)
        p.add_argument("file", nargs="?", help="document path, or - for stdin")
        p.add_argument("--catalog", metavar="NAME", help="use a built-in catalog document")
        fmt = p.add_mutually_exclusive_group()
        fmt.add_argument("--json", dest="as_json", action="store_true")
        fmt.add_argument("--text", dest="as_json", action="store_false")
        if name == "check":
            p.add_argument("--check", dest="checks", action="append", default=[], metavar="NAME")
        if name == "construct":
            p.add_argument("--target", required=True, metavar="NAME")
        if name in ("construct", "roundtrip"):
            p.add_argument("--lambda", dest="weight", default="1", metavar="P/Q")
    sub.add_parser("catalog", help="list the built-in catalog names")
    return parser


def _load(args) -> Document:
    if args.catalog and args.file:
        raise UsageError("give either a file or --catalog, not both")
    if args.catalog:
        return catalog_document(args.catalog)
    if not args.file:
        raise UsageError("a document file or --catalog NAME is required")
    if args.file == "-":
        return parse_document(sys.stdin.buffer.read())
    try:
        with open(args.file, "rb") as fh:
            return parse_document(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    out, err = sys.stdout, sys.stderr
    if args.command == "catalog":
        out.write("\n".join(catalog_names()) + "\n")
        return 0
    try:
        doc = _load(args)
        if args.command == "check":
            return cmd_check(doc, args.checks, args.as_json, out)
        weight = scalar(args.weight) if hasattr(args, "weight") else None
        if args.command == "construct":
            return cmd_construct(doc, args.target, weight, out)
        if args.command == "classify":
            return cmd_classify(doc, args.as_json, out)
        return cmd_roundtrip(doc, weight, args.as_json, out)
    except VerificationError as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        if exc.report is not None and not exc.report:
            err.write(format_reports({"report": exc.report}, False))
        return 2
    except (PPForgeError, UsageError) as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
