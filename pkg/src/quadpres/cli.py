"""Command-line front end: document ingestion, checks, pipelines, reports.

Exit codes: 0 = all checks passed (or a query was decided), 1 = a verified
mathematical failure (witnesses in the report), 2 = usage or document error.

Human-readable output goes to stdout; `--out FILE` writes the machine report
(JSON, sorted keys).  The report is byte-identical across runs with the same
inputs except for its "timestamp" field, which carries wall-clock time and
elapsed seconds.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from datetime import datetime, timezone

from . import documents, oracle, posets, presentable, quadratic
from .errors import InputError, SizeGuardError, ValidationError
from .finitefield import ff_make, parse_field_arg
from .hyperfields import (
    Hyperfield,
    check_hyperfield,
    euclidean_hyperfield,
    from_field,
    hyperfield_isomorphic,
    prime_hyperfield,
    quadratic_hyperfield,
)

BUILTINS = {
    "euclidean3": euclidean_hyperfield,
    "walking-supremum": posets.walking_supremum,
    "example-sq-7": presentable.example_sq_structure,
}

EXIT_OK = 0
EXIT_MATH = 1
EXIT_USAGE = 2


def _jsonable(value):
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(_jsonable(v) for v in value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return repr(value)


class Report:
    def __init__(self, argv):
        self.data = {
            "command": list(argv),
            "structures": [],
            "reports": [],
            "documents": {},
            "result": "",
        }
        self._t0 = time.perf_counter()
        self.lines = []

    def say(self, line):
        self.lines.append(line)

    def structure(self, kind, summary):
        self.data["structures"].append({"kind": kind, **_jsonable(summary)})

    def check(self, name, report):
        self.data["reports"].append(
            {
                "check": name,
                "level": getattr(report, "level_passed", None),
                "passed": report.passed,
                "failures": _jsonable(getattr(report, "failures", [])),
            }
        )

    def poset_check(self, name, report):
        self.data["reports"].append(
            {
                "check": name,
                "passed": report.passed,
                "weakly_presentable": report.weakly_presentable,
                "basepoint_minimal": report.basepoint_minimal,
                "all_minimals_compact": report.all_minimals_compact,
                "tests_agree": report.tests_agree,
                "failures": _jsonable(report.witnesses),
            }
        )

    def document(self, name, text):
        self.data["documents"][name] = text

    def finish(self, result, out_path=None):
        self.data["result"] = result
        self.data["timestamp"] = {
            "at": datetime.now(timezone.utc).isoformat(),
            "elapsed_s": round(time.perf_counter() - self._t0, 6),
        }
        self.say(result)
        text = "\n".join(self.lines)
        print(text)
        if out_path:
            with open(out_path, "w") as fh:
                json.dump(self.data, fh, indent=2, sort_keys=True)
                fh.write("\n")


def _load_structure(args, want=None, field_builder=from_field):
    """Resolve --input / --builtin / --field to a structure."""
    sources = [s for s in ("input", "builtin", "field") if getattr(args, s, None)]
    if len(sources) != 1:
        raise InputError("exactly one of --input, --builtin, --field is required")
    if args.input:
        with open(args.input) as fh:
            obj = documents.parse_document(fh.read())
    elif args.builtin:
        if args.builtin not in BUILTINS:
            raise InputError(f"unknown builtin {args.builtin!r}; have {sorted(BUILTINS)}")
        obj = BUILTINS[args.builtin]()
    else:
        p, n = parse_field_arg(args.field)
        modulus = None
        if getattr(args, "modulus", None):
            modulus = [int(c) for c in args.modulus.split(",")]
        obj = field_builder(ff_make(p, n, modulus))
    if want is not None and not isinstance(obj, want):
        raise InputError(f"expected a {want.__name__} input, got {type(obj).__name__}")
    return obj


def _parse_form(F, text):
    names = text.split(",")
    return quadratic.Form(tuple(F.id_of(s.strip()) for s in names))


def _hyperfield_summary(rep, F):
    rep.structure(
        "hyperfield", {"size": F.size, "names": list(F.names), "zero": F.names[F.zero], "one": F.names[F.one]}
    )


# -- subcommands ---------------------------------------------------------------


def cmd_check_poset(args, rep):
    P = _load_structure(args, want=posets.FinitePointedPoset)
    rep.structure("poset", {"size": P.n, "names": list(P.names), "basepoint": P.names[P.basepoint]})
    report = posets.check_presentable(P)
    rep.poset_check("presentable-poset", report)
    rep.say(f"poset: {P.n} elements, basepoint {P.names[P.basepoint]}")
    rep.say(
        "weakly presentable: %s | basepoint minimal: %s | minimals compact: %s"
        % (report.weakly_presentable, report.basepoint_minimal, report.all_minimals_compact)
    )
    if report.tests_agree is not None:
        rep.say(f"compactness vs unique-representation agreement: {report.tests_agree}")
    for axiom, wit in report.witnesses:
        rep.say(f"failure {axiom}: witness {wit}")
    return EXIT_OK if report.passed else EXIT_MATH, "presentability: pass" if report.passed else "presentability: FAIL"


def cmd_check_hyperfield(args, rep):
    F = _load_structure(args, want=Hyperfield)
    _hyperfield_summary(rep, F)
    report = check_hyperfield(F)
    rep.check("hyperfield-axioms", report)
    rep.say(f"hyperfield candidate: {F.size} elements")
    rep.say(f"level passed: {report.level_passed}")
    for axiom, wit in report.failures:
        rep.say(f"failure {axiom}: witness {wit}")
    return (EXIT_OK, "hyperfield: pass") if report.passed else (EXIT_MATH, "hyperfield: FAIL")


def cmd_check_presentable(args, rep):
    R = _load_structure(args, want=presentable.PresentableRing)
    rep.structure(
        "presentable",
        {"size": R.n, "claimed": "field" if R.is_field else "ring", "supercompacts": len(R.supercompacts())},
    )
    report = presentable.check_presentable(R, seed=args.seed or 0)
    rep.check("presentable-ladder", report)
    rep.say(f"presentable structure: {R.n} elements, claimed {'field' if R.is_field else 'ring'}")
    rep.say(f"level passed: {report.level_passed}")
    for axiom, wit in report.failures[:10]:
        rep.say(f"failure {axiom}: witness {wit}")
    return (EXIT_OK, "presentable: pass") if report.passed else (EXIT_MATH, "presentable: FAIL")


def cmd_qhf(args, rep):
    p, n = parse_field_arg(args.field)
    modulus = [int(c) for c in args.modulus.split(",")] if args.modulus else None
    k = ff_make(p, n, modulus)
    Q = quadratic_hyperfield(k)
    _hyperfield_summary(rep, Q)
    report = check_hyperfield(Q)
    rep.check("hyperfield-axioms", report)
    doc = documents.emit_hyperfield(Q)
    rep.document("quadratic-hyperfield", doc)
    rep.say(f"Q(GF({p**n})): {Q.size} square classes (with zero)")
    rep.say(doc.rstrip("\n"))
    return (EXIT_OK, "qhf: pass") if report.passed else (EXIT_MATH, "qhf: FAIL")


def cmd_prime(args, rep):
    F = _load_structure(args, want=Hyperfield)
    P = prime_hyperfield(F)
    _hyperfield_summary(rep, P)
    report = check_hyperfield(P)
    rep.check("hyperfield-axioms", report)
    doc = documents.emit_hyperfield(P)
    rep.document("prime-hyperfield", doc)
    rep.say(doc.rstrip("\n"))
    return (EXIT_OK, "prime: pass") if report.passed else (EXIT_MATH, "prime: FAIL")


def cmd_quotient(args, rep):
    F = _load_structure(args, want=Hyperfield)
    T = {F.id_of(s.strip()) for s in args.subset.split(",")}
    Q = presentable.quotient_mod_multiplicative_set(F, T)
    _hyperfield_summary(rep, Q)
    report = check_hyperfield(Q)
    rep.check("hyperfield-axioms", report)
    doc = documents.emit_hyperfield(Q)
    rep.document("quotient-hyperfield", doc)
    rep.say(f"quotient by T of size {len(T)}: {Q.size} classes")
    rep.say(doc.rstrip("\n"))
    return (EXIT_OK, "quotient: pass") if report.passed else (EXIT_MATH, "quotient: FAIL")


def cmd_pipeline(args, rep):
    p, n = parse_field_arg(args.field)
    k = ff_make(p, n)
    start = prime_hyperfield(from_field(k))
    out = presentable.squares_pipeline(start, literal_squares=args.literal_squares)
    Q = quadratic_hyperfield(k)
    _hyperfield_summary(rep, out)
    rep.document("pipeline-output", documents.emit_hyperfield(out))
    if args.literal_squares:
        rep.say(
            f"literal square-set reading: T is every nonzero element; quotient collapses to {out.size} classes"
        )
    iso = None
    if out.size == Q.size:
        iso = hyperfield_isomorphic(out, Q)
    rep.data["reports"].append(
        {"check": "pipeline-vs-quadratic-hyperfield", "passed": iso is not None, "failures": []}
    )
    rep.say(f"pipeline output: {out.size} classes; Q(GF({p**n})): {Q.size} classes")
    if iso is not None:
        rep.say("isomorphic to the quadratic hyperfield: yes")
        return EXIT_OK, "pipeline: pass"
    rep.say("isomorphic to the quadratic hyperfield: no")
    return (EXIT_OK if args.literal_squares else EXIT_MATH), "pipeline: collapse reported" if args.literal_squares else "pipeline: FAIL"


def cmd_isom(args, rep):
    F = _load_structure(args, want=Hyperfield, field_builder=quadratic_hyperfield)
    if len(args.form) != 2:
        raise InputError("isom needs exactly two --form options")
    ctx = quadratic.IsometryContext(F)
    phi = _parse_form(F, args.form[0])
    psi = _parse_form(F, args.form[1])
    verdict = ctx.isometric(phi, psi)
    rep.data["reports"].append({"check": "isometry", "passed": True, "verdict": verdict, "failures": []})
    rep.say(f"form 1: {args.form[0]}  form 2: {args.form[1]}")
    return EXIT_OK, "isometric" if verdict else "not isometric"


def cmd_witt(args, rep):
    if args.field:
        p, n = parse_field_arg(args.field)
        k = ff_make(p, n)
        F = quadratic_hyperfield(k)
        label = f"Q(GF({p**n}))"
        q = p**n
    else:
        F = _load_structure(args, want=Hyperfield)
        label = args.builtin or args.input
        q = None
    _hyperfield_summary(rep, F)
    hrep = check_hyperfield(F)
    rep.check("hyperfield-axioms", hrep)
    rep.say(f"{label}: hyperfield axioms {'pass' if hrep.passed else 'FAIL'}")
    if not hrep.passed:
        return EXIT_MATH, "witt: FAIL (hyperfield axioms)"
    qrep = quadratic.check_quadratic(F, min(args.max_dim, 4))
    rep.check("quadratic-presentability", qrep)
    rep.say(f"quadratic presentability to dim {min(args.max_dim, 4)}: {'pass' if qrep.passed else 'FAIL'}")
    if not qrep.passed:
        return EXIT_MATH, "witt: FAIL (quadratic axioms)"
    W = quadratic.witt_ring(F, args.max_dim)
    rep.data["reports"].append(
        {
            "check": "witt-ring",
            "passed": True,
            "status": W.status,
            "classes": len(W.classes),
            "growth": W.growth,
            "failures": [],
        }
    )
    doc = documents.emit_witt_ring(W, F.names)
    rep.document("witt-ring", doc)
    rep.say(doc.rstrip("\n"))
    rep.say(W.summary())
    if q is not None and q in oracle.ORACLE_SIZES and W.status == "finite":
        WO = oracle.classical_witt_ring(q, min(args.max_dim, 4))
        match = quadratic.ring_isomorphic(W, WO) is not None
        rep.data["reports"].append(
            {"check": "oracle-match", "passed": match, "oracle_classes": len(WO.classes), "failures": []}
        )
        rep.say(f"classical oracle: {len(WO.classes)} classes (diagonal forms, char-2 via <1,1> stabilization)")
        rep.say(f"oracle match: {'yes' if match else 'no'}")
        if not match:
            return EXIT_MATH, "witt: FAIL (oracle mismatch)"
    return EXIT_OK, "witt: pass"


def cmd_oracle(args, rep):
    if args.oracle_op == "classes":
        cc = oracle.congruence_classes(args.q, args.dim)
        rep.data["reports"].append(
            {"check": "congruence-classes", "passed": True, "count": cc.count, "failures": []}
        )
        rep.say(f"GF({args.q}) dim {args.dim}: {cc.count} congruence classes")
        return EXIT_OK, f"classes: {cc.count}"
    if args.oracle_op == "isom":
        if len(args.form) != 2:
            raise InputError("oracle isom needs exactly two --form options")
        phi = tuple(int(s) for s in args.form[0].split(","))
        psi = tuple(int(s) for s in args.form[1].split(","))
        verdict = oracle.classical_isometric(args.q, phi, psi)
        rep.data["reports"].append(
            {"check": "classical-isometry", "passed": True, "verdict": verdict, "failures": []}
        )
        return EXIT_OK, "isometric" if verdict else "not isometric"
    if args.oracle_op == "witt":
        W = oracle.classical_witt_ring(args.q, args.max_dim)
        rep.data["reports"].append(
            {"check": "classical-witt-ring", "passed": True, "classes": len(W.classes), "failures": []}
        )
        rep.say(W.summary())
        return EXIT_OK, f"oracle witt: {len(W.classes)} classes"
    raise InputError(f"unknown oracle operation {args.oracle_op!r}")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="quadpres",
        description="Hyperfields, presentable structures, and Witt rings of "
        "quadratically presentable fields.",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    def common(p, field=True, modulus=False):
        p.add_argument("--input", help="structure document file")
        p.add_argument("--builtin", help=f"one of {sorted(BUILTINS)}")
        if field:
            p.add_argument("--field", help="finite field as q or p^n")
        if modulus:
            p.add_argument("--modulus", help="comma-separated coefficients, constant first")
        p.add_argument("--out", help="write the machine report (JSON) here")
        p.add_argument("--seed", type=int, help="seed for randomized sampling")

    p = sub.add_parser("check-poset", help="presentability ladder of a pointed poset")
    common(p, field=False)
    p = sub.add_parser("check-hyperfield", help="hyperfield axiom ladder")
    common(p, modulus=True)
    p = sub.add_parser("check-presentable", help="presentable ring/field ladder")
    common(p, field=False)
    p = sub.add_parser("qhf", help="quadratic hyperfield Q(k) of a finite field")
    p.add_argument("--field", required=True)
    p.add_argument("--modulus")
    p.add_argument("--out")
    p.add_argument("--seed", type=int)
    p = sub.add_parser("prime", help="prime hyperfield (three-case addition)")
    common(p, modulus=True)
    p = sub.add_parser("quotient", help="quotient by a multiplicative subset")
    common(p, modulus=True)
    p.add_argument("--subset", required=True, help="comma-separated element names")
    p = sub.add_parser("pipeline", help="squares pipeline vs quadratic hyperfield")
    p.add_argument("--field", required=True)
    p.add_argument("--literal-squares", action="store_true", dest="literal_squares")
    p.add_argument("--out")
    p.add_argument("--seed", type=int)
    p = sub.add_parser("isom", help="decide isometry of two forms")
    common(p)
    p.add_argument("--form", action="append", required=True, help="comma-separated element names")
    p = sub.add_parser("witt", help="Witt ring of a quadratically presentable field")
    common(p)
    p.add_argument("--max-dim", type=int, default=4, dest="max_dim")

    p = sub.add_parser("oracle", help="classical field-level computations")
    osub = p.add_subparsers(dest="oracle_op", required=True)
    oc = osub.add_parser("classes", help="Gram-matrix congruence classes")
    oc.add_argument("--q", type=int, required=True)
    oc.add_argument("--dim", type=int, required=True)
    oc.add_argument("--out")
    oi = osub.add_parser("isom", help="classical diagonal-form isometry (odd q)")
    oi.add_argument("--q", type=int, required=True)
    oi.add_argument("--form", action="append", required=True)
    oi.add_argument("--out")
    ow = osub.add_parser("witt", help="classical Witt ring")
    ow.add_argument("--q", type=int, required=True)
    ow.add_argument("--max-dim", type=int, default=4, dest="max_dim")
    ow.add_argument("--out")
    return parser


COMMANDS = {
    "check-poset": cmd_check_poset,
    "check-hyperfield": cmd_check_hyperfield,
    "check-presentable": cmd_check_presentable,
    "qhf": cmd_qhf,
    "prime": cmd_prime,
    "quotient": cmd_quotient,
    "pipeline": cmd_pipeline,
    "isom": cmd_isom,
    "witt": cmd_witt,
    "oracle": cmd_oracle,
}


def _merge_value_flags(argv):
    """Join '--form -1,-1' into '--form=-1,-1' so leading dashes parse."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--form", "--subset", "--modulus") and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    argv = _merge_value_flags(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return EXIT_OK if err.code in (0, None) else EXIT_USAGE
    rep = Report(argv)
    try:
        code, result = COMMANDS[args.cmd](args, rep)
    except (InputError, SizeGuardError, FileNotFoundError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as err:
        rep.finish(f"validation failure: {err}", getattr(args, "out", None))
        return EXIT_MATH
    rep.finish(result, getattr(args, "out", None))
    return code


if __name__ == "__main__":
    sys.exit(main())
