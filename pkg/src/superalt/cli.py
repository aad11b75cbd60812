"""Command-line interface.

Every verb prints a human summary followed by a canonical JSON report.
Exit codes: 0 all checks pass, 1 a law or axiom fails (the report carries
the witness), 2 usage or document validation error.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import corpus
from .bimodules import (
    AltBimodule,
    PreBimodule,
    calibrate_pre_bimodule,
    check_alt_bimodule,
    check_pre_bimodule,
)
from .constructions import (
    alt_of,
    averaging_product,
    centroid_twist,
    derived_n,
    plus_jordan,
    rb_split,
    scale,
    tensor_alt,
    transpose,
    yau_twist,
)
from .core import EvenMap, ValidationError
from .fields import FieldError, PrimeField, RationalField
from .io import (
    DocumentError,
    canonical_dumps,
    load,
    object_to_doc,
    report_to_doc,
    save,
)
from .laws import (
    JORDAN_CYCLES,
    PRE_LAWS,
    PRODUCT_LAWS,
    HomAlgebra,
    HomPreAlgebra,
    HypothesisError,
    calibrate_jordan,
    check_pre_law,
    check_product_law,
)
from .operators import OPERATOR_KINDS, OperatorSpec, check_operator, search_operators

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Usage(Exception):
    pass


def _warn(warnings):
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)


def _load_as(path, kinds, strict):
    _, obj, warnings = load(path, strict=strict)
    _warn(warnings)
    if not isinstance(obj, kinds):
        names = " or ".join(k.__name__ for k in (kinds if isinstance(kinds, tuple) else (kinds,)))
        raise _Usage(f"{path}: expected {names}, got {type(obj).__name__}")
    return obj


def _human_line(rep):
    if rep.passed:
        return f"PASS {rep.law}: {rep.checked} tuples checked"
    return (
        f"FAIL {rep.law}: {rep.identity} at basis tuple {list(rep.witness)} "
        f"(parities {list(rep.witness_parities)}) after {rep.checked} tuples"
    )


def _emit_report(rep, field):
    print(_human_line(rep))
    print(canonical_dumps(report_to_doc(rep, field)), end="")
    return EXIT_PASS if rep.passed else EXIT_FAIL


def _parse_scalar(field, text):
    try:
        if isinstance(field, RationalField):
            return Fraction(text)
        return field.scalar(int(text))
    except (ValueError, ZeroDivisionError):
        raise _Usage(f"cannot read scalar {text!r} for {field}")


def _cmd_check(args):
    a = _load_as(args.file, HomAlgebra, args.strict_canonical)
    rep = check_product_law(a, args.law, jordan_cycle=args.jordan_cycle, jobs=args.jobs)
    return _emit_report(rep, a.space.field)


def _cmd_check_pre(args):
    p = _load_as(args.file, HomPreAlgebra, args.strict_canonical)
    rep = check_pre_law(p, args.law, jobs=args.jobs)
    return _emit_report(rep, p.space.field)


CONSTRUCT_OPS = (
    "alt",
    "transpose",
    "plus-jordan",
    "tensor",
    "centroid-twist",
    "averaging",
    "rb-split",
    "yau-twist",
    "derived",
    "scale",
)


def _cmd_construct(args):
    strict = args.strict_canonical
    op = args.op

    def one(kinds):
        if len(args.inputs) != 1:
            raise _Usage(f"{op} takes exactly one --in file")
        return _load_as(args.inputs[0], kinds, strict)

    def need_map(space_of):
        if args.map is None:
            raise _Usage(f"{op} needs --map")
        f = _load_as(args.map, EvenMap, strict)
        return f

    if op == "alt":
        out = alt_of(one(HomPreAlgebra))
    elif op == "transpose":
        out = transpose(one(HomPreAlgebra))
    elif op == "plus-jordan":
        out = plus_jordan(one(HomAlgebra))
    elif op == "tensor":
        if len(args.inputs) != 2:
            raise _Usage("tensor takes exactly two --in files")
        c = _load_as(args.inputs[0], HomAlgebra, strict)
        b = _load_as(args.inputs[1], HomAlgebra, strict)
        out = tensor_alt(c, b)
    elif op == "centroid-twist":
        a = one(HomAlgebra)
        out = centroid_twist(a, need_map(a))
    elif op == "averaging":
        a = one(HomAlgebra)
        out = averaging_product(a, need_map(a))
    elif op == "rb-split":
        a = one(HomAlgebra)
        out = rb_split(a, need_map(a))
    elif op == "yau-twist":
        p = one(HomPreAlgebra)
        out = yau_twist(p, need_map(p))
    elif op == "derived":
        if args.n is None:
            raise _Usage("derived needs --n")
        out = derived_n(one(HomPreAlgebra), args.n)
    elif op == "scale":
        p = one(HomPreAlgebra)
        if args.scalar is None:
            raise _Usage("scale needs --lambda")
        out = scale(p, _parse_scalar(p.space.field, args.scalar))
    else:
        raise _Usage(f"unknown construction {op!r}")

    metadata = {"operation": op, "inputs": list(args.inputs)}
    if args.map is not None:
        metadata["map"] = args.map
    if args.n is not None:
        metadata["n"] = args.n
    if args.scalar is not None:
        metadata["lambda"] = args.scalar
    doc = object_to_doc(out, metadata=metadata)
    save(doc, args.out)
    print(f"wrote {args.out} ({doc['kind']} {doc.get('name', '')})".rstrip())
    return EXIT_PASS


def _cmd_verify_bimodule(args):
    m = _load_as(args.file, (AltBimodule, PreBimodule), args.strict_canonical)
    if args.law == "alt":
        if not isinstance(m, AltBimodule):
            raise _Usage(f"{args.file} is not an alt bimodule document")
        rep = check_alt_bimodule(m, jobs=args.jobs)
    else:
        if not isinstance(m, PreBimodule):
            raise _Usage(f"{args.file} is not a pre bimodule document")
        rep = check_pre_bimodule(m, jobs=args.jobs)
    return _emit_report(rep, m.module.field)


def _cmd_check_operator(args):
    a = _load_as(args.algebra, (HomAlgebra, HomPreAlgebra), args.strict_canonical)
    if isinstance(a, HomPreAlgebra) and args.kind != "endomorphism":
        raise _Usage("only endomorphism checks run on pre-algebra documents")
    f = _load_as(args.map, EvenMap, args.strict_canonical)
    weight = None
    if args.kind == "rota-baxter":
        weight = _parse_scalar(a.space.field, args.weight if args.weight is not None else "0")
    bimod = None
    if args.kind == "o-operator":
        if args.bimodule is None:
            raise _Usage("o-operator checks need --bimodule")
        bimod = _load_as(args.bimodule, AltBimodule, args.strict_canonical)
    spec = OperatorSpec(args.kind, f, weight=weight, bimodule=bimod)
    rep = check_operator(spec, a)
    return _emit_report(rep, a.space.field)


def _cmd_search(args):
    a = _load_as(args.algebra, HomAlgebra, args.strict_canonical)
    field = a.space.field
    weight = None
    if args.kind == "rota-baxter":
        weight = _parse_scalar(field, args.weight if args.weight is not None else "0")
    bimod = None
    if args.kind == "o-operator":
        if args.bimodule is None:
            raise _Usage("o-operator search needs --bimodule")
        bimod = _load_as(args.bimodule, AltBimodule, args.strict_canonical)
    res = search_operators(
        a,
        args.kind,
        weight=weight,
        budget=args.budget,
        signed_perms=args.signed_perms,
        bimodule=bimod,
    )
    tail = "space exhausted" if res.exhausted else "budget reached"
    print(
        f"search {res.kind}: {len(res.found)} found, "
        f"{res.candidates_checked} of {res.space_size} candidates checked ({tail})"
    )
    from .io import matrix_to_json

    doc = {
        "kind": "report",
        "search": {
            "operator": res.kind,
            "found": [matrix_to_json(f) for f in res.found],
            "candidates_checked": res.candidates_checked,
            "exhausted": res.exhausted,
            "space_size": res.space_size,
        },
    }
    print(canonical_dumps(doc), end="")
    return EXIT_PASS


def _cmd_corpus(args):
    if args.name == "list":
        for n in corpus.builtin_names():
            print(n)
        return EXIT_PASS
    if args.out is None:
        raise _Usage("corpus needs --out (or use the name 'list')")
    kind, obj = corpus.build_named(args.name, prime=args.prime)
    name = args.name if kind == "map" else None
    doc = object_to_doc(obj, name=name)
    save(doc, args.out)
    print(f"wrote {args.out} ({doc['kind']} {doc.get('name', '')})".rstrip())
    return EXIT_PASS


def _cmd_calibrate_jordan(args):
    out = calibrate_jordan(corpus.jordan_calibration_instances())
    for cycle, verdicts in out["per_cycle"].items():
        marks = ", ".join(f"{k}={'pass' if v else 'fail'}" for k, v in verdicts.items())
        print(f"cycle {cycle}: {marks}")
    print(f"survivors: {', '.join(out['survivors']) or 'none'}")
    print(f"adopted: {out['default']}")
    doc = {"kind": "report", "calibration": out}
    print(canonical_dumps(doc), end="")
    return EXIT_PASS if out["survivors"] == [out["default"]] else EXIT_FAIL


def _cmd_calibrate_prebimodule(args):
    out = calibrate_pre_bimodule(corpus.standard_pre_instances())
    for variant, verdicts in out["per_variant"].items():
        marks = ", ".join(f"{k}={'pass' if v else 'fail'}" for k, v in verdicts.items())
        print(f"variant {variant}: {marks}")
    print(f"survivors: {', '.join(out['survivors']) or 'none'}")
    print(f"adopted: {out['default']}")
    doc = {"kind": "report", "calibration": out}
    print(canonical_dumps(doc), end="")
    return EXIT_PASS if out["survivors"] == [out["default"]] else EXIT_FAIL


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                        help="worker count for law scans (default: all cores)")
    common.add_argument("--strict-canonical", action="store_true",
                        help="reject non-canonical documents instead of normalizing")

    parser = argparse.ArgumentParser(
        prog="superalt",
        description="verification and construction toolkit for graded "
        "hom-alternative and hom-prealternative structures",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("check", parents=[common], help="check a product law on an algebra file")
    p.add_argument("file")
    p.add_argument("--law", required=True, choices=PRODUCT_LAWS)
    p.add_argument("--jordan-cycle", choices=JORDAN_CYCLES, default=None)
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("check-pre", parents=[common],
                       help="check a pre-structure law on a pre-algebra file")
    p.add_argument("file")
    p.add_argument("--law", required=True, choices=PRE_LAWS)
    p.set_defaults(fn=_cmd_check_pre)

    p = sub.add_parser("construct", parents=[common], help="apply a construction and write the result")
    p.add_argument("op", choices=CONSTRUCT_OPS)
    p.add_argument("--in", dest="inputs", nargs="+", required=True, metavar="FILE")
    p.add_argument("--map", default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--lambda", dest="scalar", default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_construct)

    p = sub.add_parser("verify-bimodule", parents=[common], help="check bimodule axioms")
    p.add_argument("file")
    p.add_argument("--law", required=True, choices=("alt", "pre"))
    p.set_defaults(fn=_cmd_verify_bimodule)

    p = sub.add_parser("check-operator", parents=[common], help="check an operator equation")
    p.add_argument("algebra")
    p.add_argument("--map", required=True)
    p.add_argument("--kind", required=True, choices=OPERATOR_KINDS)
    p.add_argument("--weight", default=None)
    p.add_argument("--bimodule", default=None)
    p.set_defaults(fn=_cmd_check_operator)

    p = sub.add_parser("search", parents=[common],
                       help="brute-force operator search over a prime field")
    p.add_argument("algebra")
    p.add_argument("--kind", required=True, choices=OPERATOR_KINDS)
    p.add_argument("--weight", default=None)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--signed-perms", action="store_true")
    p.add_argument("--bimodule", default=None)
    p.set_defaults(fn=_cmd_search)

    p = sub.add_parser("corpus", parents=[common], help="emit a built-in instance or map")
    p.add_argument("name")
    p.add_argument("--out", default=None)
    p.add_argument("--prime", type=int, default=None)
    p.set_defaults(fn=_cmd_corpus)

    p = sub.add_parser("calibrate-jordan", parents=[common],
                       help="rerun the cyclic-reading calibration of the Jordan identity")
    p.set_defaults(fn=_cmd_calibrate_jordan)

    p = sub.add_parser("calibrate-prebimodule", parents=[common],
                       help="rerun the pre-bimodule axiom-reading calibration")
    p.set_defaults(fn=_cmd_calibrate_prebimodule)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except _Usage as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except HypothesisError as e:
        print(f"hypothesis failed for {e.operation}:", file=sys.stderr)
        print(_human_line(e.report))
        print(canonical_dumps(report_to_doc(e.report, None)), end="")
        return EXIT_FAIL
    except (DocumentError, ValidationError, FieldError) as e:
        msgs = getattr(e, "errors", None) or [str(e)]
        for m in msgs:
            print(f"error: {m}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
