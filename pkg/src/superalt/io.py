"""Canonical JSON documents for instances, maps, bimodules and reports.

One object per file.  Canonical form: keys sorted, two-space indent,
sparse tensor entries sorted lexicographically by indices with zeros
omitted, rationals as lowest-term strings, F_p values as ints in [0, p).
Strict parsing rejects non-canonical input; lenient parsing (the default)
normalizes it and returns warnings.  parse(serialize(doc)) is bit-exact.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction

from .bimodules import AltBimodule, PreBimodule
from .core import EvenBilinear, EvenMap, SuperSpace, ValidationError
from .fields import FieldError, PrimeField, RationalField, field_from_json, field_to_json
from .laws import HomAlgebra, HomPreAlgebra, LawReport

DOCUMENT_KINDS = ("algebra", "pre-algebra", "map", "bimodule", "report")


class DocumentError(ValueError):
    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


class _Ctx:
    """Collects located errors; in lenient mode canonicality problems
    become warnings instead."""

    __slots__ = ("strict", "errors", "warnings")

    def __init__(self, strict):
        self.strict = strict
        self.errors = []
        self.warnings = []

    def err(self, where, msg):
        self.errors.append(f"{where}: {msg}")

    def bend(self, where, msg):
        if self.strict:
            self.errors.append(f"{where}: {msg}")
        else:
            self.warnings.append(f"{where}: {msg}")

    def raise_if_failed(self):
        if self.errors:
            raise DocumentError(self.errors)


def canonical_dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def scalar_to_json(field, v):
    if isinstance(field, RationalField):
        return str(v)
    return v.val


def _scalar_from_json(field, v, ctx, where):
    # the field's own decoder knows canonical form; lenient decode plus
    # bend() reproduces strict behavior exactly
    try:
        val, warn = field.from_json(v, strict=False)
    except FieldError as e:
        ctx.err(where, str(e))
        return field.zero
    if warn:
        ctx.bend(where, warn)
    return val


def _field_from_doc(doc, ctx):
    try:
        return field_from_json(doc["scalars"])
    except (FieldError, ValidationError, KeyError, TypeError) as e:
        ctx.err("scalars", str(e) if str(e) else "missing or malformed")
        ctx.raise_if_failed()


def _dims_from_doc(doc, ctx, key="dims"):
    d = doc.get(key)
    ok = (
        isinstance(d, list)
        and len(d) == 2
        and all(isinstance(x, int) and not isinstance(x, bool) and x >= 0 for x in d)
    )
    if not ok:
        ctx.err(key, f"expected [n0, n1] with nonnegative integers, got {d!r}")
        ctx.raise_if_failed()
    return d[0], d[1]


def _check_keys(doc, required, optional, ctx):
    for k in required:
        if k not in doc:
            ctx.err(k, "missing")
    for k in doc:
        if k not in required and k not in optional:
            ctx.bend(k, "unknown key")
    ctx.raise_if_failed()


def entries_to_json(bil: EvenBilinear):
    field = bil.out.field
    return [[i, j, k, scalar_to_json(field, v)] for i, j, k, v in bil.sparse_entries()]


def _entries_from_json(field, lst, left, right, out, ctx, where):
    if not isinstance(lst, list):
        ctx.err(where, f"expected a list of [i,j,k,value] entries, got {type(lst).__name__}")
        ctx.raise_if_failed()
    cube = [
        [[field.zero for _ in range(out.dim)] for _ in range(right.dim)]
        for _ in range(left.dim)
    ]
    prev = None
    seen = set()
    for pos, entry in enumerate(lst):
        loc = f"{where}[{pos}]"
        if not (isinstance(entry, list) and len(entry) == 4):
            ctx.err(loc, f"expected [i, j, k, value], got {entry!r}")
            continue
        i, j, k, v = entry
        idx_ok = all(isinstance(x, int) and not isinstance(x, bool) for x in (i, j, k))
        if not idx_ok or not (0 <= i < left.dim and 0 <= j < right.dim and 0 <= k < out.dim):
            ctx.err(loc, f"indices ({i},{j},{k}) out of range")
            continue
        if (i, j, k) in seen:
            ctx.err(loc, f"duplicate entry for ({i},{j},{k})")
            continue
        seen.add((i, j, k))
        if prev is not None and (i, j, k) < prev:
            ctx.bend(loc, "entries not sorted by indices")
        prev = (i, j, k)
        val = _scalar_from_json(field, v, ctx, loc)
        if not val:
            ctx.bend(loc, "explicit zero entry")
            continue
        cube[i][j][k] = val
    ctx.raise_if_failed()
    try:
        return EvenBilinear(left, right, out, cube)
    except ValidationError as e:
        raise DocumentError([f"{where}: {m}" for m in e.errors])


def matrix_to_json(m: EvenMap):
    field = m.codomain.field
    return [[scalar_to_json(field, v) for v in row] for row in m.entries]


def _matrix_from_json(field, rows, domain, codomain, ctx, where):
    ok = isinstance(rows, list) and len(rows) == codomain.dim and all(
        isinstance(r, list) and len(r) == domain.dim for r in rows
    )
    if not ok:
        ctx.err(where, f"expected a {codomain.dim} x {domain.dim} matrix")
        ctx.raise_if_failed()
    entries = [
        [_scalar_from_json(field, v, ctx, f"{where}[{r}][{c}]") for c, v in enumerate(row)]
        for r, row in enumerate(rows)
    ]
    ctx.raise_if_failed()
    try:
        return EvenMap(domain, codomain, entries)
    except ValidationError as e:
        raise DocumentError([f"{where}: {m}" for m in e.errors])


def algebra_to_doc(a: HomAlgebra, name: str | None = None, metadata: dict | None = None):
    doc = {
        "kind": "algebra",
        "scalars": field_to_json(a.space.field),
        "dims": [a.space.even, a.space.odd],
        "product": entries_to_json(a.mu),
        "twist": matrix_to_json(a.alpha),
    }
    if name or a.name:
        doc["name"] = name or a.name
    if metadata:
        doc["metadata"] = metadata
    return doc


def pre_to_doc(p: HomPreAlgebra, name: str | None = None, metadata: dict | None = None):
    doc = {
        "kind": "pre-algebra",
        "scalars": field_to_json(p.space.field),
        "dims": [p.space.even, p.space.odd],
        "prec": entries_to_json(p.prec),
        "succ": entries_to_json(p.succ),
        "twist": matrix_to_json(p.alpha),
    }
    if name or p.name:
        doc["name"] = name or p.name
    if metadata:
        doc["metadata"] = metadata
    return doc


def map_to_doc(f: EvenMap, name: str | None = None, metadata: dict | None = None):
    doc = {
        "kind": "map",
        "scalars": field_to_json(f.domain.field),
        "dims": [f.domain.even, f.domain.odd],
        "matrix": matrix_to_json(f),
    }
    if f.codomain != f.domain:
        doc["codomain_dims"] = [f.codomain.even, f.codomain.odd]
    if name:
        doc["name"] = name
    if metadata:
        doc["metadata"] = metadata
    return doc


def bimodule_to_doc(m, base_path: str, name: str | None = None, metadata: dict | None = None):
    v = m.module
    doc = {
        "kind": "bimodule",
        "base": base_path,
        "scalars": field_to_json(v.field),
        "dims": [v.even, v.odd],
        "beta": matrix_to_json(m.beta),
    }
    if isinstance(m, AltBimodule):
        doc["variant"] = "alt"
        doc["lsucc"] = entries_to_json(m.lsucc)
        doc["rprec"] = entries_to_json(m.rprec)
    elif isinstance(m, PreBimodule):
        doc["variant"] = "pre"
        for key in ("lprec", "rprec", "lsucc", "rsucc"):
            doc[key] = entries_to_json(getattr(m, key))
    else:
        raise ValidationError([f"not a bimodule: {m!r}"])
    if name or m.name:
        doc["name"] = name or m.name
    if metadata:
        doc["metadata"] = metadata
    return doc


def report_to_doc(rep: LawReport, field) -> dict:
    doc = {"kind": "report"}
    doc.update(rep.to_json_dict(field))
    return doc


def doc_to_algebra(doc, ctx) -> HomAlgebra:
    _check_keys(doc, ("kind", "scalars", "dims", "product", "twist"), ("name", "metadata"), ctx)
    field = _field_from_doc(doc, ctx)
    n0, n1 = _dims_from_doc(doc, ctx)
    space = SuperSpace(field, n0, n1)
    mu = _entries_from_json(field, doc["product"], space, space, space, ctx, "product")
    alpha = _matrix_from_json(field, doc["twist"], space, space, ctx, "twist")
    return HomAlgebra(mu, alpha, name=doc.get("name", ""))


def doc_to_pre(doc, ctx) -> HomPreAlgebra:
    _check_keys(
        doc, ("kind", "scalars", "dims", "prec", "succ", "twist"), ("name", "metadata"), ctx
    )
    field = _field_from_doc(doc, ctx)
    n0, n1 = _dims_from_doc(doc, ctx)
    space = SuperSpace(field, n0, n1)
    prec = _entries_from_json(field, doc["prec"], space, space, space, ctx, "prec")
    succ = _entries_from_json(field, doc["succ"], space, space, space, ctx, "succ")
    alpha = _matrix_from_json(field, doc["twist"], space, space, ctx, "twist")
    return HomPreAlgebra(prec, succ, alpha, name=doc.get("name", ""))


def doc_to_map(doc, ctx) -> EvenMap:
    _check_keys(
        doc, ("kind", "scalars", "dims", "matrix"), ("codomain_dims", "name", "metadata"), ctx
    )
    field = _field_from_doc(doc, ctx)
    n0, n1 = _dims_from_doc(doc, ctx)
    domain = SuperSpace(field, n0, n1)
    if "codomain_dims" in doc:
        c0, c1 = _dims_from_doc(doc, ctx, key="codomain_dims")
        codomain = SuperSpace(field, c0, c1)
    else:
        codomain = domain
    return _matrix_from_json(field, doc["matrix"], domain, codomain, ctx, "matrix")


def doc_to_bimodule(doc, ctx, base_dir: str):
    required = ("kind", "scalars", "dims", "base", "variant", "beta")
    variant = doc.get("variant")
    if variant == "alt":
        required = required + ("lsucc", "rprec")
        optional = ("name", "metadata")
    elif variant == "pre":
        required = required + ("lprec", "rprec", "lsucc", "rsucc")
        optional = ("name", "metadata")
    else:
        raise DocumentError([f"variant: expected alt or pre, got {variant!r}"])
    _check_keys(doc, required, optional, ctx)
    field = _field_from_doc(doc, ctx)
    n0, n1 = _dims_from_doc(doc, ctx)
    v = SuperSpace(field, n0, n1)
    if not isinstance(doc["base"], str):
        raise DocumentError([f"base: expected a relative path, got {doc['base']!r}"])
    base_doc, base, _ = load(os.path.join(base_dir, doc["base"]), strict=ctx.strict)
    beta = _matrix_from_json(field, doc["beta"], v, v, ctx, "beta")
    if variant == "alt":
        if not isinstance(base, HomAlgebra):
            raise DocumentError(["base: an alt bimodule needs an algebra base"])
        a = base.space
        lsucc = _entries_from_json(field, doc["lsucc"], a, v, v, ctx, "lsucc")
        rprec = _entries_from_json(field, doc["rprec"], v, a, v, ctx, "rprec")
        try:
            return AltBimodule(base, beta, lsucc, rprec, name=doc.get("name", ""))
        except ValidationError as e:
            raise DocumentError(e.errors)
    if not isinstance(base, HomPreAlgebra):
        raise DocumentError(["base: a pre bimodule needs a pre-algebra base"])
    a = base.space
    acts = {}
    for key in ("lprec", "lsucc"):
        acts[key] = _entries_from_json(field, doc[key], a, v, v, ctx, key)
    for key in ("rprec", "rsucc"):
        acts[key] = _entries_from_json(field, doc[key], v, a, v, ctx, key)
    try:
        return PreBimodule(base, beta, name=doc.get("name", ""), **acts)
    except ValidationError as e:
        raise DocumentError(e.errors)


def parse_text(text: str, strict: bool = False, base_dir: str | None = None):
    """Parse and validate one document.  Returns (doc, object, warnings);
    for reports the object is the doc itself."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError([f"line {e.lineno} col {e.colno}: {e.msg}"])
    if not isinstance(doc, dict):
        raise DocumentError(["top level: expected an object"])
    kind = doc.get("kind")
    if kind not in DOCUMENT_KINDS:
        raise DocumentError([f"kind: expected one of {', '.join(DOCUMENT_KINDS)}, got {kind!r}"])
    ctx = _Ctx(strict)
    if kind == "algebra":
        obj = doc_to_algebra(doc, ctx)
    elif kind == "pre-algebra":
        obj = doc_to_pre(doc, ctx)
    elif kind == "map":
        obj = doc_to_map(doc, ctx)
    elif kind == "bimodule":
        if base_dir is None:
            raise DocumentError(["base: bimodule documents need a base directory to resolve"])
        obj = doc_to_bimodule(doc, ctx, base_dir)
    else:
        obj = doc
    return doc, obj, ctx.warnings


def load(path: str, strict: bool = False):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise DocumentError([f"{path}: {e.strerror or e}"])
    try:
        return parse_text(text, strict=strict, base_dir=os.path.dirname(path) or ".")
    except DocumentError as e:
        raise DocumentError([f"{path}: {m}" for m in e.errors])


def save(doc: dict, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(canonical_dumps(doc))


def object_to_doc(obj, name=None, metadata=None, base_path=None):
    if isinstance(obj, HomAlgebra):
        return algebra_to_doc(obj, name, metadata)
    if isinstance(obj, HomPreAlgebra):
        return pre_to_doc(obj, name, metadata)
    if isinstance(obj, EvenMap):
        return map_to_doc(obj, name, metadata)
    if isinstance(obj, (AltBimodule, PreBimodule)):
        if base_path is None:
            raise ValidationError(["bimodule documents need a base path"])
        return bimodule_to_doc(obj, base_path, name, metadata)
    raise ValidationError([f"cannot serialize {obj!r}"])
