"""Operator equation checks and brute-force operator search.

Operator kinds on an algebra (A, mu, alpha), all required to commute with
the twist:

  rota-baxter (weight w):  R(x) R(y) = R(R(x) y + x R(y) + w x y)
  averaging-left:          b(x) b(y) = b(b(x) y)
  averaging-right:         b(x) b(y) = b(x b(y))
  averaging:               both averaging identities
  centroid:                b(x y) = b(x) y = x b(y)
  endomorphism:            b(x y) = b(x) b(y)  (strict: also twist-commuting)

An o-operator T: V -> A over a bimodule (V, L, R, beta) of (A, o, alpha)
satisfies T(u) o T(v) = T(L(T u) v + R(T v) u) and T beta = alpha T.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional

from .core import (
    EvenBilinear,
    EvenMap,
    SuperSpace,
    ValidationError,
    Vector,
    independent_columns,
    nullspace,
    solve_in_span,
)
from .fields import PrimeField
from .laws import HomAlgebra, HomPreAlgebra, HypothesisError, LawReport, check_morphism

if TYPE_CHECKING:  # only for annotations; bimodules imports this module
    from .bimodules import AltBimodule

OPERATOR_KINDS = (
    "rota-baxter",
    "averaging-left",
    "averaging-right",
    "averaging",
    "centroid",
    "endomorphism",
    "o-operator",
)


@dataclass
class OperatorSpec:
    kind: str
    map: EvenMap
    weight: object = None  # scalar, rota-baxter only
    bimodule: object = None  # AltBimodule, o-operator only

    def __post_init__(self):
        if self.kind not in OPERATOR_KINDS:
            raise ValidationError([f"unknown operator kind {self.kind!r}"])
        if (self.weight is not None) != (self.kind == "rota-baxter"):
            raise ValidationError(["weight is given exactly for rota-baxter operators"])
        if (self.bimodule is not None) != (self.kind == "o-operator"):
            raise ValidationError(["bimodule is given exactly for o-operators"])


def _pair_scan(space: SuperSpace, law: str, residual, extra_single=None) -> LawReport:
    """Scan basis pairs with `residual(x, y)`, then basis singletons with
    `extra_single(x)` (used for twist-commuting)."""
    checked = 0
    for i in space.indices():
        x = Vector.basis(space, i)
        for j in space.indices():
            y = Vector.basis(space, j)
            r = residual(x, y)
            checked += 1
            if not r.is_zero():
                return LawReport(
                    law=law,
                    passed=False,
                    checked=checked,
                    witness=(i, j),
                    witness_parities=(space.parity(i), space.parity(j)),
                    identity="equation",
                    residual=r.coords,
                )
    if extra_single is not None:
        for i in space.indices():
            r = extra_single(Vector.basis(space, i))
            checked += 1
            if not r.is_zero():
                return LawReport(
                    law=law,
                    passed=False,
                    checked=checked,
                    witness=(i,),
                    witness_parities=(space.parity(i),),
                    identity="twist-commuting",
                    residual=r.coords,
                )
    return LawReport(law=law, passed=True, checked=checked)


def check_operator(spec: OperatorSpec, a) -> LawReport:
    """Check the operator equations of spec.kind on instance a.

    a is a HomAlgebra for all kinds except that endomorphism also accepts a
    HomPreAlgebra (both products must then be preserved)."""
    m = spec.map
    if spec.kind == "endomorphism":
        if m.domain != a.space or m.codomain != a.space:
            raise ValidationError(["operator must be an even self-map of the instance"])
        rep = check_morphism(m, a, a, weak=False)
        return LawReport(
            law="endomorphism",
            passed=rep.passed,
            checked=rep.checked,
            witness=rep.witness,
            witness_parities=rep.witness_parities,
            identity=rep.identity,
            residual=rep.residual,
        )
    if spec.kind == "o-operator":
        return check_o_operator(m, spec.bimodule)
    if not isinstance(a, HomAlgebra):
        raise ValidationError([f"{spec.kind} operators are checked on a single-product instance"])
    if m.domain != a.space or m.codomain != a.space:
        raise ValidationError(["operator must be an even self-map of the instance"])
    mu, al, R = a.mu.apply, a.alpha.apply, m.apply

    def commutes(x):
        return R(al(x)) - al(R(x))

    if spec.kind == "rota-baxter":
        w = a.space.field.coerce(spec.weight)

        def rb(x, y):
            inner = mu(R(x), y) + mu(x, R(y)) + mu(x, y).scaled(w)
            return mu(R(x), R(y)) - R(inner)

        return _pair_scan(a.space, "rota-baxter", rb, commutes)
    if spec.kind == "averaging-left":
        return _pair_scan(
            a.space,
            "averaging-left",
            lambda x, y: mu(R(x), R(y)) - R(mu(R(x), y)),
            commutes,
        )
    if spec.kind == "averaging-right":
        return _pair_scan(
            a.space,
            "averaging-right",
            lambda x, y: mu(R(x), R(y)) - R(mu(x, R(y))),
            commutes,
        )
    if spec.kind == "averaging":

        def avg(x, y):
            lhs = mu(R(x), R(y))
            r1 = lhs - R(mu(R(x), y))
            if not r1.is_zero():
                return r1
            return lhs - R(mu(x, R(y)))

        return _pair_scan(a.space, "averaging", avg, commutes)
    if spec.kind == "centroid":

        def cen(x, y):
            bxy = R(mu(x, y))
            r1 = bxy - mu(R(x), y)
            if not r1.is_zero():
                return r1
            return bxy - mu(x, R(y))

        return _pair_scan(a.space, "centroid", cen, commutes)
    raise ValidationError([f"unknown operator kind {spec.kind!r}"])


def check_o_operator(t: EvenMap, m: "AltBimodule") -> LawReport:
    """T(u) o T(v) = T(L(T u) v + R(T v) u) on basis pairs of V, plus
    T beta = alpha T."""
    a = m.base
    if t.domain != m.module or t.codomain != a.space:
        raise ValidationError(["o-operator must map the module into the algebra"])
    mu, al = a.mu.apply, a.alpha.apply
    L, R, be, T = m.lsucc.apply, m.rprec.apply, m.beta.apply, t.apply
    V = m.module
    checked = 0
    for i in V.indices():
        u = Vector.basis(V, i)
        for j in V.indices():
            v = Vector.basis(V, j)
            r = mu(T(u), T(v)) - T(L(T(u), v) + R(u, T(v)))
            checked += 1
            if not r.is_zero():
                return LawReport(
                    law="o-operator",
                    passed=False,
                    checked=checked,
                    witness=(i, j),
                    witness_parities=(V.parity(i), V.parity(j)),
                    identity="equation",
                    residual=r.coords,
                )
    for i in V.indices():
        u = Vector.basis(V, i)
        r = T(be(u)) - al(T(u))
        checked += 1
        if not r.is_zero():
            return LawReport(
                law="o-operator",
                passed=False,
                checked=checked,
                witness=(i,),
                witness_parities=(V.parity(i),),
                identity="twist-intertwining",
                residual=r.coords,
            )
    return LawReport(law="o-operator", passed=True, checked=checked)


@dataclass
class OInduced:
    """Result of transporting an o-operator into pre-structures."""

    pre: HomPreAlgebra  # on the module V, twist beta
    image: HomPreAlgebra  # on the image basis T(V) inside A, twist alpha restricted
    image_columns: list  # module basis indices whose T-images form the image basis
    independence: LawReport  # kernel absorbance of the induced products
    morphism: LawReport  # T as a map (V, o, beta) -> (A, mu, alpha)


def o_induced(t: EvenMap, m: "AltBimodule") -> OInduced:
    """Induced pre-structure u prec v = R(T v) u, u succ v = L(T u) v on V,
    and its transport onto the image basis of T inside A.

    Raises if the o-operator check fails, if the transported products cannot
    be expressed over the image basis, or if the image is not closed under
    the restricted twist."""
    rep = check_o_operator(t, m)
    if not rep.passed:
        raise HypothesisError("o_induced", rep)
    a = m.base
    V = m.module
    field = V.field

    # induced products on V
    zero = field.zero
    n = V.dim
    basis_images = [t.image_of_basis(j) for j in range(n)]
    prec_cube = []
    succ_cube = []
    for i in range(n):
        u = Vector.basis(V, i)
        prec_plane = []
        succ_plane = []
        for j in range(n):
            v = Vector.basis(V, j)
            prec_plane.append(m.rprec.apply(u, basis_images[j]).coords)
            succ_plane.append(m.lsucc.apply(basis_images[i], v).coords)
        prec_cube.append(prec_plane)
        succ_cube.append(succ_plane)
    pre = HomPreAlgebra(
        EvenBilinear(V, V, V, prec_cube),
        EvenBilinear(V, V, V, succ_cube),
        m.beta,
        name="o-induced",
    )

    # kernel absorbance: the products descend along T exactly when the
    # kernel is absorbed in the slot the product reads directly
    kernel = nullspace(t)
    T = t.apply
    checked = 0
    independence = LawReport(law="representation-independence", passed=True, checked=0)
    for ki, k in enumerate(kernel):
        for j in range(n):
            v = Vector.basis(V, j)
            r1 = T(pre.prec.apply(k, v))
            r2 = T(pre.succ.apply(v, k))
            checked += 2
            if not r1.is_zero() or not r2.is_zero():
                bad = r1 if not r1.is_zero() else r2
                independence = LawReport(
                    law="representation-independence",
                    passed=False,
                    checked=checked,
                    witness=(ki, j),
                    witness_parities=(k.parity(), V.parity(j)),
                    identity="kernel-absorbance",
                    residual=bad.coords,
                )
                break
        if not independence.passed:
            break
    if independence.passed:
        independence.checked = checked
    else:
        raise HypothesisError("o_induced", independence)

    # image basis: earliest independent T-images; V is even-first, so the
    # selected columns are automatically even-first too
    cols = independent_columns(basis_images)
    img_basis = [basis_images[j] for j in cols]
    n0 = sum(1 for j in cols if V.parity(j) == 0)
    img_space = SuperSpace(field, n0, len(cols) - n0)

    def express(vec: Vector):
        sol = solve_in_span(img_basis, vec)
        if sol is None:
            raise HypothesisError(
                "o_induced",
                LawReport(
                    law="image-closure",
                    passed=False,
                    checked=0,
                    identity="not-in-image",
                    residual=vec.coords,
                ),
            )
        return sol

    r = len(cols)
    img_prec = [[None] * r for _ in range(r)]
    img_succ = [[None] * r for _ in range(r)]
    for ai, ci in enumerate(cols):
        ui = Vector.basis(V, ci)
        for bj, cj in enumerate(cols):
            uj = Vector.basis(V, cj)
            img_prec[ai][bj] = express(T(pre.prec.apply(ui, uj)))
            img_succ[ai][bj] = express(T(pre.succ.apply(ui, uj)))
    alpha_rows = [[zero] * r for _ in range(r)]
    for bj, cj in enumerate(cols):
        col = express(a.alpha.apply(img_basis[bj]))
        for ai in range(r):
            alpha_rows[ai][bj] = col[ai]
    image = HomPreAlgebra(
        EvenBilinear(img_space, img_space, img_space, img_prec),
        EvenBilinear(img_space, img_space, img_space, img_succ),
        EvenMap(img_space, img_space, alpha_rows),
        name="o-induced-image",
    )

    # T intertwines the circle product on V with the product of A, and beta
    # with alpha; verified, not assumed
    circ = pre.circ().apply
    be = m.beta.apply
    mchecked = 0
    morphism = LawReport(law="morphism", passed=True, checked=0)
    for i in range(n):
        u = Vector.basis(V, i)
        for j in range(n):
            v = Vector.basis(V, j)
            r1 = T(circ(u, v)) - a.mu.apply(T(u), T(v))
            mchecked += 1
            if not r1.is_zero():
                morphism = LawReport(
                    law="morphism",
                    passed=False,
                    checked=mchecked,
                    witness=(i, j),
                    witness_parities=(V.parity(i), V.parity(j)),
                    identity="preserves-circ",
                    residual=r1.coords,
                )
                break
        if not morphism.passed:
            break
    if morphism.passed:
        for i in range(n):
            u = Vector.basis(V, i)
            r1 = T(be(u)) - a.alpha.apply(T(u))
            mchecked += 1
            if not r1.is_zero():
                morphism = LawReport(
                    law="morphism",
                    passed=False,
                    checked=mchecked,
                    witness=(i,),
                    witness_parities=(V.parity(i),),
                    identity="intertwines-twist",
                    residual=r1.coords,
                )
                break
    if morphism.passed:
        morphism.checked = mchecked
    return OInduced(
        pre=pre,
        image=image,
        image_columns=list(cols),
        independence=independence,
        morphism=morphism,
    )


@dataclass
class SearchResult:
    kind: str
    found: list  # EvenMap instances, in discovery order
    candidates_checked: int
    exhausted: bool  # False when the budget cut the enumeration short
    space_size: int


def _even_positions(codomain: SuperSpace, domain: SuperSpace) -> list[tuple[int, int]]:
    return [
        (i, j)
        for i in codomain.indices()
        for j in domain.indices()
        if codomain.parity(i) == domain.parity(j)
    ]


def enumerate_even_maps(
    domain: SuperSpace, codomain: Optional[SuperSpace] = None, budget: Optional[int] = None
):
    """All even maps domain -> codomain over F_p in row-major radix-p order.

    The free entries, read row-major, are the digits of a base-p counter
    with the last entry least significant."""
    codomain = codomain or domain
    field = domain.field
    if not isinstance(field, PrimeField):
        raise ValidationError(["exhaustive map enumeration needs a finite scalar field"])
    p = field.p
    positions = _even_positions(codomain, domain)
    npos = len(positions)
    total = p**npos
    limit = total if budget is None else min(budget, total)
    zero = field.zero
    for counter in range(limit):
        rows = [[zero] * domain.dim for _ in range(codomain.dim)]
        rem = counter
        for pos in range(npos - 1, -1, -1):
            digit = rem % p
            rem //= p
            if digit:
                i, j = positions[pos]
                rows[i][j] = field.scalar(digit)
        yield EvenMap(domain, codomain, rows)


def enumerate_signed_permutation_maps(space: SuperSpace):
    """Even maps sending each basis vector to +-(a basis vector of the same
    parity), in lexicographic (even perm, odd perm, sign pattern) order."""
    field = space.field
    if not isinstance(field, PrimeField):
        raise ValidationError(["signed permutation enumeration needs a finite scalar field"])
    n0, n1, n = space.even, space.odd, space.dim
    zero = field.zero
    for pe in itertools.permutations(range(n0)):
        for po in itertools.permutations(range(n0, n)):
            perm = list(pe) + list(po)
            for signs in itertools.product((1, -1), repeat=n):
                rows = [[zero] * n for _ in range(n)]
                for j in range(n):
                    rows[perm[j]][j] = field.scalar(signs[j])
                yield EvenMap(space, space, rows)


def search_operators(
    a,
    kind: str,
    weight=None,
    budget: Optional[int] = None,
    signed_perms: bool = False,
    bimodule=None,
) -> SearchResult:
    """Brute-force search for operators of the given kind over F_p.

    Enumerates candidates deterministically and keeps every map passing
    check_operator.  Rational instances are refused: their operator spaces
    are infinite."""
    field = a.space.field
    if not isinstance(field, PrimeField):
        raise ValidationError(["operator search requires an F_p instance"])
    if kind == "rota-baxter" and weight is None:
        weight = 0
    if kind == "o-operator" and bimodule is None:
        raise ValidationError(["o-operator search needs the bimodule"])
    domain = bimodule.module if kind == "o-operator" else a.space
    if signed_perms:
        if kind == "o-operator":
            raise ValidationError(["signed permutation search needs a self-map kind"])
        gen = enumerate_signed_permutation_maps(a.space)
        import math

        space_size = (
            math.factorial(a.space.even) * math.factorial(a.space.odd) * 2**a.space.dim
        )
    else:
        gen = enumerate_even_maps(domain, a.space, budget=None)
        space_size = field.p ** len(_even_positions(a.space, domain))
    found = []
    checked = 0
    for candidate in gen:
        if budget is not None and checked >= budget:
            return SearchResult(kind, found, checked, False, space_size)
        checked += 1
        if kind == "o-operator":
            rep = check_o_operator(candidate, bimodule)
        else:
            spec = OperatorSpec(
                kind,
                candidate,
                weight=weight if kind == "rota-baxter" else None,
            )
            rep = check_operator(spec, a)
        if rep.passed:
            found.append(candidate)
    return SearchResult(kind, found, checked, True, space_size)
