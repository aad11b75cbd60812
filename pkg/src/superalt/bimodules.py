"""Bimodules over single-product and pre-structure instances.

An alt-bimodule over (A, mu, alpha) is (V, lsucc, rprec, beta): a left
action x succ v, a right action v prec x, and an even self-map beta of V.
A pre-bimodule over (A, prec, succ, alpha) carries four actions
(lprec, rprec, lsucc, rsucc), one per product and side.

The four alt axioms and ten pre axioms are checked elementwise on basis
triples (x, y, v).  Two readings of the pre axioms are ambiguous in their
usual presentation; both are parameterized here and the defaults are the
readings validated by the regular representation (calibrate_pre_bimodule
re-derives them).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

from .core import EvenBilinear, EvenMap, ValidationError
from .laws import (
    HomAlgebra,
    HomPreAlgebra,
    HypothesisError,
    LawReport,
    _group_identities,
    _run_groups,
    check_morphism,
    check_product_law,
    check_pre_law,
    signed,
)
from .constructions import alt_of, rb_split
from .operators import OperatorSpec, check_operator


class AltBimodule:
    __slots__ = ("base", "beta", "lsucc", "rprec", "name")

    def __init__(
        self,
        base: HomAlgebra,
        beta: EvenMap,
        lsucc: EvenBilinear,
        rprec: EvenBilinear,
        name: str = "",
    ):
        errors = []
        v = beta.domain
        if beta.codomain != v:
            errors.append("beta must be an even self-map of the module")
        if (lsucc.left, lsucc.right, lsucc.out) != (base.space, v, v):
            errors.append("left action must map A x V -> V")
        if (rprec.left, rprec.right, rprec.out) != (v, base.space, v):
            errors.append("right action must map V x A -> V")
        if errors:
            raise ValidationError(errors)
        self.base = base
        self.beta = beta
        self.lsucc = lsucc
        self.rprec = rprec
        self.name = name

    @property
    def module(self):
        return self.beta.domain

    def __repr__(self):
        return f"AltBimodule({self.name or self.module.dims})"


class PreBimodule:
    __slots__ = ("base", "beta", "lprec", "rprec", "lsucc", "rsucc", "name")

    def __init__(
        self,
        base: HomPreAlgebra,
        beta: EvenMap,
        lprec: EvenBilinear,
        rprec: EvenBilinear,
        lsucc: EvenBilinear,
        rsucc: EvenBilinear,
        name: str = "",
    ):
        errors = []
        v = beta.domain
        if beta.codomain != v:
            errors.append("beta must be an even self-map of the module")
        for label, act in (("lprec", lprec), ("lsucc", lsucc)):
            if (act.left, act.right, act.out) != (base.space, v, v):
                errors.append(f"{label} action must map A x V -> V")
        for label, act in (("rprec", rprec), ("rsucc", rsucc)):
            if (act.left, act.right, act.out) != (v, base.space, v):
                errors.append(f"{label} action must map V x A -> V")
        if errors:
            raise ValidationError(errors)
        self.base = base
        self.beta = beta
        self.lprec = lprec
        self.rprec = rprec
        self.lsucc = lsucc
        self.rsucc = rsucc
        self.name = name

    @property
    def module(self):
        return self.beta.domain

    def __repr__(self):
        return f"PreBimodule({self.name or self.module.dims})"


@dataclass(frozen=True)
class PbmVariant:
    """Ambiguity switches for two pre-bimodule axioms.

    pbm2_sign: sign of the beta(v) succ (x succ y) term (+1 calibrated, -1
    as usually printed).  pbm4_inner: the product inside beta(v) succ (x ? y)
    ("prec" calibrated, "circ" as usually printed)."""

    pbm2_sign: int = 1
    pbm4_inner: str = "prec"

    def __post_init__(self):
        if self.pbm2_sign not in (1, -1) or self.pbm4_inner not in ("prec", "circ"):
            raise ValidationError([f"bad pre-bimodule variant {self!r}"])


CALIBRATED_PBM_VARIANT = PbmVariant(pbm2_sign=1, pbm4_inner="prec")


def _abm_identities(m: AltBimodule):
    mu, al = m.base.mu.apply, m.base.alpha.apply
    lv, vr, be = m.lsucc.apply, m.rprec.apply, m.beta.apply

    def abm1(pts):
        (x, px), (y, _), (v, pv) = pts
        return (
            vr(vr(v, x), al(y))
            + signed(vr(lv(x, v), al(y)), px * pv)
            - signed(lv(al(x), vr(v, y)), px * pv)
            - vr(be(v), mu(x, y))
        )

    def abm2(pts):
        (x, px), (y, _), (v, pv) = pts
        return (
            lv(al(y), vr(v, x))
            - vr(lv(y, v), al(x))
            - signed(lv(mu(y, x), be(v)), px * pv)
            + signed(lv(al(y), lv(x, v)), px * pv)
        )

    def abm3(pts):
        (x, px), (y, py), (v, _) = pts
        return (
            lv(mu(x, y), be(v))
            + signed(lv(mu(y, x), be(v)), px * py)
            - lv(al(x), lv(y, v))
            - signed(lv(al(y), lv(x, v)), px * py)
        )

    def abm4(pts):
        (x, px), (y, py), (v, _) = pts
        return (
            vr(be(v), mu(x, y))
            + signed(vr(be(v), mu(y, x)), px * py)
            - vr(vr(v, x), al(y))
            - signed(vr(vr(v, y), al(x)), px * py)
        )

    return [("abm1", 3, abm1), ("abm2", 3, abm2), ("abm3", 3, abm3), ("abm4", 3, abm4)]


def _pbm_identities(m: PreBimodule, variant: PbmVariant):
    apr, asu, aci = m.base.prec.apply, m.base.succ.apply, m.base.circ().apply
    al, be = m.base.alpha.apply, m.beta.apply
    lp, ls = m.lprec.apply, m.lsucc.apply
    rp, rs = m.rprec.apply, m.rsucc.apply

    def lc(x, v):
        return lp(x, v) + ls(x, v)

    def rc(v, x):
        return rp(v, x) + rs(v, x)

    def pbm1(pts):
        (x, px), (y, py), (v, _) = pts
        w = aci(x, y) + signed(aci(y, x), px * py)
        return ls(w, be(v)) - ls(al(x), ls(y, v)) - signed(ls(al(y), ls(x, v)), px * py)

    def pbm2(pts):
        (x, px), (y, _), (v, pv) = pts
        w = lc(x, v) + signed(rc(v, x), px * pv)
        term = signed(rs(be(v), asu(x, y)), px * pv)
        res = rs(w, al(y)) - ls(al(x), rs(v, y))
        return res - term if variant.pbm2_sign == 1 else res + term

    def pbm3(pts):
        (x, px), (y, _), (v, pv) = pts
        return (
            rp(rp(v, x), al(y))
            + signed(rp(ls(x, v), al(y)), px * pv)
            - rp(be(v), aci(x, y))
            - signed(ls(al(x), rp(v, y)), px * pv)
        )

    def pbm4(pts):
        (x, px), (y, _), (v, pv) = pts
        inner = apr(x, y) if variant.pbm4_inner == "prec" else aci(x, y)
        return (
            rp(lp(x, v), al(y))
            + signed(rp(rs(v, x), al(y)), px * pv)
            - lp(al(x), rc(v, y))
            - signed(rs(be(v), inner), px * pv)
        )

    def pbm5(pts):
        (x, px), (y, py), (v, _) = pts
        return (
            lp(apr(y, x), be(v))
            + signed(lp(asu(x, y), be(v)), px * py)
            - lp(al(y), lc(x, v))
            - signed(ls(al(x), lp(y, v)), px * py)
        )

    def pbm6(pts):
        (x, px), (y, _), (v, pv) = pts
        return (
            rp(ls(y, v), al(x))
            + signed(ls(aci(y, x), be(v)), px * pv)
            - ls(al(y), rp(v, x))
            - signed(ls(al(y), ls(x, v)), px * pv)
        )

    def pbm7(pts):
        (x, px), (y, py), (v, _) = pts
        return (
            rp(rs(v, y), al(x))
            + signed(rs(rc(v, x), al(y)), px * py)
            - rs(be(v), apr(y, x))
            - signed(rs(be(v), asu(x, y)), px * py)
        )

    def pbm8(pts):
        (x, px), (y, _), (v, pv) = pts
        return (
            lp(asu(y, x), be(v))
            + signed(rs(lc(y, v), al(x)), px * pv)
            - ls(al(y), lp(x, v))
            - signed(ls(al(y), rs(v, x)), px * pv)
        )

    def pbm9(pts):
        (x, px), (y, py), (v, _) = pts
        return (
            rp(rp(v, x), al(y))
            + signed(rp(rp(v, y), al(x)), px * py)
            - rp(be(v), aci(x, y))
            - signed(rp(be(v), aci(y, x)), px * py)
        )

    def pbm10(pts):
        (x, _), (y, py), (v, pv) = pts
        return (
            rp(lp(x, v), al(y))
            + signed(lp(apr(x, y), be(v)), py * pv)
            - lp(al(x), rc(v, y))
            - signed(lp(al(x), lc(y, v)), py * pv)
        )

    return [
        ("pbm1", 3, pbm1),
        ("pbm2", 3, pbm2),
        ("pbm3", 3, pbm3),
        ("pbm4", 3, pbm4),
        ("pbm5", 3, pbm5),
        ("pbm6", 3, pbm6),
        ("pbm7", 3, pbm7),
        ("pbm8", 3, pbm8),
        ("pbm9", 3, pbm9),
        ("pbm10", 3, pbm10),
    ]


def _alt_scan_worker(m, _law, _variant, group_index, start, stop):
    from .laws import _scan_range

    arity, idfns = _group_identities(_abm_identities(m))[group_index]
    spaces = [m.base.space, m.base.space, m.module]
    return _scan_range(spaces, idfns, start, stop)


def _pre_scan_worker(m, _law, variant, group_index, start, stop):
    from .laws import _scan_range

    arity, idfns = _group_identities(_pbm_identities(m, variant))[group_index]
    spaces = [m.base.space, m.base.space, m.module]
    return _scan_range(spaces, idfns, start, stop)


def check_alt_bimodule(m: AltBimodule, jobs: int = 1) -> LawReport:
    """All four axioms on basis triples (x, y, v).

    Refuses (rather than failing) when the base is not hom-alternative."""
    base_rep = check_product_law(m.base, "hom-alternative")
    if not base_rep.passed:
        raise HypothesisError("check_alt_bimodule", base_rep)
    groups = _group_identities(_abm_identities(m))
    spaces = [m.base.space, m.base.space, m.module]
    return _run_groups(
        "alt-bimodule", groups, lambda _ar: spaces, jobs,
        worker_spec=(_alt_scan_worker, (m, None, None)),
    )


def check_pre_bimodule(
    m: PreBimodule, variant: PbmVariant | None = None, jobs: int = 1
) -> LawReport:
    """All ten axioms on basis triples (x, y, v) under the given (default:
    calibrated) reading of the two ambiguous axioms.

    Refuses when the base is not hom-prealternative."""
    variant = variant or CALIBRATED_PBM_VARIANT
    base_rep = check_pre_law(m.base, "hom-prealternative")
    if not base_rep.passed:
        raise HypothesisError("check_pre_bimodule", base_rep)
    groups = _group_identities(_pbm_identities(m, variant))
    spaces = [m.base.space, m.base.space, m.module]
    extra = {"variant": {"pbm2_sign": variant.pbm2_sign, "pbm4_inner": variant.pbm4_inner}}
    return _run_groups(
        "pre-bimodule", groups, lambda _ar: spaces, jobs, extra,
        worker_spec=(_pre_scan_worker, (m, None, variant)),
    )


def regular_bimodule(instance):
    """The instance acting on itself: V = A, beta = alpha, actions = products."""
    if isinstance(instance, HomAlgebra):
        return AltBimodule(
            instance,
            instance.alpha,
            instance.mu,
            instance.mu,
            name=f"regular({instance.name})",
        )
    if isinstance(instance, HomPreAlgebra):
        return PreBimodule(
            instance,
            instance.alpha,
            lprec=instance.prec,
            rprec=instance.prec,
            lsucc=instance.succ,
            rsucc=instance.succ,
            name=f"regular({instance.name})",
        )
    raise ValidationError([f"not an instance: {instance!r}"])


def project_bimodule(m, direction: str, pre: HomPreAlgebra | None = None):
    """Transport between pre-bimodules and alt-bimodules.

    i:   pre-bimodule (V, lprec, rprec, lsucc, rsucc, beta) over A gives the
         alt-bimodule (V, lsucc, rprec, beta) over alt_of(A).
    ii:  same input gives the alt-bimodule with the combined actions
         (V, lprec+lsucc, rprec+rsucc, beta) over alt_of(A).
    iii: an alt-bimodule (V, L, R, beta) over alt_of(P) embeds as the
         pre-bimodule (V, 0, R, L, 0, beta) over P (pass P via `pre`)."""
    if direction in ("i", "ii"):
        if not isinstance(m, PreBimodule):
            raise ValidationError([f"direction {direction} projects a pre-bimodule"])
        base = alt_of(m.base)
        if direction == "i":
            return AltBimodule(base, m.beta, m.lsucc, m.rprec, name=f"project-i({m.name})")
        return AltBimodule(
            base,
            m.beta,
            m.lprec + m.lsucc,
            m.rprec + m.rsucc,
            name=f"project-ii({m.name})",
        )
    if direction == "iii":
        if not isinstance(m, AltBimodule):
            raise ValidationError(["direction iii embeds an alt-bimodule"])
        if pre is None:
            raise ValidationError(["direction iii needs the pre-structure instance"])
        assoc = alt_of(pre)
        if assoc.mu != m.base.mu or assoc.alpha != m.base.alpha:
            raise ValidationError(
                ["the alt-bimodule base is not the associated instance of the given pre-structure"]
            )
        v, a = m.module, pre.space
        zl = EvenBilinear.zero(a, v, v)
        zr = EvenBilinear.zero(v, a, v)
        return PreBimodule(
            pre,
            m.beta,
            lprec=zl,
            rprec=m.rprec,
            lsucc=m.lsucc,
            rsucc=zr,
            name=f"project-iii({m.name})",
        )
    raise ValidationError([f"unknown projection direction {direction!r}"])


def twist_bimodule(m):
    """Precompose every action with alpha^2 on the algebra argument; beta and
    the base stay.  Requires the base multiplicative."""
    if isinstance(m, AltBimodule):
        mult = check_product_law(m.base, "multiplicative")
        if not mult.passed:
            raise HypothesisError("twist_bimodule", mult)
        a2 = m.base.alpha.power(2)
        return AltBimodule(
            m.base,
            m.beta,
            m.lsucc.pre_compose_left(a2),
            m.rprec.pre_compose_right(a2),
            name=f"twist({m.name})",
        )
    if isinstance(m, PreBimodule):
        mult = check_morphism(m.base.alpha, m.base, m.base, weak=False)
        if not mult.passed:
            raise HypothesisError("twist_bimodule", mult)
        a2 = m.base.alpha.power(2)
        return PreBimodule(
            m.base,
            m.beta,
            lprec=m.lprec.pre_compose_left(a2),
            rprec=m.rprec.pre_compose_right(a2),
            lsucc=m.lsucc.pre_compose_left(a2),
            rsucc=m.rsucc.pre_compose_right(a2),
            name=f"twist({m.name})",
        )
    raise ValidationError([f"not a bimodule: {m!r}"])


def rb_induced_bimodules(m: AltBimodule, r: EvenMap):
    """From a weight-0 Rota-Baxter operator R on the base of a valid
    alt-bimodule: actions v prec R(x) and R(x) succ v give

      - an alt-bimodule over the split-sum instance alt_of(rb_split(A, R)),
      - a pre-bimodule (lprec, rprec, lsucc, rsucc) = (0, vR, Rv, 0) over
        rb_split(A, R)."""
    rep = check_alt_bimodule(m)
    if not rep.passed:
        raise HypothesisError("rb_induced_bimodules", rep)
    a = m.base
    rb_rep = check_operator(
        OperatorSpec("rota-baxter", r, weight=a.space.field.zero), a
    )
    if not rb_rep.passed:
        raise HypothesisError("rb_induced_bimodules", rb_rep)
    split = rb_split(a, r)
    tri_left = m.lsucc.pre_compose_left(r)  # x |> v = R(x) succ v
    tri_right = m.rprec.pre_compose_right(r)  # v <| x = v prec R(x)
    alt = AltBimodule(
        alt_of(split),
        m.beta,
        tri_left,
        tri_right,
        name=f"rb-alt({m.name})",
    )
    v, asp = m.module, a.space
    pre = PreBimodule(
        split,
        m.beta,
        lprec=EvenBilinear.zero(asp, v, v),
        rprec=tri_right,
        lsucc=tri_left,
        rsucc=EvenBilinear.zero(v, asp, v),
        name=f"rb-pre({m.name})",
    )
    return alt, pre


def calibrate_pre_bimodule(instances) -> dict:
    """Check the regular pre-bimodule of each instance under all four
    readings of the ambiguous axioms; report survivors."""
    combos = [
        PbmVariant(s, inner) for s, inner in iproduct((1, -1), ("prec", "circ"))
    ]
    per_variant = {}
    for var in combos:
        key = f"pbm2{'+' if var.pbm2_sign == 1 else '-'}/pbm4-{var.pbm4_inner}"
        verdicts = {}
        for p in instances:
            rep = check_pre_bimodule(regular_bimodule(p), variant=var)
            verdicts[p.name or repr(p)] = rep.passed
        per_variant[key] = verdicts
    survivors = [k for k, v in per_variant.items() if all(v.values())]
    default = CALIBRATED_PBM_VARIANT
    return {
        "per_variant": per_variant,
        "survivors": survivors,
        "default": f"pbm2{'+' if default.pbm2_sign == 1 else '-'}/pbm4-{default.pbm4_inner}",
    }
