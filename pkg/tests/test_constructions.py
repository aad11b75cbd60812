from fractions import Fraction

import pytest

from superalt import (
    DERIVED_N_CAP,
    EvenMap,
    HypothesisError,
    Vector,
    ValidationError,
    alt_of,
    averaging_product,
    centroid_twist,
    check_pre_law,
    check_product_law,
    derived_n,
    grassmann1,
    integration,
    matrix_algebra,
    octonions,
    perturb_product,
    plus_jordan,
    rb_split,
    reduce_instance,
    reduce_map,
    scale,
    tensor_alt,
    tensor_map,
    tensor_pairs,
    tensor_space,
    transpose,
    truncpoly,
    yau_twist,
    zero,
)


def test_rb_split_halves_recombine(p3, rb3, pre3):
    summed = alt_of(pre3)
    for i in p3.space.indices():
        for j in p3.space.indices():
            ei, ej = Vector.basis(p3.space, i), Vector.basis(p3.space, j)
            both = pre3.prec.pair_of_basis(i, j) + pre3.succ.pair_of_basis(i, j)
            assert both == summed.mu.pair_of_basis(i, j)
            # halves are the base product fed through R on one side
            assert pre3.prec.pair_of_basis(i, j) == p3.mu.apply(ei, rb3.apply(ej))
            assert pre3.succ.pair_of_basis(i, j) == p3.mu.apply(rb3.apply(ei), ej)


def test_rb_split_refuses_non_alternative_base(rb3):
    broken = perturb_product(truncpoly(3), (1, 1, 0), Fraction(1))
    with pytest.raises(HypothesisError) as ei:
        rb_split(broken, rb3)
    assert ei.value.report.law == "hom-alternative"


def test_rb_split_refuses_non_rb_map(p3):
    with pytest.raises(HypothesisError) as ei:
        rb_split(p3, EvenMap.identity(p3.space))
    assert ei.value.report.law == "rota-baxter"


def test_rb_split_output_is_prealternative(pre3, pre6):
    assert check_pre_law(pre3, "hom-prealternative").passed
    assert check_pre_law(pre6, "hom-prealternative").passed


def test_transpose_is_an_involution(pre3):
    assert transpose(transpose(pre3)).prec == pre3.prec
    assert transpose(transpose(pre3)).succ == pre3.succ


def test_transpose_stays_prealternative(pre3, pre6):
    for p in (pre3, pre6):
        assert check_pre_law(transpose(p), "hom-prealternative").passed


def test_transpose_of_sum_is_the_signed_opposite(pre3, pre6):
    for p in (pre3, pre6):
        assert alt_of(transpose(p)).mu == alt_of(p).mu.flip_signed()


def test_plus_jordan_symmetrizes(oct):
    pj = plus_jordan(oct)
    assert check_product_law(pj, "super-commutative").passed
    assert check_product_law(pj, "hom-jordan").passed


def test_tensor_layout_even_block_first():
    a, b = grassmann1().space, truncpoly(3).space
    s = tensor_space(a, b)
    assert s.dims == (3, 3)
    pairs = tensor_pairs(a, b)
    assert len(pairs) == 6
    # even pairs come first, each block in lexicographic order
    assert pairs[:3] == [(0, 0), (0, 1), (0, 2)]
    assert pairs[3:] == [(1, 0), (1, 1), (1, 2)]


def test_tensor_map_acts_blockwise():
    a, b = grassmann1().space, truncpoly(3).space
    f = EvenMap.diagonal(a, (2, 3))
    g = EvenMap.diagonal(b, (1, 5, 7))
    t = tensor_map(f, g)
    diag = [t.entries[i][i] for i in range(6)]
    assert diag == [2, 10, 14, 3, 15, 21]


def test_tensor_preserves_alternativity(oct):
    big = tensor_alt(grassmann1(), oct)
    assert big.space.dims == (8, 8)
    rep = check_product_law(big, "hom-alternative")
    assert rep.passed and rep.checked == 4096


def test_tensor_refuses_bad_left_factor(oct):
    with pytest.raises(HypothesisError):
        tensor_alt(matrix_algebra(2), oct)  # not supercommutative


def test_tensor_refuses_bad_right_factor():
    broken = perturb_product(truncpoly(3), (1, 1, 0), Fraction(1))
    with pytest.raises(HypothesisError):
        tensor_alt(grassmann1(), broken)


def test_yau_twist_by_found_endomorphisms_mod_3():
    from superalt import search_operators

    pre = rb_split(reduce_instance(truncpoly(3), 3), reduce_map(integration(3), 3))
    res = search_operators(pre, "endomorphism")
    assert len(res.found) == 27 and res.exhausted
    nonzero = 0
    for f in res.found:
        tw = yau_twist(pre, f)
        nonzero += bool(tw.prec.sparse_entries() or tw.succ.sparse_entries())
        assert check_pre_law(tw, "hom-prealternative").passed
    assert nonzero == 18


def test_yau_twist_refuses_non_morphisms(pre3):
    bad = EvenMap.diagonal(pre3.space, (1, 1, 2))
    with pytest.raises(HypothesisError) as ei:
        yau_twist(pre3, bad)
    assert ei.value.report.law == "morphism"


def test_derived_structures_remain_prealternative(pre3):
    for n in (1, 2, 3):
        d = derived_n(pre3, n)
        assert check_pre_law(d, "hom-prealternative").passed
        assert d.alpha == pre3.alpha.power(2 ** n)


def test_derived_rejects_bad_n(pre3):
    for n in (0, -1, DERIVED_N_CAP + 1):
        with pytest.raises(ValidationError):
            derived_n(pre3, n)
    with pytest.raises(ValidationError):
        derived_n(pre3, "2")


def test_scale_keeps_the_laws(pre3, pre6):
    for p, lam in ((pre3, Fraction(5, 7)), (pre6, Fraction(-2))):
        s = scale(p, lam)
        assert check_pre_law(s, "hom-prealternative").passed
        x = s.prec.pair_of_basis(0, 0)
        assert x == p.prec.pair_of_basis(0, 0).scaled(lam)


def test_centroid_twist_with_scalar_multiples(p3):
    lam = EvenMap.diagonal(p3.space, (Fraction(5, 7),) * 3)
    out = centroid_twist(p3, lam)
    assert check_product_law(out, "hom-alternative").passed
    assert out.mu.pair_of_basis(0, 1) == p3.mu.pair_of_basis(0, 1).scaled(Fraction(5, 7))


def test_centroid_twist_refuses_non_centroid(p3, rb3):
    with pytest.raises(HypothesisError) as ei:
        centroid_twist(p3, rb3)
    assert ei.value.report.law == "centroid"


def test_averaging_product_with_scalar_multiples(p3):
    lam = EvenMap.diagonal(p3.space, (Fraction(2),) * 3)
    out = averaging_product(p3, lam)
    assert check_product_law(out, "hom-alternative").passed


def test_averaging_refuses_non_averaging(p3, rb3):
    with pytest.raises(HypothesisError) as ei:
        averaging_product(p3, rb3)
    assert ei.value.report.law in ("averaging-left", "averaging-right", "averaging")


def test_zero_instance_passes_everything():
    z = zero(2, 1)
    for law in ("hom-associative", "hom-alternative", "hom-jordan", "super-commutative"):
        assert check_product_law(z, law).passed


def test_alt_of_names_track_provenance(pre3):
    assert alt_of(pre3).name == f"alt({pre3.name})"
    assert transpose(pre3).name == f"transpose({pre3.name})"
