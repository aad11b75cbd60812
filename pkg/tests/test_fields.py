from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from superalt import QQ, FieldError, FpElement, PrimeField


def test_prime_field_rejects_characteristic_two():
    with pytest.raises(FieldError, match="characteristic 2"):
        PrimeField(2)


@pytest.mark.parametrize("n", [0, 1, 4, 9, 15, 21, 1001])
def test_prime_field_rejects_composites(n):
    with pytest.raises(FieldError):
        PrimeField(n)


def test_prime_field_accepts_odd_primes():
    for p in (3, 5, 7, 11, 97):
        assert PrimeField(p).char == p


def test_fp_normalization():
    F = PrimeField(5)
    assert F.scalar(7) == 2
    assert F.scalar(-1) == 4
    assert F.scalar(0) == 0


@given(st.integers(), st.integers(), st.sampled_from([3, 5, 7, 13]))
def test_fp_ring_homomorphism_from_integers(a, b, p):
    F = PrimeField(p)
    assert F.scalar(a) + F.scalar(b) == F.scalar(a + b)
    assert F.scalar(a) * F.scalar(b) == F.scalar(a * b)
    assert F.scalar(a) - F.scalar(b) == F.scalar(a - b)
    assert -F.scalar(a) == F.scalar(-a)


@given(st.integers(min_value=1, max_value=12))
def test_fp_division_inverts_multiplication(n):
    F = PrimeField(13)
    x = F.scalar(n)
    assert (F.one / x) * x == F.one


def test_fp_division_by_zero():
    F = PrimeField(3)
    with pytest.raises(ZeroDivisionError):
        F.one / F.zero


def test_fp_cross_characteristic_is_rejected():
    a = PrimeField(3).one
    b = PrimeField(5).one
    with pytest.raises(FieldError, match="mixed prime fields"):
        a + b


def test_fp_and_rational_do_not_mix():
    with pytest.raises(TypeError):
        Fraction(1, 2) + PrimeField(3).one


def test_fp_int_interop():
    x = PrimeField(7).scalar(3)
    assert x + 5 == 1
    assert 2 * x == 6
    assert bool(x) and not bool(x - 3)


def test_rational_coerce_rejects_bool_and_junk():
    with pytest.raises(FieldError):
        QQ.coerce(True)
    with pytest.raises(FieldError):
        QQ.coerce("1/2")
    assert QQ.coerce(3) == Fraction(3)


def test_rational_json_is_lowest_terms_string():
    assert QQ.to_json(Fraction(2, 4)) == "1/2"
    v, warn = QQ.from_json("1/2", strict=True)
    assert v == Fraction(1, 2) and warn is None


def test_rational_json_rejects_non_canonical_in_strict_mode():
    with pytest.raises(FieldError):
        QQ.from_json("2/4", strict=True)
    v, warn = QQ.from_json("2/4", strict=False)
    assert v == Fraction(1, 2) and warn


def test_fp_json_range():
    F = PrimeField(5)
    assert F.to_json(F.scalar(3)) == 3
    with pytest.raises(FieldError):
        F.from_json(7, strict=True)
    v, warn = F.from_json(7, strict=False)
    assert v == F.scalar(2) and warn


def test_fp_elements_enumeration():
    F = PrimeField(3)
    assert [e.val for e in F.elements()] == [0, 1, 2]


def test_fp_hash_matches_equal_ints():
    x = FpElement(2, 5)
    assert hash(x) == hash(2)
    assert len({x, FpElement(7, 5)}) == 1
