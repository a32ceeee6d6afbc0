import pytest
from hypothesis import given, settings, strategies as st

from pgplane.gf import (FieldError, field_arith, field_create, frobenius,
                        is_square, spec_from_doc, spec_to_doc)


FIELDS = [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2), (2, 3), (3, 3), (7, 1),
          (2, 4), (13, 1)]


def test_gf9_modulus_and_product():
    F = field_create(3, 2)
    assert F.modulus == (1, 0, 1)        # X^2 + 1
    assert F.mul(3, 3) == 2              # X * X = -1


def test_gf27_modulus():
    assert field_create(3, 3).modulus == (1, 2, 0, 1)   # X^3 + 2X + 1


def test_create_rejects_bad_parameters():
    with pytest.raises(FieldError):
        field_create(4, 1)
    with pytest.raises(FieldError):
        field_create(2, 5)
    with pytest.raises(FieldError):
        field_create(257, 2)             # 257^2 > 2^16


def test_create_is_cached_identity():
    assert field_create(3, 2) is field_create(3, 2)


@given(st.sampled_from(FIELDS), st.data())
@settings(max_examples=200, deadline=None)
def test_field_axioms(fh, data):
    F = field_create(*fh)
    elt = st.integers(0, F.q - 1)
    a, b, c = data.draw(elt), data.draw(elt), data.draw(elt)
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.mul(a, 1) == a
    if a:
        assert F.mul(a, F.inv(a)) == 1
        assert F.div(b, a) == F.mul(b, F.inv(a))


@given(st.sampled_from(FIELDS), st.data())
@settings(max_examples=100, deadline=None)
def test_pow_matches_repeated_product(fh, data):
    F = field_create(*fh)
    a = data.draw(st.integers(0, F.q - 1))
    e = data.draw(st.integers(0, 12))
    expected = 1
    for _ in range(e):
        expected = F.mul(expected, a)
    assert F.pow(a, e) == expected


def test_inverse_of_zero_fails():
    F = field_create(5, 1)
    with pytest.raises(FieldError):
        F.inv(0)
    with pytest.raises(FieldError):
        F.div(1, 0)


@given(st.sampled_from(FIELDS), st.data())
@settings(max_examples=100, deadline=None)
def test_frobenius_is_a_field_automorphism(fh, data):
    F = field_create(*fh)
    a = data.draw(st.integers(0, F.q - 1))
    b = data.draw(st.integers(0, F.q - 1))
    k = data.draw(st.integers(0, F.h))
    assert frobenius(F, F.add(a, b), k) == F.add(frobenius(F, a, k),
                                                 frobenius(F, b, k))
    assert frobenius(F, F.mul(a, b), k) == F.mul(frobenius(F, a, k),
                                                 frobenius(F, b, k))
    assert frobenius(F, a, F.h) == a


def test_field_arith_dispatch():
    F = field_create(3, 2)
    assert field_arith(F, 'mul', 3, 3) == 2
    assert field_arith(F, 'add', 1, 2) == 0
    assert field_arith(F, 'neg', 1) == 2
    assert field_arith(F, 'inv', 1) == 1
    assert field_arith(F, 'pow', 3, 2) == 2
    with pytest.raises(FieldError):
        field_arith(F, 'xor', 1, 2)
    with pytest.raises(FieldError):
        field_arith(F, 'add', 1, 9)
    with pytest.raises(FieldError):
        field_arith(F, 'mul', -1, 2)


@pytest.mark.parametrize('p,h', [(3, 1), (5, 1), (3, 2), (7, 1), (11, 1)])
def test_square_count_odd_order(p, h):
    F = field_create(p, h)
    squares = [a for a in range(F.q) if is_square(F, a)]
    assert len(squares) == (F.q + 1) // 2       # zero plus half the units


@pytest.mark.parametrize('p,h', [(2, 1), (2, 2), (2, 3)])
def test_every_element_square_even_order(p, h):
    F = field_create(p, h)
    assert all(is_square(F, a) for a in range(F.q))


def test_document_round_trip():
    F = field_create(3, 2)
    doc = spec_to_doc(F)
    assert doc == {'p': 3, 'h': 2, 'modulus': [1, 0, 1]}
    assert spec_from_doc(doc) is F
    with pytest.raises(FieldError):
        spec_from_doc({'p': 3, 'h': 2, 'modulus': [2, 0, 1]})


def test_large_field_without_tables():
    F = field_create(13, 2)                     # q = 169 < table limit
    G = field_create(59, 2)                     # q = 3481 > table limit
    for F_ in (F, G):
        a = F_.q - 2
        assert F_.mul(a, F_.inv(a)) == 1
        assert F_.add(a, F_.neg(a)) == 0
