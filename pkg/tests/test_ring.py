from hypothesis import given, strategies as st

from zlkb.ring import (LaurentQT, LaurentXY, identity, inverse, is_generalized_permutation, matmul,
                       parse_laurent, qt_to_xy, xy_to_qt)

monomials = st.tuples(st.integers(-4, 4), st.integers(-4, 4), st.integers(-3, 3))
polys_xy = st.lists(monomials, max_size=4).map(
    lambda ms: sum((LaurentXY.monomial(a, b, c) for a, b, c in ms), LaurentXY.zero()))
polys_qt = st.lists(monomials, max_size=4).map(
    lambda ms: sum((LaurentQT.monomial(a, b, c) for a, b, c in ms), LaurentQT.zero()))


@given(polys_xy, polys_xy, polys_xy)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == LaurentXY.zero()


@given(polys_xy)
def test_substitution_round_trip(p):
    assert qt_to_xy(xy_to_qt(p)) == p


@given(polys_qt, polys_qt)
def test_substitution_is_multiplicative(a, b):
    assert qt_to_xy(a * b) == qt_to_xy(a) * qt_to_xy(b)


def test_substitution_examples():
    x, y = LaurentXY.gens()
    q, t = LaurentQT.gens()
    assert xy_to_qt(x) == t * q ** -1
    assert xy_to_qt(y) == -(t ** -1)
    assert xy_to_qt(-x * x * y) == t * q ** -2


def test_units():
    x, y = LaurentXY.gens()
    assert (-x ** 3 * y ** -2).is_unit()
    assert not (1 - x).is_unit()
    assert (x ** 2 * y).inverse() * (x ** 2 * y) == LaurentXY.one()


def test_parse_round_trip():
    for text in ["1", "-x^2*y + 3", "x^-1*y^2 - 2*x"]:
        p = parse_laurent(text, LaurentXY)
        assert parse_laurent(str(p), LaurentXY) == p


def test_matrix_inverse_over_laurent_ring():
    x, y = LaurentXY.gens()
    m = [[x, 1 - x], [LaurentXY.zero(), LaurentXY.one()]]
    inv = inverse(m)
    assert matmul(m, inv) == identity(2, LaurentXY)
    assert inv[0][0] == x ** -1


def test_non_laurent_inverse_rejected():
    x, _ = LaurentXY.gens()
    import pytest
    with pytest.raises(ValueError):
        inverse([[1 + x]])


def test_generalized_permutation():
    q, t = LaurentQT.gens()
    z = LaurentQT.zero()
    assert is_generalized_permutation([[z, t * q], [-q, z]])
    assert not is_generalized_permutation([[q, q], [z, q]])
    assert not is_generalized_permutation([[1 + q, z], [z, q]])
