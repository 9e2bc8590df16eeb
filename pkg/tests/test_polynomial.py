from hypothesis import given, strategies as st

from knotnu.polynomial import LaurentPolynomial as P

polys = st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=5).map(P)


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == P()


@given(polys, polys)
def test_exact_divide_inverts_multiplication(a, b):
    if b.is_zero():
        return
    assert (a * b).exact_divide(b) == a


@given(polys)
def test_invert_variable_is_involution(a):
    assert a.invert_variable().invert_variable() == a


@given(polys, st.integers(-3, 3))
def test_evaluate_is_ring_map(a, x):
    if x == 0:
        return
    from fractions import Fraction

    x = Fraction(x)
    assert (a * a).evaluate(x) == a.evaluate(x) ** 2


def test_zero_coefficients_are_dropped():
    assert P({3: 0, 1: 2}) == P({1: 2})
    assert P({0: 1}) == 1
    assert P().is_zero()


def test_to_string():
    assert P({-1: 1, 0: -3, 1: 1}).to_string("t") == "t^-1 - 3 + t"
