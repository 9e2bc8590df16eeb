import pytest
from hypothesis import given, settings, strategies as st

from knotnu.alexander import alexander_polynomial
from knotnu.diagram import DiagramError, canonical_hash
from knotnu.jones import jones_polynomial
from knotnu.knots import knot_by_name
from knotnu.lee.engine import nu
from knotnu.satellite import (
    ClaspSign,
    DoubleSpec,
    double_relation_witness,
    self_test,
    twist_crossing_change,
    twisted_double,
)

companions = st.sampled_from(["unknot", "T2,3", "mT2,3", "4_1"])


def test_self_test():
    self_test()


def test_unknot_doubles_are_twist_knots():
    u = knot_by_name("unknot")
    assert jones_polynomial(twisted_double(u, 0, "+")) == 1
    assert jones_polynomial(twisted_double(u, -1, "+")) == jones_polynomial(knot_by_name("T2,3"))
    assert jones_polynomial(twisted_double(u, 1, "+")) == jones_polynomial(knot_by_name("4_1"))
    assert jones_polynomial(twisted_double(u, 1, "-")) == jones_polynomial(knot_by_name("-T2,3"))


def test_crossing_count():
    k = knot_by_name("T2,3")
    for t in range(-1, 8):
        assert len(twisted_double(k, t)) == 4 * 3 + 2 * abs(t - 3) + 2


@settings(max_examples=20)
@given(companions, st.integers(-2, 2), st.sampled_from("+-"))
def test_alexander_depends_only_on_t_and_clasp(name, t, clasp):
    # the double of any knot has the Alexander polynomial of the twist knot
    d = twisted_double(knot_by_name(name), t, clasp)
    u = twisted_double(knot_by_name("unknot"), t, clasp)
    assert alexander_polynomial(d) == alexander_polynomial(u)


@settings(max_examples=12)
@given(companions, st.integers(-2, 2))
def test_relation_between_doubles(name, t):
    left, right = double_relation_witness(knot_by_name(name), t)
    if max(len(left), len(right)) <= 24:
        assert jones_polynomial(left) == jones_polynomial(right)


@settings(max_examples=12)
@given(companions, st.integers(-3, 3))
def test_twist_crossing_change_witness(name, t):
    k = knot_by_name(name)
    w = k.writhe()
    if t - w == 0 or t + 1 - w == 0:
        with pytest.raises(DiagramError):
            twist_crossing_change(k, t)
        return
    ch = twist_crossing_change(k, t)
    # going from t to t+1 is always a positive-to-negative change
    sign = ch.source.crossings[ch.index].sign
    assert sign == (1 if ch.source is ch.lower else -1)
    if len(ch.changed) <= 24:
        assert jones_polynomial(ch.changed) == jones_polynomial(ch.target)


def test_double_nu_values():
    k = knot_by_name("T2,3")
    assert nu(twisted_double(k, 1, "+")) == 1
    assert nu(twisted_double(k, 2, "+")) == 1
    assert nu(twisted_double(k, 3, "+")) == 0
    assert nu(twisted_double(k, 1, "-")) == 0


def test_clasp_parse():
    assert ClaspSign.parse("+") is ClaspSign.POSITIVE
    assert ClaspSign.parse(-1).symbol == "-"
    with pytest.raises(ValueError):
        ClaspSign.parse("x")
    spec = DoubleSpec(knot_by_name("unknot"), 0, "-")
    assert spec.clasp is ClaspSign.NEGATIVE


def test_doubles_are_distinct_diagrams():
    k = knot_by_name("T2,3")
    hashes = {canonical_hash(twisted_double(k, t)) for t in range(-1, 3)}
    assert len(hashes) == 4
