import pytest
from hypothesis import given, settings, strategies as st

from knotnu.jones import jones_polynomial
from knotnu.knots import knot_by_name
from knotnu.tb import (
    BUILTIN_FRONTS,
    EXACT_TB,
    FrontError,
    check_tb_duality,
    enumerate_fronts,
    parse_front,
    tb_lower_bound,
    tb_of_front,
    tb_value,
)


@pytest.mark.parametrize("name", sorted(BUILTIN_FRONTS))
def test_builtin_fronts_are_their_knots(name):
    for f in BUILTIN_FRONTS[name]:
        assert jones_polynomial(f.diagram()) == jones_polynomial(knot_by_name(name))
        assert tb_of_front(f) <= EXACT_TB[name]


def test_front_values():
    assert tb_of_front(BUILTIN_FRONTS["unknot"][0]) == -1
    assert tb_of_front(BUILTIN_FRONTS["T2,3"][0]) == 1
    assert tb_of_front(BUILTIN_FRONTS["-T2,3"][0]) == -6


def test_aliases():
    assert tb_value("3_1") == tb_value("trefoil") == 1
    assert tb_lower_bound("figure8").exact
    assert tb_value("-T2_3") == -6


@pytest.mark.parametrize("name", sorted(EXACT_TB))
def test_duality(name):
    r = check_tb_duality(name)
    assert r.exact and r.holds


def test_parse_errors():
    with pytest.raises(FrontError):
        parse_front("LCUSP 0 1\n")
    with pytest.raises(FrontError):
        parse_front("LCUSP 0 2\nRCUSP 0 1\n")
    with pytest.raises(FrontError):
        parse_front("X 0 1\n")
    with pytest.raises(FrontError):
        parse_front("CUSP 0 1\n")
    with pytest.raises(FrontError, match="single closed component"):
        parse_front("LCUSP 0 1\nLCUSP 2 3\nRCUSP 2 3\nRCUSP 0 1\n").diagram()


def test_roundtrip_text():
    f = BUILTIN_FRONTS["T2,3"][0]
    assert parse_front(f.to_text()).events == f.events


def test_small_fronts_are_unknots_below_the_bound():
    seen = 0
    for f in enumerate_fronts(1, 2, 4):
        seen += 1
        assert jones_polynomial(f.diagram()) == 1
        assert tb_of_front(f) <= -1
    assert seen > 10


@settings(max_examples=30)
@given(st.integers(0, 3))
def test_stabilisation_lowers_tb(n):
    # each zig-zag adds a cusp pair and no crossing, so tb drops by one
    base = BUILTIN_FRONTS["unknot"][0]
    text = "LCUSP 0 1\n" + "LCUSP 1 2\nRCUSP 0 1\n" * n + "RCUSP 0 1\n"
    f = parse_front(text)
    assert jones_polynomial(f.diagram()) == 1
    assert tb_of_front(f) == tb_of_front(base) - n
