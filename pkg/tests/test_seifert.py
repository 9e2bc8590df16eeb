from pathlib import Path

import pytest
from hypothesis import assume, given, settings, strategies as st

from knotnu.alexander import alexander_polynomial
from knotnu.jones import jones_polynomial
from knotnu.knots import knot_by_name
from knotnu.satellite import twisted_double
from knotnu.seifert import (
    FIGURE_EIGHT_MATRIX,
    TREFOIL_MATRIX,
    Band,
    SeifertError,
    SeifertMatrix,
    alexander,
    band_trade_sequence,
    boundary_crossings,
    boundary_diagram,
    double_presentation,
    insert_trefoil,
    parse_bands,
    realize_matrix,
    seifert_matrix,
    signature,
)

DATA = Path(__file__).parent / "data"


def test_parse_figure8_file():
    bp = parse_bands((DATA / "figure8.bands").read_text())
    assert bp.genus == 1
    assert seifert_matrix(bp) == FIGURE_EIGHT_MATRIX
    assert parse_bands(bp.to_text()) == bp


def test_band_names_with_connected_sums():
    bp = parse_bands("B0 framing=0 knot=T2,3#T2,3  # comment\nB1 framing=-1 knot=unknot\n")
    assert len(bp.bands[0].knot) == 6


def test_parse_errors():
    with pytest.raises(SeifertError):
        parse_bands("B0 framing=1 knot=unknot\n")
    with pytest.raises(SeifertError):
        SeifertMatrix(((1, 0), (0, 1)))
    with pytest.raises(SeifertError):
        SeifertMatrix(((1, 1, 0),))


def test_signatures_and_alexander():
    assert signature(TREFOIL_MATRIX) == -2
    assert signature(FIGURE_EIGHT_MATRIX) == 0
    assert alexander(TREFOIL_MATRIX) == alexander_polynomial(knot_by_name("T2,3"))
    assert alexander(FIGURE_EIGHT_MATRIX) == alexander_polynomial(knot_by_name("4_1"))


@pytest.mark.parametrize("matrix,knot", [(TREFOIL_MATRIX, "T2,3"), (FIGURE_EIGHT_MATRIX, "4_1")])
def test_rendered_boundary_is_the_knot(matrix, knot):
    d = boundary_diagram(realize_matrix(matrix))
    assert jones_polynomial(d) == jones_polynomial(knot_by_name(knot))


def genus_one(draw):
    a, d = draw(st.integers(-3, 3)), draw(st.integers(-3, 3))
    b = draw(st.integers(-2, 2))
    c = b - 1 if draw(st.booleans()) else b + 1
    return ((a, b), (c, d))


@st.composite
def seifert_matrices(draw):
    if draw(st.booleans()):
        return SeifertMatrix(genus_one(draw))
    m1, m2 = genus_one(draw), genus_one(draw)
    x = draw(st.integers(-1, 1))
    rows = [[m1[0][0], m1[0][1], x, 0], [m1[1][0], m1[1][1], 0, 0],
            [x, 0, m2[0][0], m2[0][1]], [0, 0, m2[1][0], m2[1][1]]]
    return SeifertMatrix(tuple(map(tuple, rows)))


@settings(max_examples=30)
@given(seifert_matrices())
def test_realization_reproduces_matrix(a):
    bp = realize_matrix(a)
    assert seifert_matrix(bp) == a


@settings(max_examples=25)
@given(seifert_matrices())
def test_boundary_alexander_matches_matrix(a):
    bp = realize_matrix(a)
    assume(boundary_crossings(bp) <= 40)
    d = boundary_diagram(bp)
    assert len(d) == boundary_crossings(bp)
    assert alexander_polynomial(d) == alexander(a)


@settings(max_examples=20)
@given(st.integers(0, 1), st.sampled_from([1, -1]))
def test_trefoil_insertion_keeps_matrix(i, hand):
    base = realize_matrix(FIGURE_EIGHT_MATRIX)
    mod = insert_trefoil(base, i, hand)
    assert seifert_matrix(mod) == FIGURE_EIGHT_MATRIX
    assert alexander_polynomial(boundary_diagram(mod)) == alexander(FIGURE_EIGHT_MATRIX)


def test_trade_sequence():
    src = parse_bands((DATA / "k_plus.bands").read_text())
    tgt = parse_bands((DATA / "k_minus.bands").read_text())
    seq = band_trade_sequence(src, tgt)
    assert len(seq) == 3
    assert all(seifert_matrix(bp) == FIGURE_EIGHT_MATRIX for bp in seq)
    for a, b in zip(seq, seq[1:]):
        assert sum(not x.same_as(y) for x, y in zip(a.bands, b.bands)) == 1
    with pytest.raises(SeifertError):
        band_trade_sequence(src, realize_matrix(TREFOIL_MATRIX))


@pytest.mark.parametrize("t", [-1, 0, 2])
def test_double_presentation_matches_satellite(t):
    k = knot_by_name("T2,3")
    d = boundary_diagram(double_presentation(k, t))
    assert alexander_polynomial(d) == alexander_polynomial(twisted_double(k, t))
    if len(d) <= 24 and len(twisted_double(k, t)) <= 24:
        assert jones_polynomial(d) == jones_polynomial(twisted_double(k, t))


def test_band_same_as():
    assert Band(1).same_as(Band(1))
    assert not Band(1).same_as(Band(2))
    assert not Band(1, knot_by_name("T2,3")).same_as(Band(1))
