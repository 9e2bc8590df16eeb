import random

from hypothesis import given, settings, strategies as st

from knotnu.jones import jones_polynomial
from knotnu.knots import knot_by_name
from knotnu.portgraph import DiagramBuilder, PortGraph, reidemeister_fuzz

names = st.sampled_from(["unknot", "T2,3", "4_1", "mT2,3", "T2,5"])


@given(names)
def test_port_graph_roundtrip(name):
    d = knot_by_name(name)
    pg = PortGraph.from_diagram(d)
    assert pg.is_planar()
    assert pg.to_diagram().signs() == d.signs()
    assert jones_polynomial(pg.to_diagram()) == jones_polynomial(d)


@settings(max_examples=60)
@given(names, st.integers(0, 2**32 - 1), st.integers(1, 15))
def test_fuzz_preserves_jones(name, seed, moves):
    d = knot_by_name(name)
    out = reidemeister_fuzz(d, moves, random.Random(seed), max_crossings=10)
    assert len(out) <= 10
    assert jones_polynomial(out) == jones_polynomial(d)


def test_fuzz_changes_the_diagram():
    d = knot_by_name("T2,3")
    rng = random.Random(1)
    sizes = {len(reidemeister_fuzz(d, 8, rng)) for _ in range(30)}
    assert len(sizes) > 2


def test_builder_single_crossing_kink():
    b = DiagramBuilder()
    p = b.crossing(0)
    b.connect(p[0], p[1])
    b.connect(p[2], p[3])
    d = b.diagram("kink")
    assert len(d) == 1
    assert jones_polynomial(d) == jones_polynomial(knot_by_name("unknot"))
