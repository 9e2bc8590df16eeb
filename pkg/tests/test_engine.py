import random

import pytest
from hypothesis import given, settings, strategies as st

from knotnu.diagram import connected_sum, mirror
from knotnu.knots import knot_by_name
from knotnu.lee.cube import FilteredCube, cube_complex
from knotnu.lee.engine import (
    BudgetExceeded,
    InvariantCache,
    chain_complex,
    euler_matches_jones,
    khovanov_homology,
    nu,
    nu_sign,
    s_invariant,
)
from knotnu.lee.scanning import scan_complex
from knotnu.portgraph import reidemeister_fuzz
from knotnu.satellite import DoubleSpec, twisted_double

small = st.sampled_from(["unknot", "T2,3", "mT2,3", "4_1", "T2,5", "T3,4", "T2,3#4_1"])


def test_trefoil_khovanov_table():
    kh = khovanov_homology(knot_by_name("T2,3"))
    assert kh.rows() == [(0, 1, 1), (0, 3, 1), (2, 5, 1), (3, 9, 1)]


def test_figure_eight_khovanov_table():
    kh = khovanov_homology(knot_by_name("4_1"))
    assert kh.total_rank() == 6
    assert kh.homological_degrees() == [-2, -1, 0, 1, 2]


def test_sign_is_fixed_by_the_trefoil():
    assert nu_sign() == 1
    assert nu(knot_by_name("T2,3"), cache=None) == 1


@pytest.mark.parametrize("name,s", [("unknot", 0), ("T2,3", 2), ("mT2,3", -2), ("4_1", 0),
                                    ("T2,5", 4), ("T3,4", 6), ("T2,7", 6), ("T3,5", 8)])
def test_s_values(name, s):
    rep = s_invariant(knot_by_name(name), cache=None)
    assert rep.s == s and rep.q_max - rep.q_min == 2


@settings(max_examples=15)
@given(small)
def test_backends_agree(name):
    d = knot_by_name(name)
    ref, opt = cube_complex(d), scan_complex(d)
    for cx in (ref, opt):
        cx.cancel_units()
    assert ref.graded_dimensions() == opt.graded_dimensions()
    ref.split_free_part()
    opt.split_free_part()
    assert ref.free_degrees() == opt.free_degrees()
    assert ref.torsion == opt.torsion


@settings(max_examples=25)
@given(small, st.integers(0, 2**32 - 1))
def test_s_invariant_under_reidemeister_moves(name, seed):
    d = knot_by_name(name)
    fuzzed = reidemeister_fuzz(d, 8, random.Random(seed), max_crossings=12)
    assert s_invariant(fuzzed, cache=None).s == s_invariant(d, cache=None).s


@settings(max_examples=10)
@given(small)
def test_differential_squares_to_zero(name):
    d = knot_by_name(name)
    assert chain_complex(d, "reference").d_squared_is_zero()
    assert chain_complex(d, "optimized").d_squared_is_zero()


@given(small)
def test_euler_characteristic_is_jones(name):
    assert euler_matches_jones(knot_by_name(name))


def test_filtered_cube_counts():
    fc = FilteredCube.of(knot_by_name("T2,3"))
    assert fc.n_minus == 0
    assert fc.circles[0] == 2 and fc.circles[-1] == 3
    assert fc.total_generators() == sum(fc.generator_count(v) for v in range(8))


def test_budgets():
    big = twisted_double(DoubleSpec(knot_by_name("T2,3"), 20))
    with pytest.raises(BudgetExceeded):
        s_invariant(big, cache=None)
    with pytest.raises(BudgetExceeded):
        s_invariant(knot_by_name("T2,3#T2,3#T2,7"), backend="reference", cache=None)
    with pytest.raises(BudgetExceeded):
        s_invariant(knot_by_name("T2,5"), budget=3, cache=None)
    with pytest.raises(ValueError):
        s_invariant(knot_by_name("T2,3"), backend="magic", cache=None)


def test_cache_roundtrip(tmp_path):
    path = tmp_path / "cache.csv"
    cache = InvariantCache(path)
    d = knot_by_name("T2,5")
    first = s_invariant(d, cache=cache)
    again = InvariantCache(path)
    assert first.hash in again
    assert s_invariant(d, cache=again).s == first.s == 4
    lines = path.read_text().splitlines()
    assert lines[0] == "hash,s,nu,q_min,q_max,backend,seconds"
    assert lines[1].startswith(f"{first.hash},4,2,3,5,optimized,")


def test_explicit_backend_bypasses_other_backend_cache():
    cache = InvariantCache()
    d = knot_by_name("4_1")
    assert s_invariant(d, backend="optimized", cache=cache).backend == "optimized"
    assert s_invariant(d, backend="reference", cache=cache).backend == "reference"


def test_additivity_and_mirror():
    a, b = knot_by_name("T2,5"), knot_by_name("4_1")
    assert nu(connected_sum(a, b)) == nu(a) + nu(b)
    assert nu(mirror(a)) == -nu(a)
