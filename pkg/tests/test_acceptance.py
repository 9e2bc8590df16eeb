"""Acceptance criteria 1-9.

Each criterion is a function returning (passed, detail).  The pytest tests
record the outcome and ``conftest.py`` prints one line per criterion in the
terminal summary; running this file directly prints the same lines.
"""

from __future__ import annotations

import random
import sys
import time
from pathlib import Path

import pytest

from knotnu.diagram import change_crossing, mirror
from knotnu.jones import jones_polynomial
from knotnu.knots import knot_by_name
from knotnu.lee.engine import (
    OPTIMIZED_BUDGET,
    InvariantCache,
    euler_matches_jones,
    khovanov_homology,
    s_invariant,
)
from knotnu.portgraph import reidemeister_fuzz
from knotnu.satellite import ClaspSign, DoubleSpec, twisted_double
from knotnu.seifert import (
    FIGURE_EIGHT_MATRIX,
    boundary_diagram,
    double_presentation,
    insert_trefoil,
    parse_bands,
    realize_matrix,
    seifert_matrix,
)
from knotnu import harness
from knotnu.tb import EXACT_TB, BUILTIN_FRONTS, check_tb_duality, tb_of_front

DATA = Path(__file__).parent / "data"
SEED = 20240611
RESULTS: dict[int, tuple[bool, str]] = {}

# one cache for the whole run; values never depend on it
CACHE = InvariantCache()


def _nu(d, **kw):
    kw.setdefault("cache", CACHE)
    return s_invariant(d, **kw).nu


def criterion_1():
    expected = {"T2,3": 1, "T2,5": 2, "T2,7": 3, "T3,4": 3, "T3,5": 4}
    got, slow = {}, []
    for name, want in expected.items():
        start = time.perf_counter()
        got[name] = s_invariant(knot_by_name(name), backend="reference", cache=None).nu
        if time.perf_counter() - start >= 60:
            slow.append(name)
    ok = got == expected and not slow
    return ok, f"nu={got}" + (f" slow={slow}" if slow else "")


def criterion_2():
    start = time.perf_counter()
    scan = harness.scan_doubles("T2,3", range(-1, 8), "+", budget=OPTIMIZED_BUDGET, cache=CACHE)
    took = time.perf_counter() - start
    vals = {r.t: r.nu for r in scan.rows}
    ok = (
        not any(r.skipped for r in scan.rows)
        and all(vals[t] == 1 for t in range(-1, 2))
        and all(vals[t] == 0 for t in range(6, 8))
        and vals[2] == 1
        and max(r.crossings for r in scan.rows) <= 22
        and took < 1800
    )
    return ok, " ".join(f"{t}:{v}" for t, v in vals.items()) + f"  ({took:.1f}s)"


THM_KNOTS = ["unknot", "T2,3", "mT2,3", "4_1"]


def _in_budget(k, t):
    d = twisted_double(DoubleSpec(knot_by_name(k), t))
    return len(d.crossings) <= OPTIMIZED_BUDGET


def criterion_3():
    triggered, failures, covered = 0, [], 0
    for k in THM_KNOTS:
        for t in range(-3, 4):
            if not _in_budget(k, t):
                continue
            covered += 1
            rep = harness.check_theorem1(k, t, cache=CACHE)
            if rep.data["nu_plus"] in (1, -1):
                triggered += 1
            if not rep.verdict:
                failures.append((k, t, rep.data))
    return not failures, f"{covered} pairs, {triggered} triggered, failures={failures}"


def criterion_4():
    bad = []
    for k in THM_KNOTS:
        ts = [t for t in range(-3, 4) if _in_budget(k, t)]
        scan = harness.scan_doubles(k, ts, "+", cache=CACHE)
        if not scan.monotone or any(r.nu not in (0, 1) for r in scan.computed):
            bad.append((k, [(r.t, r.nu) for r in scan.rows]))
    t23 = harness.scan_doubles("T2,3", range(-1, 8), "+", cache=CACHE)
    if not t23.monotone or any(r.nu not in (0, 1) for r in t23.computed):
        bad.append(("T2,3 [-1,7]", [(r.t, r.nu) for r in t23.rows]))
    rep = harness.check_theorem2_bounds("unknot", "+", cache=CACHE)
    tk = rep.data.get("t_K")
    ok = not bad and rep.verdict and tk == -1
    return ok, f"unknot t_K={tk} in [-1, 1); T2,3 t_K={t23.step}; bad={bad}"


def _band_corpus():
    corpus = [parse_bands(p.read_text()) for p in sorted(DATA.glob("*.bands"))]
    corpus.append(realize_matrix(FIGURE_EIGHT_MATRIX))
    corpus.append(insert_trefoil(realize_matrix(FIGURE_EIGHT_MATRIX), 1, -1))
    for t in (-2, -1, 0, 1, 2):
        corpus.append(double_presentation(knot_by_name("unknot"), t))
    return corpus


def criterion_5():
    pairs = [("T2,3", "T2,3"), ("T2,3", "4_1"), ("T2,5", "-T2,3")]
    add = []
    for a, b in pairs:
        lhs = _nu(knot_by_name(f"{a}#{b}"))
        add.append(lhs == _nu(knot_by_name(a)) + _nu(knot_by_name(b)))
    mirrors = []
    for k in ["T2,3", "T2,5", "T3,4", "4_1"]:
        d = knot_by_name(k)
        mirrors.append(_nu(mirror(d)) == -_nu(d))
    genus = []
    for bp in _band_corpus():
        d = boundary_diagram(bp)
        if len(d.crossings) > OPTIMIZED_BUDGET:
            continue
        genus.append((abs(_nu(d)) <= bp.genus, bp.genus))
    ok = all(add) and all(mirrors) and genus and all(g for g, _ in genus)
    return ok, f"additivity {add}, mirror {mirrors}, genus bound on {len(genus)} surfaces"


SMALL = ["T2,3", "T2,5", "T2,7", "T3,4", "T2,9", "T3,5", "4_1", "T2,3#T2,3", "T2,3#4_1"]


def criterion_6():
    diagrams = [knot_by_name(k) for k in SMALL]
    assert all(len(d.crossings) <= 10 for d in diagrams)
    picks = harness.sample_crossing_changes(diagrams, 24, seed=SEED)
    drops = []
    for d, i in picks:
        before, after = _nu(d), _nu(change_crossing(d, i))
        drops.append(before - after)
    ok = len(picks) >= 20 and all(0 <= x <= 1 for x in drops)
    return ok, f"{len(picks)} changes, drops {sorted(drops)}"


BENCH = ["unknot", "T2,3", "4_1", "T2,5", "T3,4", "T2,3#4_1"]


def criterion_7():
    notes = []
    # every computation below goes through the free-part check in the engine
    agree = []
    small = [knot_by_name(k) for k in BENCH + ["T2,7", "T3,5", "mT3,4", "T2,3#T2,3", "T2,5#-T2,3"]]
    small += [twisted_double(DoubleSpec(knot_by_name("unknot"), t, c)) for t in (-3, 2) for c in "+-"]
    for d in small:
        assert len(d.crossings) <= 12
        r = s_invariant(d, backend="reference", cache=None)
        o = s_invariant(d, backend="optimized", cache=None)
        kh_r = khovanov_homology(d, backend="reference").dims
        kh_o = khovanov_homology(d, backend="optimized").dims
        agree.append(r.s == o.s and (r.q_min, r.q_max) == (o.q_min, o.q_max)
                     and r.q_max - r.q_min == 2 and kh_r == kh_o)
    notes.append(f"backends agree on {sum(agree)}/{len(agree)}")
    euler = [euler_matches_jones(knot_by_name(k)) for k in BENCH]
    notes.append(f"euler=jones on {sum(euler)}/{len(euler)}")
    rng = random.Random(SEED)
    fuzz_ok = 0
    seeds = ["unknot", "T2,3", "mT2,3", "4_1", "T2,5"]
    want = {k: s_invariant(knot_by_name(k), cache=None).s for k in seeds}
    for n in range(200):
        k = seeds[n % len(seeds)]
        d = reidemeister_fuzz(knot_by_name(k), rng.randrange(3, 12), rng, max_crossings=12)
        fuzz_ok += s_invariant(d, cache=None).s == want[k]
    notes.append(f"fuzz preserved s in {fuzz_ok}/200")
    ok = all(agree) and all(euler) and fuzz_ok == 200
    return ok, ", ".join(notes)


def criterion_8():
    rep = harness.demo_realization(FIGURE_EIGHT_MATRIX, None, cache=CACHE)
    seq = rep.data.get("sequence", [])
    nus = rep.data.get("nus")
    ok = (rep.verdict and nus == [1, 0, -1]
          and all(seifert_matrix(bp) == FIGURE_EIGHT_MATRIX for bp in seq))
    return ok, f"nu along trade sequence {nus}"


def criterion_9():
    fronts = {k: tb_of_front(BUILTIN_FRONTS[k][0]) for k in ("unknot", "T2,3", "-T2,3")}
    values_ok = fronts == {"unknot": -1, "T2,3": 1, "-T2,3": -6}
    # the fronts must also be the knots they claim to be
    types_ok = all(
        jones_polynomial(BUILTIN_FRONTS[k][0].diagram()) == jones_polynomial(knot_by_name(k))
        for k in fronts
    )
    duals = [check_tb_duality(k) for k in EXACT_TB]
    dual_ok = all(r.holds for r in duals if r.exact)
    return values_ok and types_ok and dual_ok, (
        f"tb {fronts}, duality on {sum(r.exact for r in duals)} exact pairs")


CRITERIA = {n: globals()[f"criterion_{n}"] for n in range(1, 10)}


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    try:
        ok, detail = CRITERIA[n]()
    except Exception as exc:  # report, then fail
        RESULTS[n] = (False, f"{type(exc).__name__}: {exc}")
        raise
    RESULTS[n] = (ok, detail)
    assert ok, detail


def report_lines() -> list[str]:
    return [
        f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
        for n, (ok, detail) in sorted(RESULTS.items())
    ]


if __name__ == "__main__":
    for n, fn in CRITERIA.items():
        try:
            RESULTS[n] = fn()
        except Exception as exc:
            RESULTS[n] = (False, f"{type(exc).__name__}: {exc}")
    print("\n".join(report_lines()))
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) else 1)
