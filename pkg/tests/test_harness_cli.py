import re
from pathlib import Path

import pytest
from hypothesis import assume, given, settings, strategies as st

from knotnu import harness
from knotnu.cli import main
from knotnu.lee.engine import BudgetExceeded
from knotnu.satellite import twisted_double
from knotnu.knots import knot_by_name
from knotnu.seifert import FIGURE_EIGHT_MATRIX, insert_trefoil, parse_bands, realize_matrix

DATA = Path(__file__).parent / "data"


def test_unknot_scan():
    scan = harness.scan_doubles("unknot", range(-4, 5))
    assert [r.nu for r in scan.rows] == [1, 1, 1, 1, 0, 0, 0, 0, 0]
    assert scan.monotone and scan.bounded and scan.step == -1


def test_scan_marks_over_budget_rows():
    scan = harness.scan_doubles("T2,3", [3, 20], budget=22)
    assert not scan.rows[0].skipped and scan.rows[1].skipped
    assert scan.computed == scan.rows[:1]


@settings(max_examples=8)
@given(st.sampled_from(["unknot", "T2,3", "mT2,3", "4_1"]), st.integers(-2, 1))
def test_theorem1(name, t):
    assume(len(twisted_double(knot_by_name(name), t)) <= 22)
    rep = harness.check_theorem1(name, t)
    assert rep.verdict
    assert rep.data["nu_plus"] in (0, 1)


def test_theorem1_over_budget():
    with pytest.raises(BudgetExceeded):
        harness.check_theorem1("T2,3", -2)


def test_theorem1_examples():
    rep = harness.check_theorem1("unknot", -2)
    assert (rep.data["nu_plus"], rep.data["nu_minus"]) == (1, 0)
    assert harness.check_theorem1("unknot", 0).checks[0].name == "hypothesis not triggered"


@pytest.mark.parametrize("name,clasp,tk", [("unknot", "+", -1), ("T2,3", "+", 2),
                                           ("unknot", "-", 1), ("T2,3", "-", None)])
def test_theorem2(name, clasp, tk):
    rep = harness.check_theorem2_bounds(name, clasp)
    assert rep.verdict, str(rep)
    if tk is not None:
        assert rep.data["t_K"] == tk


def test_theorem2_missing_tb():
    rep = harness.check_theorem2_bounds("T3,7")
    assert not rep.verdict


def test_corollary5():
    base = realize_matrix(FIGURE_EIGHT_MATRIX)
    assert harness.check_corollary_band(base, base).data == {"nu": 0, "nu_modified": 0}
    rep = harness.check_corollary_band(base, insert_trefoil(base, 0, 1))
    assert rep.verdict and rep.data["nu_modified"] == 1


def test_theorem3_demo():
    rep = harness.demo_realization([[1, 1], [0, -1]], 1)
    assert rep.verdict, str(rep)
    assert rep.data["nus"] == [1, 0, -1]
    assert rep.data["knot"].bands[0].knot_name == "T2,3"
    assert not harness.demo_realization([[-1, 1, 0, 0], [0, -1, 0, 0], [0, 0, 1, 1], [0, 0, 0, -1]]).verdict


def test_emit_formats():
    scan = harness.scan_doubles("unknot", range(-1, 2))
    csv = harness.emit_table(scan, "csv")
    assert csv.splitlines()[0] == "t,nu,s,crossings,seconds"
    assert csv.splitlines()[1].startswith("-1,1,2,4,")
    empty = harness.scan_doubles("unknot", [])
    assert harness.emit_table(empty, "csv") == "t,nu,s,crossings,seconds\n"
    svg = harness.emit_table(harness.scan_doubles("T2,3", range(0, 5)), "svg")
    assert svg.startswith("<svg") and svg.count("<polyline") == 1
    with pytest.raises(ValueError):
        harness.emit_table(scan, "pdf")


def test_sample_crossing_changes_is_reproducible():
    ds = [knot_by_name(k) for k in ("T2,5", "T3,4", "4_1")]
    a = harness.sample_crossing_changes(ds, 5, seed=3)
    assert a == harness.sample_crossing_changes(ds, 5, seed=3)
    assert all(d.crossings[i].sign > 0 for d, i in a)


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_cli_s(capsys, tmp_path):
    code, out = run(capsys, "s", "--knot", "T2,5", "--format", "csv", "--cache", str(tmp_path / "c"))
    assert code == 0
    assert out.splitlines()[1].split(",")[1:3] == ["4", "2"]
    code, out = run(capsys, "s", "--knot", str(DATA / "figure8.pd"), "--backend", "reference")
    assert code == 0 and re.search(r"^nu\s+0$", out, re.M)


def test_cli_double_and_scan(capsys, tmp_path):
    code, out = run(capsys, "double", "--knot", "T2,3", "--t", "1", "--clasp", "-")
    assert code == 0 and "18 crossings" in out
    code, out = run(capsys, "scan", "--knot", "unknot", "--from", "-2", "--to", "2", "--format", "csv")
    assert code == 0 and len(out.splitlines()) == 6
    target = tmp_path / "scan.svg"
    assert main(["scan", "--knot", "T2,3", "--from", "0", "--to", "4", "--format", "svg",
                 "--out", str(target)]) == 0
    assert target.read_text().startswith("<svg")


@pytest.mark.parametrize("argv", [
    ["verify", "thm1", "--knot", "T2,3", "--t", "0"],
    ["verify", "thm2", "--knot", "unknot"],
    ["verify", "cor5", "--bands", str(DATA / "figure8.bands"), "--seed", "5", "--samples", "2"],
    ["verify", "thm3"],
])
def test_cli_verify(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == 0, out
    assert out.rstrip().splitlines()[-1].startswith(f"{argv[1]}: PASS")


def test_cli_tb(capsys):
    code, out = run(capsys, "tb", "--front", str(DATA / "trefoil.front"))
    assert code == 0 and out.startswith("tb 1 ")
    code, out = run(capsys, "tb", "--knot=-T2,3")
    assert code == 0 and "tb >= -6 (exact)" in out


def test_cli_realize_and_trade(capsys):
    code, out = run(capsys, "realize", "--matrix", "1 1; 0 -1")
    assert code == 0 and "# seifert matrix [[1, 1], [0, -1]]" in out and "# nu 0" in out
    code, out = run(capsys, "trade", "--source", str(DATA / "k_plus.bands"),
                    "--target", str(DATA / "k_minus.bands"))
    assert code == 0
    assert re.findall(r"# nu (-?\d)", out) == ["1", "0", "-1"]


def test_cli_errors(capsys):
    assert main(["s", "--knot", "nope"]) == 2
    assert main(["realize", "--matrix", "1 0; 0 1"]) == 2
    assert main(["s", "--knot", "T2,3#T2,3#T2,7", "--backend", "reference"]) == 2
    assert "error:" in capsys.readouterr().err
