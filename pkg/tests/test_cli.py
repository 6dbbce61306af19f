import csv
import io
import json
import subprocess
import sys

import pytest

from ehrhart.cli import main, parse_cyclic, parse_range
from ehrhart.engine import EhrhartProfile
from ehrhart.roots import dim2_root_region_member


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_ranges():
    assert parse_range("2..5") == [2, 3, 4, 5]
    assert parse_range("3") == [3]
    assert parse_range("1,4..5") == [1, 4, 5]
    assert parse_cyclic("5..6 x 2..4") == [(5, 2), (5, 3), (5, 4), (6, 2), (6, 3), (6, 4)]
    with pytest.raises(ValueError):
        parse_cyclic("5..6")


def test_ehrhart_cube(capsys):
    code, out, _ = run(capsys, "ehrhart", "--zoo", "cube:3")
    assert code == 0
    assert "n^3 + 3n^2 + 3n + 1" in out
    assert "h*    = (1, 4, 1, 0)" in out


def test_ehrhart_cyclic_json_round_trip(capsys):
    code, out, _ = run(capsys, "ehrhart", "--zoo", "cyclic:7,3", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["c"] == ["1", "6", "35", "224"]
    prof = EhrhartProfile.from_json(doc)
    assert prof.to_json() == {k: doc[k] for k in ("d", "c", "a", "delta")}


def test_ehrhart_csv(capsys):
    code, out, _ = run(capsys, "ehrhart", "--zoo", "simplex:3", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["k", "c", "a", "delta"]
    assert rows[2] == ["1", "11/6", "0", "3"]


def test_degenerate_file_exit_2(tmp_path, capsys):
    f = tmp_path / "degenerate.json"
    f.write_text(json.dumps({"vertices": [[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0]]}))
    code, _, err = run(capsys, "ehrhart", "--file", str(f))
    assert code == 2
    assert "DegeneratePolytope" in err


def test_io_and_parse_errors_exit_1(tmp_path, capsys):
    assert run(capsys, "ehrhart", "--file", str(tmp_path / "missing.json"))[0] == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "ehrhart", "--file", str(bad))[0] == 1
    assert run(capsys, "ehrhart", "--zoo", "nosuch:3")[0] == 1
    assert run(capsys, "ehrhart")[0] == 1
    assert run(capsys, "ehrhart", "--zoo", "cube:2", "--coeffs", "1,2,1")[0] == 1


def test_file_input_and_out(tmp_path, capsys):
    f = tmp_path / "tri.json"
    f.write_text(json.dumps({"name": "tri", "vertices": [[0, 0], [3, 0], [0, 3]]}))
    out = tmp_path / "tri.out.json"
    assert run(capsys, "audit", "--file", str(f), "--format", "json", "--out", str(out))[0] == 0
    doc = json.loads(out.read_text())
    assert doc["passed"] is True
    scott = next(e for e in doc["entries"] if e["id"] == "SCOTT")
    assert scott["holds"] is False and scott["slack"] == "-1/4"


def test_audit_hand_entered_violation_is_not_an_error(capsys):
    code, out, _ = run(capsys, "audit", "--coeffs", "1,10,1")
    assert code == 0
    assert "FAIL" in out


def test_audit_profile_file(tmp_path, capsys):
    f = tmp_path / "p.json"
    f.write_text(json.dumps({"d": 2, "c": ["1", "5", "6"]}))
    code, out, _ = run(capsys, "audit", "--file", str(f), "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "id,holds,slack,note"


def test_roots(capsys):
    code, out, _ = run(capsys, "roots", "--zoo", "cross:3")
    assert code == 0
    assert "-0.500000000000" in out
    code, out, _ = run(capsys, "roots", "--zoo", "simplex:3", "--format", "json", "--eps", "1/1000")
    doc = json.loads(out)
    assert doc["norm_bound_ok"] and doc["real_bound_ok"]
    assert [r["interval"][1] for r in doc["real_roots"]] == ["-3", "-2", "-1"]


def test_zoo_listing(capsys):
    code, out, _ = run(capsys, "zoo")
    assert code == 0 and "cyclic" in out and "order_polytope" in out
    code, out, _ = run(capsys, "zoo", "--zoo", "octahedron", "--format", "json")
    assert len(json.loads(out)["vertices"]) == 6


def test_scatter_empty(capsys):
    code, out, _ = run(capsys, "scatter", "--samples", "0")
    assert code == 0
    assert out == "polytope_id,re,im,certified_real\n"


def test_scatter_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(capsys, "scatter", "--d", "3", "--samples", "25", "--seed", "9", "--out", str(a))[0] == 0
    assert run(capsys, "scatter", "--d", "3", "--samples", "25", "--seed", "9", "--out", str(b), "--jobs", "2")[0] == 0
    assert a.read_bytes() == b.read_bytes()
    rows = list(csv.DictReader(a.open()))
    assert len(rows) == 75
    assert len({r["polytope_id"] for r in rows}) == 25
    assert all(abs(complex(float(r["re"]), float(r["im"]))) < 25 for r in rows)


def test_scatter_planar_region(capsys):
    code, out, _ = run(capsys, "scatter", "--d", "2", "--samples", "60", "--format", "json")
    rows = json.loads(out)
    assert len(rows) == 120
    assert all(dim2_root_region_member(complex(r["re"], r["im"])) for r in rows)


def test_scatter_figures(tmp_path, capsys):
    svg, png = tmp_path / "s.svg", tmp_path / "s.png"
    assert run(capsys, "scatter", "--d", "2", "--samples", "10", "--format", "svg", "--out", str(svg))[0] == 0
    first = svg.read_bytes()
    assert first.lstrip().startswith(b"<?xml") and b"<svg" in first
    run(capsys, "scatter", "--d", "2", "--samples", "10", "--format", "svg", "--out", str(svg))
    assert svg.read_bytes() == first
    assert run(capsys, "scatter", "--d", "3", "--samples", "5", "--figure", str(png))[0] == 0
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    assert run(capsys, "scatter", "--format", "svg", "--samples", "1")[0] == 1


def test_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "--d", "2..4", "--format", "json")
    rows = json.loads(out)
    assert [r["d"] for r in rows] == [2, 3, 4]
    assert 3.5 <= float(rows[0]["bound"]) <= 3.65
    assert rows[1]["reference"] == 8.5


def test_conjecture(capsys):
    code, out, _ = run(capsys, "conjecture", "--cyclic", "5..6 x 2..3", "--fiber", "1")
    assert code == 0
    assert out.count("pass") == 8


def test_machinery(capsys):
    code, out, _ = run(capsys, "machinery", "--dmax", "6", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["d"] for r in rows] == ["1", "2", "3", "4", "5", "6"]
    assert all(r["verdict"] == "pass" for r in rows)


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "ehrhart", "ehrhart", "--zoo", "cube:2"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert "n^2 + 2n + 1" in res.stdout
