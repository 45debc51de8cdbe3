from __future__ import annotations

import json
import subprocess
import sys

import pytest

from simplext import jsonio
from simplext.bicliques import trivial_extension
from simplext.cli import main
from simplext.config import Budget, default_budget, parse_budget
from simplext.errors import InputError
from simplext.graph import cycle_graph
from simplext.instances import NON_DECOMPOSABLE, example_extension
from simplext.polytope import VPolytope

from shapes import SQUARE, TRIANGLE, box


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path):
    paths = {}

    def put(name, payload):
        p = tmp_path / name
        jsonio.write_json(p, payload)
        paths[name] = p
        return p

    put("square.json", jsonio.hpolytope_to_json(box(2)))
    put("triangle.json", jsonio.vpolytope_to_json(TRIANGLE))
    put("diamond.json", NON_DECOMPOSABLE["diamond"].to_json())
    put("hexagon.json", cycle_graph(6).to_json())
    P, Q, proj, _ = example_extension()
    put("example.json", {"P": jsonio.vpolytope_to_json(P), "Q": jsonio.hpolytope_to_json(Q), "projection": jsonio.projection_to_json(proj)})
    Qt, pt = trivial_extension(SQUARE)
    put("trivial.json", {"P": jsonio.vpolytope_to_json(SQUARE), "Q": jsonio.hpolytope_to_json(Qt), "projection": jsonio.projection_to_json(pt)})
    put("m1.json", [[1, 2], [3, 4], [5, 6], [7, 8]])
    put("m2.json", [[1, 4], [2, 3], [5, 6], [7, 8]])
    put("m3.json", [[1, 5], [2, 6], [3, 7], [4, 8]])
    put("m2bad.json", [[1, 4], [2, 3], [5, 8], [6, 7]])
    put("k4a.json", [[1, 2], [3, 4]])
    put("k4b.json", [[1, 3], [2, 4]])
    put("k4c.json", [[1, 4], [2, 3]])
    (tmp_path / "broken.json").write_text("{not json")
    paths["broken.json"] = tmp_path / "broken.json"
    paths["dir"] = tmp_path
    return paths


def test_construct_gon(capsys, files):
    out_path = files["dir"] / "gon.json"
    code, out, _ = run(capsys, "construct", "gon", "--k", 3, "--verify", "--out", out_path)
    assert code == 0
    assert "facets: 6, simple=true" in out
    data = json.loads(out_path.read_text())
    assert len(data["Q"]["inequalities"]) == 6 and data["report"]["simple"]
    assert set(data["projection"]) == {"matrix", "offset"}


def test_construct_reflect_and_disjunction(capsys, files):
    code, out, _ = run(capsys, "construct", "reflect", files["square.json"], "--a", "1,0", "--beta", "1/2", "--verify")
    assert code == 0 and "predicate: simple=true" in out and "enumerated: simple=true" in out
    out_path = files["dir"] / "disj.json"
    code, out, _ = run(capsys, "construct", "disjunction", files["triangle.json"], files["square.json"], "--out", out_path)
    assert code == 0
    Q = jsonio.polytope_from_json(json.loads(out_path.read_text())["Q"])
    assert Q.ambient_dim == 6


def test_construct_errors(capsys, files):
    code, _, err = run(capsys, "construct", "reflect", files["square.json"], "--a", "1,0", "--beta", "-1")
    assert code == 2 and "input error" in err
    code, _, _ = run(capsys, "construct", "gon", "--k", 9)
    assert code == 2
    code, _, _ = run(capsys, "construct", "reflect", files["broken.json"], "--a", "1,0", "--beta", "1")
    assert code == 2


def test_skeleton_commands(capsys, files):
    code, out, _ = run(capsys, "skeleton", "hypersimplex", "--n", 5, "--k", 2)
    assert code == 0 and "10 vertices" in out
    out_path = files["dir"] / "pm.json"
    code, out, _ = run(capsys, "skeleton", "perfect-matching", "--nodes", 6, "--out", out_path)
    data = json.loads(out_path.read_text())
    assert code == 0 and len(data["nodes"]) == 15 and data["complete"] and data["edge_count"] == 105
    code, out, _ = run(capsys, "skeleton", "flow", "--dag", files["diamond.json"])
    assert code == 0 and "2 vertices, 1 edges" in out
    code, _, err = run(capsys, "skeleton", "hypersimplex", "--n", 30, "--k", 15)
    assert code == 3 and "budget" in err


def test_lowerbound_commands(capsys, files):
    code, out, _ = run(capsys, "lowerbound", "--family", "hypersimplex", "--n", 5, "--k", 2)
    assert code == 0 and ">= 10 (singleton_shortcut)" in out
    code, out, _ = run(capsys, "lowerbound", "--family", "spanning-tree", "--n", 5, "--mode", "isolated")
    assert code == 0 and "all proper closed sets isolated" in out and "(degree_bound)" in out
    out_path = files["dir"] / "hex.json"
    code, out, _ = run(capsys, "lowerbound", "--graph", files["hexagon.json"], "--mode", "exact", "--out", out_path)
    data = json.loads(out_path.read_text())
    assert code == 0 and data["bound"] == 2 and len(data["cover"]) == 2
    code, _, err = run(capsys, "lowerbound", "--graph", files["hexagon.json"], "--mode", "singleton")
    assert code == 4 and "witness" in err
    code, _, _ = run(capsys, "lowerbound", "--graph", files["hexagon.json"], "--mode", "exact", "--budget", "cover_nodes=3")
    assert code == 3


def test_verify_commands(capsys, files):
    code, out, _ = run(capsys, "verify", files["example.json"])
    assert code == 0
    assert "simple=false" in out and "necessary conditions for a simple extension: pass" in out
    code, out, _ = run(capsys, "verify", files["trivial.json"])
    assert code == 0 and "simple=true" in out and "verdict: ok" in out
    code, out, _ = run(capsys, "verify", files["trivial.json"], "--drop-facet", 0)
    assert code == 0 and "biclique covering: VIOLATED" in out and "verdict: violations" in out
    bad = json.loads(files["trivial.json"].read_text())
    bad["P"] = jsonio.vpolytope_to_json(VPolytope.of([(0, 0), (2, 0), (0, 2), (2, 2)]))
    jsonio.write_json(files["dir"] / "bad.json", bad)
    code, _, _ = run(capsys, "verify", files["dir"] / "bad.json")
    assert code == 2


def test_common_neighbor_commands(capsys, files):
    code, out, _ = run(capsys, "common-neighbor", files["m1.json"], files["m2.json"], files["m3.json"])
    assert code == 0 and out.startswith("CommonNeighbor:")
    code, out, _ = run(capsys, "common-neighbor", files["k4a.json"], files["k4b.json"], files["k4c.json"])
    assert code == 0 and "PairwiseAdjacent" in out
    code, _, _ = run(capsys, "common-neighbor", files["m1.json"], files["m2bad.json"], files["m3.json"])
    assert code == 2


def test_sample_and_closure(capsys, files):
    code, out, _ = run(capsys, "sample", "--d", 4, "--vertices", 5, "--samples", 5, "--seed", 3)
    assert code == 0 and "5 random 0/1 polytopes" in out
    code, out, _ = run(capsys, "closure", "--graph", files["hexagon.json"], "--nodes", "0,3")
    assert code == 0 and "closure of [0, 3]: [0, 3]" in out


def test_outputs_are_byte_identical(capsys, files):
    a, b = files["dir"] / "a.json", files["dir"] / "b.json"
    for target in (a, b):
        run(capsys, "common-neighbor", files["m1.json"], files["m2.json"], files["m3.json"], "--out", target)
    assert a.read_bytes() == b.read_bytes()
    for target in (a, b):
        run(capsys, "sample", "--d", 4, "--vertices", 5, "--samples", 5, "--out", target)
    assert a.read_bytes() == b.read_bytes()


def test_console_script_exit_code(files):
    proc = subprocess.run(
        [sys.executable, "-m", "simplext.cli", "skeleton", "flow", "--dag", str(files["broken.json"])],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 2 and proc.stdout == ""


def test_budget_parsing(monkeypatch):
    assert parse_budget("") == Budget()
    assert parse_budget("7").lattice == 7
    assert parse_budget("lattice=5, pairs=9") == Budget(lattice=5, pairs=9)
    for raw in ("lattice=x", "nope=3", "0"):
        with pytest.raises(InputError):
            parse_budget(raw)
    monkeypatch.setenv("SIMPLEXT_BUDGET", "items=11")
    assert default_budget().items == 11


def test_json_round_trips():
    H = box(2)
    assert jsonio.polytope_from_json(json.loads(jsonio.dumps(jsonio.hpolytope_to_json(H)))) == H
    V = VPolytope.of([(0, "1/2"), (1, 0)])
    assert jsonio.polytope_from_json(jsonio.vpolytope_to_json(V)) == V
    with pytest.raises(InputError):
        jsonio.polytope_from_json({"ambient_dim": 2, "vertices": [["1/0", 0]]})
    with pytest.raises(InputError):
        jsonio.polytope_from_json({"vertices": []})
