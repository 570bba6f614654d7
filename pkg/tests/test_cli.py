import io
import json

import pytest

from handlebody_inv.canonical import build_free, build_nonfree
from handlebody_inv.cli import run
from handlebody_inv.textfmt import parse_model, serialize_model

from conftest import axial_loop_model, inverted_loop_model


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def write(tmp_path):
    def _write(model, name="m.txt"):
        path = tmp_path / name
        path.write_text(serialize_model(model))
        return str(path)
    return _write


def test_classes():
    assert call("classes", "--genus", "1") == (0, "I_1\nL_1^{0,1}\nL_1^{2,0}\n", "")
    assert call("classes", "--genus", "0")[1] == "L_0^{1,0}\n"


def test_classes_json():
    code, out, _ = call("classes", "--genus", "1", "--json")
    data = json.loads(out)
    assert [list(d) for d in data] == [["variant", "g", "n", "m", "l", "display"]] * 3
    assert data[0] == {"variant": "free", "g": 1, "n": 0, "m": None, "l": None, "display": "I_1"}


def test_classify(write):
    assert call("classify", write(axial_loop_model())) == (0, "L_1^{0,1} g=1 n=0 m=1 l=0\n", "")
    assert call("classify", write(build_free(1)))[1] == "I_3 g=3 n=1 free\n"
    code, out, _ = call("classify", "--json", write(inverted_loop_model()))
    assert json.loads(out) == {"display": "L_1^{2,0}", "g": 1, "n": 2, "m": 0, "l": 0, "free": False}


def test_build(tmp_path):
    code, out, _ = call("build", "--nonfree", "1", "0", "0")
    assert (code, out) == (0, "involution-graph v1\nvertex u1\n")
    path = tmp_path / "f.txt"
    assert call("build", "--free", "2", "-o", str(path))[0] == 0
    assert parse_model(path.read_text()) == build_free(2)


def test_invariants(write):
    path = write(build_nonfree(2, 0, 0))
    code, out, _ = call("invariants", path)
    assert out.splitlines() == [
        "genus 1", "free false", "n 2", "m 0", "quotient_genus 0",
        "boundary_fixed_points 4", "boundary_quotient_genus 0",
    ]
    code, out, _ = call("invariants", "--json", path)
    assert out == ('{"genus": 1, "free": false, "n": 2, "m": 0, "quotient_genus": 0, '
                   '"boundary_fixed_points": 4, "boundary_quotient_genus": 0}\n')


def test_quotient_and_boundary(write):
    path = write(inverted_loop_model())
    code, out, _ = call("quotient", path)
    assert out.splitlines()[:3] == ["quotient_genus 0", "branch_arcs 2", "branch_circles 0"]
    assert "edge e v mirror_e" in out
    assert call("boundary", path)[1] == "boundary_fixed_points 4\nboundary_quotient_genus 0\n"


def test_normalize(write, tmp_path):
    text = """involution-graph v1
vertex u1
vertex u2
edge a u1 u2
edge r u1 u1
emap r r inverted
"""
    path = tmp_path / "chain.txt"
    path.write_text(text)
    target = tmp_path / "out.txt"
    code, out, _ = call("normalize", str(path), "-o", str(target))
    assert out == "contract a g=1 n=2 m=0\n"
    assert parse_model(target.read_text()).vertices == ("u1",)


def test_isomorphic(write):
    a = write(build_free(1), "a.txt")
    b = write(build_nonfree(0, 1, 1), "b.txt")
    assert call("isomorphic", a, a)[1] == "true\n"
    assert call("isomorphic", a, b)[1] == "false\n"


def test_split(write):
    code, out, _ = call("split", write(build_nonfree(2, 0, 0)), "--orbit", "q1")
    assert out.splitlines() == [
        "orbit p1+q1 moved_pair",
        "connected_after false",
        "component 1 betti=0 preserved vertices=u1",
        "component 2 betti=0 preserved vertices=u2",
    ]
    code, _, err = call("split", write(inverted_loop_model()), "--orbit", "e")
    assert code == 1 and err.startswith("error: inverted-orbit")


def test_census_and_verify():
    code, out, _ = call("census", "--genus", "1", "--max-edges", "4")
    assert out == "n=0 m=1 6\nn=2 m=0 21\nfree 3\n"
    code, out, _ = call("verify", "--max-genus", "2", "--max-edges", "6")
    assert code == 0 and out.startswith("PASS\n")
    code, out, _ = call("verify", "--max-genus", "1", "--max-edges", "4", "--json")
    rec = json.loads(out)
    assert rec["verdict"] == "PASS" and list(rec) == sorted(rec)


def test_json_is_byte_stable():
    first = call("census", "--genus", "2", "--max-edges", "5", "--json")[1]
    assert first == call("census", "--genus", "2", "--max-edges", "5", "--json")[1]


def test_collisions():
    code, out, _ = call("collisions", "--genus", "4")
    assert out.splitlines() == [
        "L_4^{1,0} L_4^{1,1}",
        "L_4^{1,0} L_4^{1,2}",
        "L_4^{1,1} L_4^{1,2}",
        "L_4^{3,0} L_4^{3,1}",
    ]


def test_emit_dot(write):
    code, out, _ = call("emit-dot", write(inverted_loop_model()))
    assert out.startswith("graph quotient {\n")
    assert '"v" -- "mirror_e" [label="e"];' in out
    assert '"e:0" -- "e:1" [label="co-core e"];' in out
    assert out.count("graph ") == 2


def test_errors(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("involution-graph v1\nvertex v\nvertex v\n")
    code, out, err = call("classify", str(bad))
    assert code == 1 and out == ""
    assert err.count("\n") == 1 and "DUPLICATE_ID" in err
    assert call("classify", str(tmp_path / "missing.txt"))[0] == 1
    assert call("frobnicate")[0] == 1
    assert call("classes")[0] == 1
    assert call("build", "--free", "1", "--bogus")[0] == 1
