import io
import json
import subprocess
import sys

import pytest
from hypothesis import given

from artinqp.cli import (
    EXIT_FAILED, EXIT_INPUT, EXIT_NOT_QP, EXIT_OK, main, parse_graph_file,
)
from artinqp.graph import GraphError

from strategies import even_graphs

T442 = """# T(4,4,2)
vertex a
vertex b
vertex c
edge a b 4
edge a c 4
edge b c 2
"""
T444 = "vertex u\nvertex v\nvertex w\nedge u v 4\nedge u w 4\nedge v w 4\n"
S6_T442 = T442 + "vertex x\nvertex y\nedge x y 6\n" + "".join(
    f"edge {p} {q} 2\n" for p in "abc" for q in "xy")
QUAD_A = """vertex u
vertex w1
vertex w2
vertex w3
edge u w1 4
edge u w2 4
edge u w3 4
edge w1 w2 2
edge w1 w3 2
edge w2 w3 2
"""


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out)
    return code, out.getvalue()


@pytest.fixture
def gfile(tmp_path):
    def make(text, name="g.txt"):
        p = tmp_path / name
        p.write_text(text, encoding="utf-8")
        return p
    return make


# graph files

def test_parse_graph_file_errors():
    with pytest.raises(GraphError, match="odd label at line 3"):
        parse_graph_file("vertex a\nvertex b\nedge a b 3\n")
    with pytest.raises(GraphError, match="duplicate vertex at line 2"):
        parse_graph_file("vertex a\nvertex a\n")
    with pytest.raises(GraphError, match="unknown keyword"):
        parse_graph_file("vertex a\nnode b\n")
    with pytest.raises(GraphError, match="line 2"):
        parse_graph_file("vertex a\nedge a b x\n")


@given(even_graphs(max_vertices=5, labels=(2, 4, 6, 8)))
def test_graph_file_fixpoint(g):
    text = g.to_text()
    h = parse_graph_file(text)
    assert h == g
    assert h.to_text() == text


def test_comments_and_blank_lines():
    g = parse_graph_file("\n# header\nvertex a   # first\n\nvertex b\nedge a b 6 # seg\n")
    assert g.label("a", "b") == 6


# present / alexander

def test_present(gfile):
    code, out = run("present", gfile(T442))
    assert code == EXIT_OK
    assert len([ln for ln in out.splitlines() if "=" in ln]) == 3
    code, out = run("present", gfile("vertex u\nvertex v\nedge u v 4\n"), "--cocyclic", "u", "2")
    assert code == EXIT_OK and "B0" in out and "B1" in out


def test_input_errors(gfile, capsys):
    code, _ = run("present", gfile("vertex a\nvertex b\nedge a b 3\n"))
    assert code == EXIT_INPUT
    assert "odd label at line 3" in capsys.readouterr().err
    assert run("present", gfile(T442), "--cocyclic", "zz", "2")[0] == EXIT_INPUT
    assert run("present", gfile(T442), "--cocyclic", "a", "1")[0] == EXIT_INPUT
    assert run("decide", gfile(T442).parent / "missing.txt")[0] == EXIT_INPUT


def test_alexander(gfile):
    code, out = run("alexander", gfile(T442))
    assert code == EXIT_OK
    assert "3 relators x 3 generators" in out
    # row A(b,c) of the triangle display: 0, 1 - t2, t1 - 1
    assert out.splitlines()[-1].split("|")[1].split() == ["0", "-t2+1", "t1-1"]
    code, out = run("alexander", gfile("vertex a\nvertex b\n"))
    assert code == EXIT_OK and "0 relators" in out
    code, out = run("alexander", gfile(T444), "--cocyclic", "u", "2", "--json")
    obj = json.loads(out)
    assert code == EXIT_OK and isinstance(obj, dict)


# rank

def test_rank(gfile, tmp_path):
    code, out = run("rank", gfile(T442))
    assert (code, out) == (EXIT_OK, "generic: rank 2; corank 1; depth 0\n")
    tori = tmp_path / "tori.txt"
    tori.write_text("# T1\nt0*t1 = zeta(2,1)\nt2 = 1\n\nt2 = 1\nt2 = -1\n")
    code, out = run("rank", gfile(T442), "--torus", tori)
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[1] == "torus 1 (line 2): dim 1; rank 1; corank 2; depth 1"
    assert lines[2] == "torus 2 (line 5): empty torus (inconsistent constraints)"
    tori.write_text("t0 + 1 = 1\n")
    assert run("rank", gfile(T442), "--torus", tori)[0] == EXIT_INPUT


# decide

def test_decide_examples(gfile):
    assert run("decide", gfile(T442)) == (EXIT_OK, "QP: T(4,4,2)\n")
    code, out = run("decide", gfile(T444), "--verify")
    assert code == EXIT_NOT_QP
    assert out == "NOT QP (T(4,4,4) pattern); witness verified: coranks 2,2 → 3; dim(∩)=1\n"
    code, out = run("decide", gfile(S6_T442))
    assert code == EXIT_OK and out.startswith("QP: ")
    assert set(out[4:].strip().split(" *₂ ")) == {"S_6", "T(4,4,2)"}
    code, out = run("decide", gfile("vertex a\nvertex b\nvertex c\nedge a b 4\nedge b c 4\n"),
                    "--verify")
    assert code == EXIT_NOT_QP and "no tabulated witness" in out


def test_module_entry_point(gfile):
    proc = subprocess.run([sys.executable, "-m", "artinqp", "decide", str(gfile(T444))],
                          capture_output=True, text=True, encoding="utf-8")
    assert proc.returncode == EXIT_NOT_QP
    assert proc.stdout == "NOT QP (T(4,4,4) pattern)\n"


# certificates

def test_certificate_roundtrip(gfile, tmp_path):
    code, out = run("decide", gfile(QUAD_A), "--json")
    assert code == EXIT_NOT_QP
    cert = json.loads(out)
    assert cert["verdict"] == "NotQP" and cert["pattern"]["kind"] == "Quad_a"
    assert cert["verification"]["passed"]
    path = tmp_path / "cert.json"
    path.write_text(out, encoding="utf-8")
    assert run("check-cert", path) == (EXIT_OK, "certificate OK: NotQP\n")

    tampered = json.loads(out)
    tampered["verification"]["tori1"][0]["rank"] += 1
    path.write_text(json.dumps(tampered), encoding="utf-8")
    code, msg = run("check-cert", path)
    assert code == EXIT_FAILED and "ranks differ" in msg

    tampered = json.loads(out)
    tampered["verdict"] = "QP"
    path.write_text(json.dumps(tampered), encoding="utf-8")
    code, msg = run("check-cert", path)
    assert code == EXIT_FAILED and "verdict mismatch" in msg

    tampered = json.loads(out)
    tampered["graph"] = tampered["graph"].replace("w2 w3 2", "w2 w3 4")
    path.write_text(json.dumps(tampered), encoding="utf-8")
    code, msg = run("check-cert", path)
    assert code == EXIT_FAILED and "hash mismatch" in msg


def test_certificate_qp(gfile, tmp_path):
    code, out = run("decide", gfile(T442), "--json")
    cert = json.loads(out)
    assert code == EXIT_OK and cert["verdict"] == "QP"
    assert cert["factors"] == [{"kind": "T(4,4,2)", "vertices": ["a", "b", "c"]}]
    path = tmp_path / "cert.json"
    path.write_text(out)
    assert run("check-cert", path)[0] == EXIT_OK
    path.write_text("{not json")
    assert run("check-cert", path)[0] == EXIT_INPUT


# determinism

@pytest.mark.parametrize("argv", [
    ("present", "--annotate"),
    ("alexander", "--cocyclic", "u", "2"),
    ("alexander", "--cocyclic", "u", "2", "--json"),
    ("rank", "--cocyclic", "u", "2"),
    ("decide", "--verify"),
    ("decide", "--json"),
])
def test_output_is_deterministic(gfile, argv):
    g = gfile(QUAD_A)
    cmd, *flags = argv
    first = run(cmd, g, *flags)
    assert run(cmd, g, *flags) == first
    if cmd == "decide":
        assert run(cmd, g, *flags, "--jobs", "2") == first
