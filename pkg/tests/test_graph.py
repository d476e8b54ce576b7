import pytest
from hypothesis import given

from artinqp.graph import (
    GraphError, Kbar, LabeledGraph, Other, Segment, T442, classify_factor, is_qp_block,
    join_all, join_decompose, kbar, segment, triangle, two_join, v_subgraph, validate_graph,
)

from strategies import even_graphs


@pytest.mark.parametrize("edges, code", [
    ([("a", "b", 3)], "odd label"),
    ([("a", "a", 2)], "loop"),
    ([("a", "c", 2)], "dangling endpoint"),
    ([("a", "b", 0)], "label < 2"),
    ([("a", "b", 2), ("b", "a", 4)], "duplicate edge"),
])
def test_validation_diagnostics(edges, code):
    with pytest.raises(GraphError) as exc:
        validate_graph(["a", "b"], edges)
    assert exc.value.code == code


def test_validation_rejects_bad_names():
    with pytest.raises(GraphError):
        validate_graph(["a b"], [])
    with pytest.raises(GraphError, match="duplicate vertex"):
        validate_graph(["a", "a"], [])


def test_canonical_form():
    g = validate_graph(["b", "a"], [("b", "a", 4)])
    assert g.vertices == ("a", "b")
    assert g.edges == ((("a", "b"), 4),)
    assert g.label("b", "a") == 4


def test_two_join_examples():
    e = two_join(kbar(1, "x"), kbar(1, "y"))
    assert e.edges == ((("x0", "y0"), 2),)
    t = two_join(segment(4), kbar(1, "c"))
    assert sorted(m for _, m in t.edges) == [2, 2, 4]
    big = two_join(triangle(4, 4, 2), kbar(2, "z"))
    assert big.n == 5 and len(big.edges) == 9
    with pytest.raises(GraphError):
        two_join(segment(4), segment(6))


def test_v_subgraph():
    t = triangle(4, 4, 2, ("u", "v", "w"))
    assert classify_factor(v_subgraph(t, {"u", "v"})) == Segment(4)
    assert v_subgraph(t, t.vertices) == t
    assert v_subgraph(t, ()).n == 0
    with pytest.raises(GraphError):
        v_subgraph(t, {"q"})


def test_decompose_examples():
    right = triangle(2, 2, 2)
    assert [classify_factor(f) for f in join_decompose(right)] == [Kbar(1)] * 3
    for ell in (2, 3, 4):
        kinds = [classify_factor(f) for f in join_decompose(triangle(2 * ell, 2, 2))]
        assert sorted(map(str, kinds)) == sorted(["Kbar(1)", f"S_{2 * ell}"])
    assert [classify_factor(f) for f in join_decompose(triangle(4, 4, 2))] == [T442()]
    assert join_decompose(LabeledGraph((), ())) == []
    assert classify_factor(triangle(4, 4, 4)) == Other()
    assert classify_factor(kbar(3)) == Kbar(3)


@given(even_graphs(max_vertices=6))
def test_decompose_rejoins_to_input(g):
    factors = join_decompose(g)
    assert join_all(factors) == g
    for f in factors:
        assert join_decompose(f) == [f]


@given(even_graphs(max_vertices=6))
def test_qp_blocks_never_put_six_next_to_four(g):
    kinds = [classify_factor(f) for f in join_decompose(g)]
    if not all(is_qp_block(k) for k in kinds):
        return
    for v in g.vertices:
        labels = sorted((g.label(v, w) for w in g.neighbors(v)), reverse=True)
        assert not (len(labels) >= 2 and labels[0] >= 6 and labels[1] >= 4)


@given(even_graphs(max_vertices=5))
def test_relabel_round_trip(g):
    mapping = {v: "n_" + v for v in g.vertices}
    back = {b: a for a, b in mapping.items()}
    assert g.relabel(mapping).relabel(back) == g
