"""Shared hypothesis strategies."""

from hypothesis import strategies as st

from artinqp.exactalg import LaurentPoly
from artinqp.graph import LabeledGraph


def laurent(nvars=3, max_terms=5, lo=-3, hi=3, coeff=9):
    term = st.tuples(st.tuples(*[st.integers(lo, hi)] * nvars), st.integers(-coeff, coeff))
    return st.lists(term, max_size=max_terms).map(
        lambda ts: LaurentPoly(nvars, _merge(ts)))


def _merge(ts):
    out = {}
    for e, c in ts:
        out[e] = out.get(e, 0) + c
    return out


@st.composite
def even_graphs(draw, min_vertices=1, max_vertices=4, labels=(2, 4, 6), edge_prob=True):
    n = draw(st.integers(min_vertices, max_vertices))
    names = [f"v{i}" for i in range(n)]
    choices = (None,) + tuple(labels) if edge_prob else tuple(labels)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            m = draw(st.sampled_from(choices))
            if m is not None:
                edges.append((names[i], names[j], m))
    return LabeledGraph.build(names, edges)
