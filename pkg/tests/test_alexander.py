import pytest
from hypothesis import given, strategies as st

from artinqp.alexander import (
    alexander_matrix, cocyclic_matrix, fox_closed_A, fox_closed_B, fox_derivative,
)
from artinqp.exactalg import LaurentPoly
from artinqp.graph import kbar, quad_graph, segment, triangle
from artinqp.presentation import (
    Presentation, Relator, Word, abelianize, artin_presentation, artin_relator,
    b_relators, copy_name, ubar,
)

from golden import (
    QA_CLOSING_ROWS, QA_MATRIX, QA_NAMES, QA_TYPO, T442_MATRIX, T442_NAMES,
    T444_CLOSING_ROWS, T444_MATRIX, T444_NAMES, display_problems, parse_matrix,
)
from strategies import even_graphs


def free_ab(*names):
    p = Presentation(tuple(names), ())
    return abelianize(p)


AB = free_ab("a", "b", "c")
ta, tb, tc = (LaurentPoly.var(i, 3) for i in range(3))


def test_fox_examples():
    comm = Word([("a", 1), ("b", 1), ("a", -1), ("b", -1)])
    assert fox_derivative(comm, "a", AB) == 1 - tb
    assert fox_derivative(Word.gens("a"), "b", AB) == 0
    assert fox_derivative(Word([("a", -1)]), "a", AB) == -(ta ** -1)
    with pytest.raises(KeyError):
        fox_derivative(comm, "z", AB)


words = st.lists(st.tuples(st.sampled_from("abc"), st.sampled_from([-2, -1, 1, 2])),
                 max_size=12).map(Word)


@given(words)
def test_fundamental_identity(w):
    total = LaurentPoly.zero(3)
    for g, t in zip("abc", (ta, tb, tc)):
        total = total + fox_derivative(w, g, AB) * (t - 1)
    phi = LaurentPoly.monomial([w.exponent_sum(g) for g in "abc"])
    assert total == phi - 1


@given(words, words)
def test_product_rule(u, v):
    phi_u = LaurentPoly.monomial([u.exponent_sum(g) for g in "abc"])
    for g in "abc":
        assert fox_derivative(u * v, g, AB) == \
            fox_derivative(u, g, AB) + phi_u * fox_derivative(v, g, AB)


def test_closed_a_examples():
    assert fox_closed_A(1, ta, tb, "a") == 1 - tb
    assert fox_closed_A(2, ta, tb, "b") == (ta - 1) * (1 + ta * tb)
    assert fox_closed_A(3, ta, tb, "other") == 0


@pytest.mark.parametrize("ell", range(1, 7))
def test_closed_a_matches_generic(ell):
    w = artin_relator("a", "b", ell)
    assert fox_derivative(w, "a", AB) == fox_closed_A(ell, ta, tb, "a")
    assert fox_derivative(w, "b", AB) == fox_closed_A(ell, ta, tb, "b")


@pytest.mark.parametrize("ell, k", [(2, 2), (3, 2), (5, 3), (4, 4), (7, 3)])
def test_closed_b_matches_generic(ell, k):
    rels = b_relators("w", "u", ell, k)
    gens = tuple(copy_name("w", j) for j in range(k)) + (ubar("u"),)
    # the closed form lives in H_1 of the subgroup, where t_{w,i} = t_{w,i+d}
    ab = abelianize(Presentation(gens, tuple(rels)))
    xs = [LaurentPoly.var(ab.index[g], ab.free_rank) for g in gens[:k]]
    y = LaurentPoly.var(ab.index[gens[k]], ab.free_rank)
    for i, r in enumerate(rels):
        for pos, g in enumerate(gens):
            assert fox_derivative(r.word, g, ab) == fox_closed_B(ell, k, i, xs, y, pos)
        assert fox_closed_B(ell, k, i, xs, y, None) == 0


def test_matrix_examples():
    comm = Presentation(("a", "b"), (Relator(Word.gens("a", "b"), Word.gens("b", "a"),
                                             "Other", "c"),))
    m = alexander_matrix(comm)
    assert [e for e in m.rows[0]] == [1 - LaurentPoly.var(1, 2), LaurentPoly.var(0, 2) - 1]
    empty = alexander_matrix(artin_presentation(kbar(2)))
    assert empty.nrows == 0 and empty.ncols == 2
    cm = cocyclic_matrix(kbar(2, "u"), "u0", 2)
    assert (cm.nrows, cm.ncols) == (0, 3)


def test_t442_matrix_is_the_published_one():
    m = alexander_matrix(artin_presentation(triangle(4, 4, 2)))
    assert [list(r) for r in m.rows] == parse_matrix(T442_MATRIX, T442_NAMES)


def _check_cocyclic_display(m, display, closing_rows, g, u):
    assert display_problems(m, display, closing_rows, g, u) == []


def test_t444_matrix_is_the_published_one():
    g = triangle(4, 4, 4, ("u", "v", "w"))
    m = cocyclic_matrix(g, "u", 2)
    assert m.columns == ("v.0", "w.0", "v.1", "w.1", "u.bar")
    display = parse_matrix(T444_MATRIX, T444_NAMES)
    _check_cocyclic_display(m, display, T444_CLOSING_ROWS, g, "u")
    assert [list(r) for r in m.rows[:2]] == display[:2]


def test_quad_a_matrix_is_the_published_one():
    g = quad_graph("a")
    m = cocyclic_matrix(g, "u", 2)
    assert m.columns == ("w1.0", "w2.0", "w3.0", "w1.1", "w2.1", "w3.1", "u.bar")
    display = parse_matrix(QA_MATRIX, QA_NAMES)
    row, col, fixed = QA_TYPO
    printed = display[row]
    # the printed row fails the Fox identity; the corrected one is a Fox row
    kernel = m.fox_kernel_vector()
    assert sum((a * b for a, b in zip(printed, kernel)), LaurentPoly.zero(7)) != 0
    display[row] = list(printed)
    display[row][col] = LaurentPoly.parse(fixed, QA_NAMES)
    _check_cocyclic_display(m, display, QA_CLOSING_ROWS, g, "u")
    assert [list(r) for r in m.rows[:6]] == display[:6]


@given(even_graphs(max_vertices=4, labels=(2, 4, 6)), st.integers(2, 4), st.data())
def test_block_layout_and_fox_identity(g, k, data):
    u = data.draw(st.sampled_from(g.vertices))
    m = cocyclic_matrix(g, u, k)  # raises if an entry leaves the layout
    assert m.satisfies_fox_identity()
    assert m.nrows == len([r for r in m.row_names])


def test_json_dump_shape():
    m = cocyclic_matrix(segment(4, ("u", "w")), "u", 2)
    obj = m.to_json_obj()
    assert obj["columns"] == ["w.0", "w.1", "u.bar"]
    assert len(obj["matrix"]) == 2 and all(len(r) == 3 for r in obj["matrix"])
    assert obj["blocks"]["B(w)"] == {"rows": [0, 1], "columns": [0, 1, 2]}
