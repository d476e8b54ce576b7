from fractions import Fraction as F
from itertools import combinations

import pytest
import sympy
from hypothesis import assume, given, settings, strategies as st

from artinqp import _kernels
from artinqp._kernels import _pykernels
from artinqp.alexander import AlexMatrix, alexander_matrix, cocyclic_matrix
from artinqp.charvar import (
    EmptyTorusError, TorsionTorus, charvar_depth, fitting_minors, format_torus_file,
    generic_rank, laurent_det, parse_torus_file, rank_on_torus, rank_on_torus_components,
    solve_pl_constraint, torus_canonicalize, torus_intersect, torus_parametrize,
)
from artinqp.charvar import rank as rank_mod
from artinqp.charvar.rank import rank_mod_p_at, rank_on_component
from artinqp.exactalg import LaurentPoly
from artinqp.exactalg.ratfunc import substitute
from artinqp.graph import segment, triangle
from artinqp.presentation import artin_presentation

from strategies import even_graphs, laurent

HALF = F(1, 2)
T1 = TorsionTorus(3, (((1, 1, 0), HALF), ((0, 0, 1), 0)))
T2 = TorsionTorus(3, (((1, 0, 1), HALF), ((0, 1, 0), 0)))
T3 = TorsionTorus(3, (((1, 1, 0), HALF), ((0, 1, -1), 0)))


@pytest.fixture(scope="module")
def m442():
    return alexander_matrix(artin_presentation(triangle(4, 4, 2)))


def matrix_of(entries):
    """AlexMatrix wrapper around a plain grid of Laurent polynomials."""
    nvars = entries[0][0].nvars
    nr, nc = len(entries), len(entries[0])
    return AlexMatrix(tuple(tuple(r) for r in entries), tuple(f"r{i}" for i in range(nr)),
                      ("",) * nr, ("",) * nr, tuple(f"c{j}" for j in range(nc)),
                      tuple(j % nvars for j in range(nc)), tuple(f"t{i}" for i in range(nvars)))


def to_sympy(p, syms):
    return sum((c * sympy.Mul(*(s ** e for s, e in zip(syms, ex))) for ex, c in p.items()),
               sympy.Integer(0))


# torus_canonicalize

def test_canonicalize_examples():
    assert not TorsionTorus(1, (((1,), 0), ((1,), HALF))).nonempty
    ok, dim, _ = torus_canonicalize(TorsionTorus.full(3))
    assert (ok, dim) == (True, 3)
    ok, dim, _ = torus_canonicalize(T1)
    assert (ok, dim) == (True, 1)


def test_hidden_inconsistency():
    # t0^2 = 1 and t0^2 = -1 only clash after reduction
    t = TorsionTorus(2, (((2, 1), 0), ((0, 1), HALF), ((2, 0), 0)))
    assert not t.nonempty
    with pytest.raises(EmptyTorusError):
        t.dimension
    with pytest.raises(EmptyTorusError):
        t.components()


angles = st.sampled_from([F(0), F(1, 2), F(1, 3), F(2, 3), F(1, 4), F(3, 4), F(1, 6)])


@st.composite
def tori(draw, n=None, max_constraints=3):
    n = n if n is not None else draw(st.integers(1, 4))
    rows = draw(st.lists(st.tuples(st.tuples(*[st.integers(-3, 3)] * n), angles),
                         max_size=max_constraints))
    return TorsionTorus(n, tuple(rows))


@given(tori())
def test_canonicalize_idempotent(t):
    ok, dim, c = torus_canonicalize(t)
    assume(ok)
    ok2, dim2, c2 = torus_canonicalize(c)
    assert (ok2, dim2, c2) == (ok, dim, c)


@given(tori())
def test_parametrization_satisfies_constraints(t):
    assume(t.nonempty)
    comps = t.components()
    for p in comps:
        assert p.nparams == t.dimension
        for a, q in t.constraints:
            assert sum(x * F(ang) for x, ang in zip(a, p.angles)) % 1 == q
            assert all(sum(x * b[j] for x, b in zip(a, p.exponents)) == 0
                       for j in range(p.nparams))
    # distinct components are disjoint translates
    assert len({p.angles for p in comps}) == len(comps)


def test_parametrize_examples():
    p = torus_parametrize(T1)
    assert p.angles == (HALF, 0, 0)
    assert p.exponents == ((-1,), (1,), (0,))
    full = torus_parametrize(TorsionTorus.full(2))
    assert full.exponents == ((1, 0), (0, 1)) and full.angles == (0, 0)
    pt = torus_parametrize(TorsionTorus(1, (((1,), F(1, 3)),)))
    assert pt.angles == (F(1, 3),) and pt.nparams == 0
    with pytest.raises(EmptyTorusError):
        torus_parametrize(TorsionTorus(1, (((1,), 0), ((1,), HALF))))


def test_non_saturated_lattice_splits():
    t = TorsionTorus(2, (((2, 0), 0),))
    assert t.dimension == 1
    assert sorted(p.angles[0] for p in t.components()) == [0, HALF]


# intersections

def test_intersect_examples():
    x = torus_intersect(T1, T3)
    assert x.nonempty and x.dimension == 0
    assert [p.angles for p in x.components()] == [(HALF, 0, 0)]
    assert torus_intersect(T1, T1).canonicalize() == T1.canonicalize()
    assert not torus_intersect(T1, TorsionTorus(3, (((0, 0, 1), HALF),))).nonempty
    with pytest.raises(ValueError):
        torus_intersect(T1, TorsionTorus.full(2))


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(tori(n), tori(n))))
def test_intersection_dimension_bound(pair):
    t1, t2 = pair
    x = torus_intersect(t1, t2)
    assume(x.nonempty)
    assert x.dimension <= min(t1.dimension, t2.dimension)


# p_l constraints

def test_solve_pl_constraint():
    a = (1, 1, 0)
    assert solve_pl_constraint(2, a, 3) == [TorsionTorus(3, ((a, HALF),))]
    assert [t.constraints[0][1] for t in solve_pl_constraint(3, a, 3)] == [F(1, 3), F(2, 3)]
    assert solve_pl_constraint(1, a, 3) == []


# text format

def test_torus_file_fixpoint():
    text = "t0*t1 = zeta(2,1)\nt2 = 1\n\nfull\n\nt0^-1*t2^3 = zeta(6,5)\n"
    blocks = parse_torus_file(text, 3)
    assert [line for _, line in blocks] == [1, 4, 6]
    assert blocks[0][0] == T1
    assert blocks[1][0] == TorsionTorus.full(3)
    out = format_torus_file([t for t, _ in blocks])
    assert [t for t, _ in parse_torus_file(out, 3)] == [t for t, _ in blocks]
    assert format_torus_file([t for t, _ in parse_torus_file(out, 3)]) == out


@given(st.lists(tori(3), min_size=1, max_size=4))
def test_torus_file_roundtrip(ts):
    text = format_torus_file(ts)
    assert [t for t, _ in parse_torus_file(text, 3)] == ts


def test_torus_file_errors():
    from artinqp.charvar.torus import TorusSyntaxError
    with pytest.raises(TorusSyntaxError, match="line 2"):
        parse_torus_file("t0 = 1\nt0 + t1 = 1\n", 2)
    with pytest.raises(TorusSyntaxError):
        parse_torus_file("t5 = 1\n", 2)
    with pytest.raises(TorusSyntaxError, match="exactly one"):
        parse_torus_file("t0 = t1 = 1\n", 2)


# ranks

def test_t442_ranks(m442):
    assert generic_rank(m442) == 2
    assert rank_on_torus(m442, TorsionTorus.full(3)) == 2
    assert charvar_depth(m442, TorsionTorus.full(3)) == 0
    for t in (T1, T2, T3):
        assert rank_on_torus(m442, t) <= 1
        assert charvar_depth(m442, t) >= 1
    with pytest.raises(EmptyTorusError):
        rank_on_torus(m442, torus_intersect(T1, TorsionTorus(3, (((0, 0, 1), HALF),))))
    with pytest.raises(ValueError):
        rank_on_torus(m442, TorsionTorus.full(2))


def test_b_block_rank_on_diagonal():
    # l = 4, k = 2: variables b.0, b.1, a.bar; t_abar * (b.0 b.1) = 1
    m = cocyclic_matrix(segment(4), "a", 2)
    t = TorsionTorus(3, (((1, 1, 1), 0),))
    assert generic_rank(m) == 2
    assert rank_on_torus(m, t) == 1


def test_zero_matrix_depth():
    z = LaurentPoly.zero(2)
    m = matrix_of([[z, z, z], [z, z, z]])
    assert generic_rank(m) == 0
    assert charvar_depth(m, TorsionTorus.full(2)) == 2


def small_matrices(nvars=2, max_dim=4):
    return st.tuples(st.integers(1, max_dim), st.integers(1, max_dim)).flatmap(
        lambda rc: st.lists(st.lists(laurent(nvars, max_terms=3, lo=-2, hi=2, coeff=3),
                                     min_size=rc[1], max_size=rc[1]),
                            min_size=rc[0], max_size=rc[0]))


def sympy_rank(entries, syms):
    return sympy.Matrix([[to_sympy(e, syms) for e in row] for row in entries]).rank(
        simplify=True)


@settings(max_examples=30)
@given(small_matrices())
def test_generic_rank_vs_sympy(entries):
    syms = sympy.symbols("x0 x1")
    assert generic_rank(matrix_of(entries)) == sympy_rank(entries, syms)


@settings(max_examples=30)
@given(small_matrices(nvars=3, max_dim=3), tori(3, max_constraints=1), tori(3, 2))
def test_rank_monotone_under_restriction(entries, t, extra):
    m = matrix_of(entries)
    assume(t.nonempty)
    sub = torus_intersect(t, extra)
    assume(sub.nonempty)
    assert rank_on_torus(m, TorsionTorus.full(3)) == generic_rank(m)
    assert rank_on_torus(m, sub) <= rank_on_torus(m, t) <= generic_rank(m)


@settings(max_examples=30)
@given(small_matrices(nvars=3, max_dim=3), tori(3, max_constraints=2))
def test_minors_vanish_iff_rank_drops(entries, t):
    assume(t.nonempty)
    m = matrix_of(entries)
    rt = rank_on_torus(m, t)
    comps = t.components()
    for r in range(1, min(m.nrows, m.ncols) + 1):
        vanish = all(substitute(f, p).is_zero() for f in fitting_minors(m, r) for p in comps)
        assert vanish == (rt <= r - 1)


@settings(max_examples=20)
@given(small_matrices(nvars=2, max_dim=3), tori(2, max_constraints=1),
       st.tuples(st.integers(2, 50), st.integers(2, 50)))
def test_mod_p_rank_is_lower_bound(entries, t, point):
    assume(t.nonempty)
    m = matrix_of(entries)
    for p in t.components():
        pt = point[:p.nparams]
        assert rank_mod_p_at(m, p, pt) <= rank_on_component(m, p)


# minors

def test_fitting_minor_example(m442):
    t0, t1, t2 = (LaurentPoly.var(i, 3) for i in range(3))
    minors = fitting_minors(m442, 2)
    idx = list(combinations(range(3), 2))
    # rows {0, 2}, columns {1, 2}
    assert minors[idx.index((0, 2)) * 3 + idx.index((1, 2))] == (t0 * t1 + 1) * (t0 - 1) * (t1 - 1)
    assert fitting_minors(m442, 1) == [e for row in m442.rows for e in row]
    assert all(f.is_zero() for f in fitting_minors(m442, 3))
    for bad in (0, 4):
        with pytest.raises(ValueError):
            fitting_minors(m442, bad)


@settings(max_examples=40)
@given(st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(laurent(3, max_terms=3), min_size=n, max_size=n),
                       min_size=n, max_size=n)))
def test_laurent_det_vs_sympy(entries):
    syms = sympy.symbols("x0 x1 x2")
    ours = to_sympy(laurent_det(entries), syms)
    ref = sympy.Matrix([[to_sympy(e, syms) for e in row] for row in entries]).det(
        method="berkowitz")
    assert sympy.simplify(ours - ref) == 0


# backends

@pytest.mark.skipif(_kernels.BACKEND != "cython", reason="compiled kernels not built")
@settings(max_examples=30)
@given(small_matrices(nvars=3, max_dim=4), tori(3, max_constraints=1))
def test_backends_agree(entries, t):
    from artinqp._kernels import _ckernels
    assume(t.nonempty)
    m = matrix_of(entries)
    results = []
    saved = rank_mod.K
    try:
        for mod in (_pykernels, _ckernels):
            rank_mod.K = mod
            results.append((generic_rank(m), rank_on_torus_components(m, t),
                            laurent_det([row[:len(entries)] for row in entries])
                            if len(entries) <= len(entries[0]) else None))
    finally:
        rank_mod.K = saved
    assert results[0] == results[1]


def test_backend_reported():
    assert _kernels.BACKEND in ("cython", "python")


@settings(max_examples=25)
@given(even_graphs(min_vertices=2, max_vertices=3, labels=(2, 4, 6)), st.integers(2, 3),
       st.data())
def test_certified_generic_rank_matches_elimination(g, k, data):
    u = data.draw(st.sampled_from(g.vertices))
    m = cocyclic_matrix(g, u, k)
    assert generic_rank(m) == generic_rank(m, certify=False)


@settings(max_examples=30)
@given(small_matrices(nvars=2, max_dim=4))
def test_certified_generic_rank_plain_matrices(entries):
    m = matrix_of(entries)
    assert generic_rank(m) == generic_rank(m, certify=False)
