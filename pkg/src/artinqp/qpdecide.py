"""Quasi-projectivity decisions for even Artin groups.

A graph gives a quasi-projective group exactly when its finest 2-join
factorization uses only edgeless graphs, single edges with label >= 4 and
the triangle T(4,4,2).  Any other factor contains a forbidden pattern; for
most patterns a co-cyclic obstruction witness is tabulated below.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Optional, Union

from .charvar.obstruction import ObstructionReport, ObstructionWitness, verify_obstruction
from .charvar.torus import TorsionTorus
from .graph import (
    FactorKind, LabeledGraph, classify_factor, is_qp_block, join_decompose, quad_graph,
    v_subgraph,
)
from .presentation import abelianize, cocyclic_presentation, copy_name, ubar


class CoverageError(RuntimeError):
    """No forbidden pattern found in a factor that should contain one."""


THEOREMS = {
    "NonCompleteStrictlyEven": "a strictly even graph that is not complete gives a "
                               "non-quasi-projective group",
    "NonCompleteRightAngled": "a right-angled graph gives a quasi-projective group only "
                              "when it is a 2-join of edgeless graphs",
    "Tri1": "a v-supergraph of T(2r,2k,2l) with r >= 3 and k >= 2 is not quasi-projective",
    "Tri2_T444": "a v-supergraph of T(4,4,4) is not quasi-projective",
    "Quad_a": "a v-supergraph of the star of three 4-labels over a triangle of 2-labels "
              "is not quasi-projective",
    "Quad_b": "a v-supergraph of the 4-vertex graph with a 4,4,4 path and 2-labels "
              "elsewhere is not quasi-projective",
    "Quad_c": "a v-supergraph of the 4-cycle of 4-labels with 2-labelled diagonals "
              "is not quasi-projective",
}


@dataclass(frozen=True)
class PatternKind:
    kind: str
    params: tuple = ()

    @property
    def theorem(self) -> str:
        return THEOREMS[self.kind]

    @property
    def display(self) -> str:
        if self.kind == "Tri1":
            r, k, l = self.params
            return f"T({2 * r},{2 * k},{2 * l})"
        if self.kind == "Tri2_T444":
            return "T(4,4,4)"
        if self.kind.startswith("Quad_"):
            return f"quad-{self.kind[-1]}"
        if self.kind == "NonCompleteStrictlyEven":
            return "non-complete strictly even"
        return "non-complete right-angled"

    def __str__(self):
        if self.params:
            return f"{self.kind}{self.params}"
        return self.kind


@dataclass(frozen=True)
class QP:
    factors: tuple
    factor_vertices: tuple

    def text(self) -> str:
        if not self.factors:
            return "QP: empty graph"
        return "QP: " + " *₂ ".join(str(f) for f in self.factors)


@dataclass(frozen=True)
class NotQP:
    pattern: PatternKind
    embedding: dict = field(hash=False)
    witness: Optional[ObstructionWitness] = None
    factor_vertices: tuple = ()

    def text(self) -> str:
        return f"NOT QP ({self.pattern.display} pattern)"


Verdict = Union[QP, NotQP]


# pattern scan

def _triangle_roles(g: LabeledGraph, tri) -> tuple[str, str, str, int, int, int]:
    """Apex u shared by the two largest labels, v across the largest, w across
    the second; ties broken by vertex name."""
    best = None
    for u in tri:
        others = sorted(x for x in tri if x != u)
        for v, w in (others, others[::-1]):
            luv, luw, lvw = g.label(u, v), g.label(u, w), g.label(v, w)
            key = (-luv, -luw, u, v)
            if luv >= luw >= lvw and (best is None or key < best[0]):
                best = (key, (u, v, w, luv, luw, lvw))
    return best[1]


def forbidden_pattern_scan(f: LabeledGraph) -> tuple[PatternKind, dict]:
    """Locate a forbidden pattern inside a factor classified as Other.

    Order: non-completeness, then a vertex with labels >= 6 and >= 4, then
    T(4,4,4), then the three 4-vertex graphs a, b, c.
    """
    if not f.is_complete():
        kind = "NonCompleteStrictlyEven" if f.is_strictly_even() else "NonCompleteRightAngled"
        return PatternKind(kind), {v: v for v in f.vertices}
    for tri in combinations(f.vertices, 3):
        labels = sorted((f.label(a, b) for a, b in combinations(tri, 2)), reverse=True)
        if labels[0] >= 6 and labels[1] >= 4:
            u, v, w, luv, luw, lvw = _triangle_roles(f, tri)
            return PatternKind("Tri1", (luv // 2, luw // 2, lvw // 2)), {"u": u, "v": v, "w": w}
    for tri in combinations(f.vertices, 3):
        if all(f.label(a, b) == 4 for a, b in combinations(tri, 2)):
            return PatternKind("Tri2_T444"), dict(zip(("u", "v", "w"), tri))
    for which in "abc":
        pat = quad_graph(which)
        pv = pat.vertices
        for quad in combinations(f.vertices, 4):
            for perm in permutations(quad):
                emb = dict(zip(pv, perm))
                if all(f.label(emb[a], emb[b]) == m for (a, b), m in pat.edges):
                    return PatternKind(f"Quad_{which}"), emb
    raise CoverageError(f"no forbidden pattern found in factor {f}")


# witnesses

@dataclass(frozen=True)
class Binomial:
    """prod g^e = exp(2 pi i angle), over co-cyclic generator names."""

    mono: tuple
    angle: Fraction

    def __str__(self):
        lhs = "*".join(g if e == 1 else f"{g}^{e}" for g, e in self.mono)
        if self.angle == 0:
            return f"{lhs} = 1"
        return f"{lhs} = zeta({self.angle.denominator},{self.angle.numerator})"


@dataclass(frozen=True)
class PL:
    """p_l(prod g^e) = 0."""

    l: int
    mono: tuple

    def __str__(self):
        inner = "*".join(g if e == 1 else f"{g}^{e}" for g, e in self.mono)
        return f"p_{self.l}({inner}) = 0"


def _mono(*gens: str) -> tuple:
    acc: dict = {}
    for g in gens:
        acc[g] = acc.get(g, 0) + 1
    return tuple(sorted(acc.items()))


def _pin(*gens: str) -> list:
    return [Binomial(_mono(g), Fraction(0)) for g in gens]


def _bar(v: str, k: int) -> list[str]:
    return [copy_name(v, j) for j in range(k)]


def _witness_ideals(pattern: PatternKind, emb: dict) -> tuple[str, int, list, list]:
    """(base vertex, k, I1, I2) in co-cyclic generator names."""
    kind = pattern.kind
    if kind == "Tri2_T444":
        u, v, w = emb["u"], emb["v"], emb["w"]
        ub = ubar(u)
        common = [Binomial(_mono(ub, *_bar(v, 2)), Fraction(0)),
                  Binomial(_mono(ub, *_bar(w, 2)), Fraction(0))]
        return u, 2, common + [PL(2, _mono(copy_name(v, 0), copy_name(w, 0)))], \
            common + [PL(2, _mono(copy_name(v, 1), copy_name(w, 1)))]
    if kind == "Tri1":
        r, k, l = pattern.params
        u, v, w = emb["u"], emb["v"], emb["w"]
        ub = ubar(u)
        c = lambda x, j: copy_name(x, j)  # noqa: E731
        if r >= 4:
            p = Binomial(_mono(ub, *_bar(v, r)), Fraction(0))
            return u, r, [p] + _pin(c(v, 0), c(v, 1), c(w, 0), c(w, 1)), \
                [p] + _pin(c(v, 0), c(v, 2), c(w, 0), c(w, 2))
        if (r, k) == (3, 3):
            return u, 3, _pin(ub, c(v, 1), c(v, 2), c(w, 0), c(w, 1)), \
                _pin(ub, c(v, 1), c(v, 2), c(w, 0), c(w, 2))
        if (r, k, l) == (3, 2, 2):
            # base vertex w (opposite the 6-edge): W = {u, v} carries A_3
            wb = ubar(w)
            common = [Binomial(_mono(wb, *_bar(u, 2)), Fraction(0)),
                      Binomial(_mono(wb, *_bar(v, 2)), Fraction(0))]
            return w, 2, common + [PL(3, _mono(c(u, 0), c(v, 0)))], \
                common + [PL(3, _mono(c(u, 1), c(v, 1)))]
        if (r, k, l) == (3, 2, 1):
            # base vertex v: W = {u}, V_{2,v} = {w}
            vb = ubar(v)
            close = Binomial(_mono(vb, *_bar(u, 3)), Fraction(0))
            p = lambda i: Binomial(_mono(w, c(u, i)), Fraction(1, 2))  # noqa: E731
            return v, 3, [p(0), p(1), close], [p(0), p(2), close]
        raise ValueError(f"no witness for {pattern}")
    if kind == "Quad_a":
        u, w1, w2, w3 = emb["u"], emb["w1"], emb["w2"], emb["w3"]
        c = copy_name
        return u, 2, _pin(ubar(u), c(w1, 1), c(w2, 0), c(w2, 1), c(w3, 0)), \
            _pin(ubar(u), c(w1, 0), c(w1, 1), c(w2, 1), c(w3, 0))
    if kind == "Quad_b":
        u, v, w1, w2 = emb["u"], emb["v"], emb["w1"], emb["w2"]
        c = copy_name
        return u, 2, _pin(v, ubar(u), c(w1, 1), c(w2, 0)), \
            _pin(ubar(u), c(w1, 1), c(w2, 0)) + [Binomial(_mono(c(w1, 0), v), Fraction(1, 2))]
    if kind == "Quad_c":
        u, v, w1, w2 = emb["u"], emb["v"], emb["w1"], emb["w2"]
        c = copy_name
        base = _pin(ubar(u), c(w1, 0), c(w2, 1))
        return u, 2, base + [Binomial(_mono(c(w1, 1), v), Fraction(1, 2))], \
            base + [Binomial(_mono(c(w2, 0), v), Fraction(1, 2))]
    raise ValueError(f"no witness for {pattern}")


def ideal_to_tori(gens: list, index: dict, n: int) -> list[TorsionTorus]:
    """Torus components of the zero set of a list of Binomial / PL
    generators, in abelianization coordinates."""
    choices = []
    for gen in gens:
        a = [0] * n
        for g, e in gen.mono:
            a[index[g]] += e
        a = tuple(a)
        if isinstance(gen, Binomial):
            choices.append([(a, gen.angle)])
        else:
            choices.append([(a, Fraction(j, gen.l)) for j in range(1, gen.l)])
    return [TorsionTorus(n, tuple(combo)) for combo in product(*choices)]


def witness_for(pattern: PatternKind, embedding: dict,
                g: LabeledGraph) -> Optional[ObstructionWitness]:
    """The tabulated witness in the co-cyclic coordinates of the full graph.

    Generators belonging to vertices outside the embedded pattern are pinned
    to 1.  Non-complete patterns have no tabulated witness.
    """
    if pattern.kind.startswith("NonComplete"):
        return None
    base, k, i1, i2 = _witness_ideals(pattern, embedding)
    image = set(embedding.values())
    p = cocyclic_presentation(g, base, k)
    ab = abelianize(p)
    outside = [x for x in p.generators if x.split(".")[0] not in image]
    pins = _pin(*outside)
    n = ab.free_rank
    t1 = ideal_to_tori(i1 + pins, ab.index, n)
    t2 = ideal_to_tori(i2 + pins, ab.index, n)
    ideals = (tuple(str(x) for x in i1), tuple(str(x) for x in i2), tuple(outside))
    return ObstructionWitness(base, k, tuple(t1), tuple(t2), ideals)


def decide_qp(g: LabeledGraph, with_witness: bool = True) -> Verdict:
    factors = join_decompose(g)
    kinds = [classify_factor(f) for f in factors]
    if all(is_qp_block(kd) for kd in kinds):
        return QP(tuple(kinds), tuple(f.vertices for f in factors))
    bad = next(f for f, kd in zip(factors, kinds) if not is_qp_block(kd))
    pattern, emb = forbidden_pattern_scan(bad)
    witness = witness_for(pattern, emb, g) if with_witness else None
    return NotQP(pattern, emb, witness, bad.vertices)


def decide_and_verify(g: LabeledGraph, jobs: int = 1) -> tuple[Verdict, Optional[ObstructionReport]]:
    verdict = decide_qp(g)
    if isinstance(verdict, NotQP) and verdict.witness is not None:
        report = verify_obstruction(g, verdict.witness, jobs=jobs)
        return verdict, report
    return verdict, None


def brute_force_qp(g: LabeledGraph) -> bool:
    """Independent check: try every bipartition into two 2-joined parts."""
    memo: dict = {}

    def qp(vs: frozenset) -> bool:
        if vs in memo:
            return memo[vs]
        sub = v_subgraph(g, vs)
        ok = is_qp_block(classify_factor(sub)) if vs else True
        if not ok:
            items = sorted(vs)
            first, rest = items[0], items[1:]
            for mask in range(1 << len(rest)):
                a = {first} | {rest[i] for i in range(len(rest)) if mask >> i & 1}
                b = vs - a
                if not b:
                    continue
                if all(g.label(x, y) == 2 for x in a for y in b) and qp(frozenset(a)) \
                        and qp(frozenset(b)):
                    ok = True
                    break
        memo[vs] = ok
        return ok

    return qp(frozenset(g.vertices))


def factor_kind_name(kd: FactorKind) -> str:
    return str(kd)
