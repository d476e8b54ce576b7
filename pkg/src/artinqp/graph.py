"""Labeled graphs with even edge labels, 2-joins and the finest 2-join
factorization."""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Sequence, Union

NAME_RE = re.compile(r"^[A-Za-z0-9_]+$")


class GraphError(ValueError):
    """Invalid labeled graph.  ``code`` names the failed rule."""

    def __init__(self, code: str, message: str, line: int | None = None):
        self.code = code
        self.line = line
        super().__init__(message)


@dataclass(frozen=True)
class LabeledGraph:
    """A simple graph whose edges carry even labels >= 2.

    Vertices are sorted names; edges are ``((a, b), label)`` with ``a < b``,
    sorted.  Build instances through :func:`validate_graph` or
    :meth:`build` so these invariants hold.
    """

    vertices: tuple[str, ...]
    edges: tuple[tuple[tuple[str, str], int], ...]

    @classmethod
    def build(cls, vertices: Iterable[str],
              edges: Iterable[tuple[str, str, int]] | Mapping = ()) -> "LabeledGraph":
        if isinstance(edges, Mapping):
            edges = [(a, b, m) for (a, b), m in edges.items()]
        return validate_graph(list(vertices), list(edges))

    @property
    def n(self) -> int:
        return len(self.vertices)

    def label(self, a: str, b: str) -> int | None:
        return self._labels().get((a, b) if a < b else (b, a))

    def _labels(self) -> dict:
        cache = self.__dict__.get("_label_cache")
        if cache is None:
            cache = {pair: m for pair, m in self.edges}
            object.__setattr__(self, "_label_cache", cache)
        return cache

    def neighbors(self, v: str) -> list[str]:
        return [w for w in self.vertices if w != v and self.label(v, w) is not None]

    def is_complete(self) -> bool:
        return len(self.edges) == self.n * (self.n - 1) // 2

    def is_right_angled(self) -> bool:
        return all(m == 2 for _, m in self.edges)

    def is_strictly_even(self) -> bool:
        return any(m > 2 for _, m in self.edges)

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            v = stack.pop()
            for w in self.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def relabel(self, mapping: Mapping[str, str]) -> "LabeledGraph":
        return LabeledGraph.build(
            [mapping[v] for v in self.vertices],
            [(mapping[a], mapping[b], m) for (a, b), m in self.edges],
        )

    def to_text(self) -> str:
        lines = [f"vertex {v}" for v in self.vertices]
        lines += [f"edge {a} {b} {m}" for (a, b), m in self.edges]
        return "\n".join(lines) + "\n"

    def __str__(self):
        es = ", ".join(f"{a}-{b}:{m}" for (a, b), m in self.edges)
        return f"Graph({' '.join(self.vertices)}; {es})"


def validate_graph(vertices: Sequence[str],
                   edges: Sequence[tuple[str, str, int]],
                   lines: Sequence[int] | None = None) -> LabeledGraph:
    """Check the rules and return the canonical graph.

    ``lines`` optionally gives a source line number per edge for messages.
    """
    seen = set()
    for v in vertices:
        if not isinstance(v, str) or not NAME_RE.match(v):
            raise GraphError("bad name", f"bad vertex name {v!r}")
        if v in seen:
            raise GraphError("duplicate vertex", f"duplicate vertex {v!r}")
        seen.add(v)
    labels: dict = {}
    for idx, (a, b, m) in enumerate(edges):
        line = lines[idx] if lines else None
        where = f" at line {line}" if line is not None else ""
        if a == b:
            raise GraphError("loop", f"loop{where}", line)
        if a not in seen or b not in seen:
            raise GraphError("dangling endpoint", f"dangling endpoint{where}", line)
        if not isinstance(m, int) or isinstance(m, bool):
            raise GraphError("bad label", f"non-integer label{where}", line)
        if m % 2:
            raise GraphError("odd label", f"odd label{where}", line)
        if m < 2:
            raise GraphError("label < 2", f"label < 2{where}", line)
        pair = (a, b) if a < b else (b, a)
        if pair in labels:
            raise GraphError("duplicate edge", f"duplicate edge{where}", line)
        labels[pair] = m
    return LabeledGraph(tuple(sorted(vertices)), tuple(sorted(labels.items())))


def two_join(g1: LabeledGraph, g2: LabeledGraph) -> LabeledGraph:
    """Disjoint union plus every cross edge with label 2."""
    clash = set(g1.vertices) & set(g2.vertices)
    if clash:
        raise GraphError("name collision", f"vertex names shared: {sorted(clash)}")
    edges = [(a, b, m) for (a, b), m in g1.edges + g2.edges]
    edges += [(a, b, 2) for a in g1.vertices for b in g2.vertices]
    return LabeledGraph.build(g1.vertices + g2.vertices, edges)


def join_all(graphs: Sequence[LabeledGraph]) -> LabeledGraph:
    out = LabeledGraph((), ())
    for g in graphs:
        out = two_join(out, g)
    return out


def v_subgraph(g: LabeledGraph, keep: Iterable[str]) -> LabeledGraph:
    keep = set(keep)
    unknown = keep - set(g.vertices)
    if unknown:
        raise GraphError("unknown vertex", f"unknown vertices {sorted(unknown)}")
    return LabeledGraph(
        tuple(v for v in g.vertices if v in keep),
        tuple((p, m) for p, m in g.edges if p[0] in keep and p[1] in keep),
    )


def join_decompose(g: LabeledGraph) -> list[LabeledGraph]:
    """Finest 2-join factorization.

    Two vertices are related when they are not joined by a label-2 edge; the
    factors are the connected components of that relation.
    """
    parent = {v: v for v in g.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in combinations(g.vertices, 2):
        if g.label(a, b) != 2:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict = {}
    for v in g.vertices:
        groups.setdefault(find(v), []).append(v)
    factors = [v_subgraph(g, vs) for vs in groups.values()]
    return sorted(factors, key=lambda f: f.vertices[0])


# factor kinds

@dataclass(frozen=True)
class Kbar:
    r: int

    def __str__(self):
        return f"Kbar({self.r})"


@dataclass(frozen=True)
class Segment:
    label: int

    def __str__(self):
        return f"S_{self.label}"


@dataclass(frozen=True)
class T442:
    def __str__(self):
        return "T(4,4,2)"


@dataclass(frozen=True)
class Other:
    def __str__(self):
        return "Other"


FactorKind = Union[Kbar, Segment, T442, Other]


def classify_factor(g: LabeledGraph) -> FactorKind:
    if g.n >= 1 and not g.edges:
        return Kbar(g.n)
    if g.n == 2 and len(g.edges) == 1 and g.edges[0][1] >= 4:
        return Segment(g.edges[0][1])
    if g.n == 3 and len(g.edges) == 3 and sorted(m for _, m in g.edges) == [2, 4, 4]:
        return T442()
    return Other()


def is_qp_block(kind: FactorKind) -> bool:
    return isinstance(kind, (Kbar, Segment, T442))


# standard graphs

def kbar(r: int, prefix: str = "x") -> LabeledGraph:
    return LabeledGraph.build([f"{prefix}{i}" for i in range(r)], [])


def segment(label: int, names: tuple[str, str] = ("a", "b")) -> LabeledGraph:
    return LabeledGraph.build(names, [(names[0], names[1], label)])


def triangle(l01: int, l02: int, l12: int,
             names: tuple[str, str, str] = ("a", "b", "c")) -> LabeledGraph:
    """Triangle on names (x0, x1, x2) with the given labels on x0x1, x0x2, x1x2."""
    x0, x1, x2 = names
    return LabeledGraph.build(names, [(x0, x1, l01), (x0, x2, l02), (x1, x2, l12)])


def quad_graph(which: str) -> LabeledGraph:
    """The three 4-vertex complete graphs with labels in {2, 4} that carry a
    three-edge tree of 4-labels and no T(4,4,4)."""
    if which == "a":
        return LabeledGraph.build(
            ["u", "w1", "w2", "w3"],
            [("u", "w1", 4), ("u", "w2", 4), ("u", "w3", 4),
             ("w1", "w2", 2), ("w1", "w3", 2), ("w2", "w3", 2)])
    if which == "b":
        return LabeledGraph.build(
            ["u", "v", "w1", "w2"],
            [("u", "v", 2), ("u", "w1", 4), ("u", "w2", 4),
             ("v", "w1", 4), ("v", "w2", 2), ("w1", "w2", 2)])
    if which == "c":
        return LabeledGraph.build(
            ["u", "v", "w1", "w2"],
            [("u", "w1", 4), ("u", "w2", 4), ("v", "w1", 4),
             ("v", "w2", 4), ("w1", "w2", 2), ("u", "v", 2)])
    raise ValueError(f"unknown quad graph {which!r}")
