"""Words, Artin presentations, co-cyclic subgroup presentations and
abelianization."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

from .exactalg.lattice import snf
from .graph import GraphError, LabeledGraph


class Word:
    """A freely reduced word: a tuple of (generator, nonzero exponent)."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[tuple[str, int]] = ()):
        out: list[list] = []
        for g, e in letters:
            if not e:
                continue
            if out and out[-1][0] == g:
                out[-1][1] += e
                if not out[-1][1]:
                    out.pop()
            else:
                out.append([g, e])
        self.letters = tuple((g, e) for g, e in out)

    @classmethod
    def gens(cls, *names: str) -> "Word":
        return cls((n, 1) for n in names)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word((g, -e) for g, e in reversed(self.letters))

    def __pow__(self, k: int) -> "Word":
        if k < 0:
            return self.inverse() ** (-k)
        return Word(self.letters * k)

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __len__(self):
        """Length as a word in the generators and their inverses."""
        return sum(abs(e) for _, e in self.letters)

    def expanded(self) -> list[tuple[str, int]]:
        """One (generator, +-1) entry per letter."""
        out = []
        for g, e in self.letters:
            out.extend([(g, 1 if e > 0 else -1)] * abs(e))
        return out

    def exponent_sum(self, g: str) -> int:
        return sum(e for h, e in self.letters if h == g)

    def generators(self) -> set[str]:
        return {g for g, _ in self.letters}

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(g if e == 1 else f"{g}^{e}" for g, e in self.letters)

    def __repr__(self):
        return f"Word({str(self)!r})"


@dataclass(frozen=True)
class Relator:
    """The relation lhs = rhs, stored alongside the relator lhs * rhs^-1.

    ``tag`` is the provenance (ArtinA, CocyclicA, CocyclicB, Other) and
    ``block`` the row block of the co-cyclic Alexander matrix.
    """

    lhs: Word
    rhs: Word
    tag: str
    name: str
    block: str = ""

    @property
    def word(self) -> Word:
        return self.lhs * self.rhs.inverse()

    def __str__(self):
        return f"{self.lhs} = {self.rhs}"


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Relator, ...]
    info: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        known = set(self.generators)
        for r in self.relators:
            missing = r.word.generators() - known
            if missing:
                raise ValueError(f"relator {r.name} uses undeclared {sorted(missing)}")

    def words(self) -> list[Word]:
        return [r.word for r in self.relators]

    def to_text(self, annotate: bool = False) -> str:
        lines = ["generators: " + " ".join(self.generators)]
        lines.append(f"relators: {len(self.relators)}")
        for r in self.relators:
            line = str(r)
            if annotate:
                line += f"    # {r.tag} {r.name}"
            lines.append(line)
        return "\n".join(lines) + "\n"


def artin_relator(u: str, v: str, ell: int) -> Word:
    """(uv)^ell (vu)^-ell."""
    if u == v:
        raise ValueError("artin_relator needs two distinct generators")
    if ell < 1:
        raise ValueError("artin_relator needs ell >= 1")
    return Word.gens(u, v) ** ell * Word.gens(v, u) ** (-ell)


def _artin_relation(a: str, b: str, ell: int, tag: str, name: str, block: str = "") -> Relator:
    return Relator(Word.gens(a, b) ** ell, Word.gens(b, a) ** ell, tag, name, block)


def artin_presentation(g: LabeledGraph) -> Presentation:
    rels = tuple(_artin_relation(a, b, m // 2, "ArtinA", f"A({a},{b})")
                 for (a, b), m in g.edges)
    return Presentation(g.vertices, rels, {"kind": "artin"})


def bracket_word(x: Sequence[str], y: str, i: int, eps: int, l: int) -> Word:
    """The word <x, y>_{i,eps}^l.

    Reads the cyclic sequence x_0, ..., x_{k-1}, y starting at position i
    (0 <= i <= k; i = k starts at y) for c(k+1) + r + eps letters, where
    l = ck + r.
    """
    k = len(x)
    if k < 1:
        raise ValueError("bracket_word needs k >= 1")
    if not 0 <= i <= k:
        raise ValueError("start position must lie in 0..k")
    if eps not in (0, 1):
        raise ValueError("eps must be 0 or 1")
    if l < 1:
        raise ValueError("bracket_word needs l >= 1")
    c, r = divmod(l, k)
    alphabet = list(x) + [y]
    length = c * (k + 1) + r + eps
    return Word.gens(*(alphabet[(i + j) % (k + 1)] for j in range(length)))


def bracket_eps(i: int, ell: int, k: int) -> int:
    return 0 if i < k - ell % k else 1


def ubar(u: str) -> str:
    return f"{u}.bar"


def copy_name(w: str, j: int) -> str:
    return f"{w}.{j}"


def cocyclic_split(g: LabeledGraph, u: str) -> tuple[list[str], list[str]]:
    """(V_{2,u}, W): label-2 neighbours of u and every other vertex but u."""
    v2 = [v for v in g.vertices if v != u and g.label(u, v) == 2]
    w = [v for v in g.vertices if v != u and g.label(u, v) != 2]
    return v2, w


def _check_cocyclic(g: LabeledGraph, u: str, k: int):
    if u not in g.vertices:
        raise GraphError("unknown vertex", f"{u!r} is not a vertex")
    if not isinstance(k, int) or k < 2:
        raise ValueError("co-cyclic index k must be >= 2")


def b_relators(w: str, u: str, ell: int, k: int, block: str = "") -> list[Relator]:
    xs = [copy_name(w, j) for j in range(k)]
    y = ubar(u)
    out = []
    for i in range(k):
        eps = bracket_eps(i, ell, k)
        out.append(Relator(bracket_word(xs, y, i, eps, ell),
                           bracket_word(xs, y, i + 1, eps, ell),
                           "CocyclicB", f"B{i}({w})", block))
    return out


def closing_relator(w: str, u: str, ell: int, k: int) -> Relator:
    """<w,ubar>_k = <w,ubar>_0, a consequence of the B-relations when k
    divides ell.  Not part of the standard presentation; used to compare with
    displays that list it in place of the last B-relation."""
    if ell % k:
        raise ValueError("closing relator needs k | ell")
    xs = [copy_name(w, j) for j in range(k)]
    return Relator(bracket_word(xs, ubar(u), k, 0, ell),
                   bracket_word(xs, ubar(u), 0, 0, ell),
                   "Other", f"Bclose({w})")


def cocyclic_presentation(g: LabeledGraph, u: str, k: int) -> Presentation:
    """Standard presentation of the kernel of A_g -> Z_k, u -> 1, v -> 0.

    Generator order: W-copies grouped by coset, then V_{2,u}, then ubar.
    Relator order: per coset j the A-relations among copies (blocks
    ``copy{j}``), then the A-relations inside V_{2,u} (``A_k``), then the
    commutations of ubar with V_{2,u} (``R1``), then the B-relations
    (``B(w)``).
    """
    _check_cocyclic(g, u, k)
    v2, wl = cocyclic_split(g, u)
    v2set = set(v2)
    wset = set(wl)
    ub = ubar(u)
    gens = [copy_name(w, j) for j in range(k) for w in wl] + v2 + [ub]

    def name_of(x, j):
        return x if x in v2set else copy_name(x, j)

    rels: list[Relator] = []
    for j in range(k):
        for (a, b), m in g.edges:
            if u in (a, b) or (a in v2set and b in v2set):
                continue
            if a in wset or b in wset:
                x, y = name_of(a, j), name_of(b, j)
                rels.append(_artin_relation(x, y, m // 2, "CocyclicA",
                                            f"A({x},{y})", f"copy{j}"))
    for (a, b), m in g.edges:
        if a in v2set and b in v2set:
            rels.append(_artin_relation(a, b, m // 2, "CocyclicA", f"A({a},{b})", "A_k"))
    for v in v2:
        rels.append(_artin_relation(ub, v, 1, "CocyclicA", f"A({ub},{v})", "R1"))
    for w in wl:
        m = g.label(u, w)
        if m is not None:
            rels.extend(b_relators(w, u, m // 2, k, f"B({w})"))
    info = {"kind": "cocyclic", "u": u, "k": k, "V2": tuple(v2), "W": tuple(wl)}
    return Presentation(tuple(gens), tuple(rels), info)


def rs_presentation_generic(g: LabeledGraph, u: str, k: int) -> Presentation:
    """Reidemeister-Schreier rewriting of the Artin presentation with the
    section s(i) = u^i, before any simplification.

    Generators are ``v.i`` for every v != u and coset i, plus ``u.bar`` for
    the only nontrivial Schreier generator u^(k-1) u.
    """
    _check_cocyclic(g, u, k)
    others = [v for v in g.vertices if v != u]
    ub = ubar(u)
    gens = [copy_name(v, j) for j in range(k) for v in others] + [ub]
    rels = []
    for (a, b), m in g.edges:
        base = artin_relator(a, b, m // 2)
        for i in range(k):
            out = []
            cur = i
            for x, e in base.expanded():
                if x == u:
                    if e > 0:
                        if cur == k - 1:
                            out.append((ub, 1))
                        cur = (cur + 1) % k
                    else:
                        cur = (cur - 1) % k
                        if cur == k - 1:
                            out.append((ub, -1))
                else:
                    out.append((copy_name(x, cur), e))
            if cur != i:
                raise AssertionError("relator does not return to its coset")
            rels.append(Relator(Word(out), Word(), "Other", f"A({a},{b})@{i}"))
    return Presentation(tuple(gens), tuple(rels), {"kind": "rs", "u": u, "k": k})


# abelianization

class TorsionError(ValueError):
    pass


@dataclass(frozen=True)
class Abelianization:
    """H_1 as a free abelian group on identified generators.

    ``variables[i]`` is the first generator of the i-th class; ``index`` maps
    every generator to its class.
    """

    generators: tuple[str, ...]
    variables: tuple[str, ...]
    index: dict = field(compare=False, hash=False)

    @property
    def free_rank(self) -> int:
        return len(self.variables)

    def var_names(self) -> list[str]:
        return [f"t{i}" for i in range(self.free_rank)]

    def classes(self) -> list[list[str]]:
        out = [[] for _ in self.variables]
        for g in self.generators:
            out[self.index[g]].append(g)
        return out


def exponent_matrix(p: Presentation) -> list[list[int]]:
    col = {g: j for j, g in enumerate(p.generators)}
    rows = []
    for r in p.relators:
        row = [0] * len(p.generators)
        for g, e in r.word.letters:
            row[col[g]] += e
        rows.append(row)
    return rows


def abelianize(p: Presentation) -> Abelianization:
    n = len(p.generators)
    rows = exponent_matrix(p)
    rank = 0
    if rows and n:
        d, _, _, rank = snf(rows)
        if any(d[i][i] > 1 for i in range(rank)):
            raise TorsionError("abelianization has torsion")
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for row in rows:
        nz = [(j, e) for j, e in enumerate(row) if e]
        if not nz:
            continue
        if len(nz) == 2 and {nz[0][1], nz[1][1]} == {1, -1}:
            a, b = find(nz[0][0]), find(nz[1][0])
            if a != b:
                parent[max(a, b)] = min(a, b)
        else:
            raise ValueError("abelianization is not a coordinate identification")
    roots = []
    for j in range(n):
        r = find(j)
        if r not in roots:
            roots.append(r)
    if len(roots) != n - rank:
        raise ValueError("abelianization is not a coordinate identification")
    pos = {r: i for i, r in enumerate(roots)}
    index = {g: pos[find(j)] for j, g in enumerate(p.generators)}
    variables = tuple(p.generators[r] for r in roots)
    return Abelianization(p.generators, variables, index)


def cocyclic_identifications(g: LabeledGraph, u: str, k: int) -> dict[str, str]:
    """Closed-form abelianization: t_{w,i} = t_{w,i+d}, d = gcd(l_e, k), for
    w adjacent to u through a label other than 2.  Maps each generator to its
    class representative."""
    _check_cocyclic(g, u, k)
    v2, wl = cocyclic_split(g, u)
    rep = {ubar(u): ubar(u)}
    rep.update({v: v for v in v2})
    for w in wl:
        m = g.label(u, w)
        d = gcd(m // 2, k) if m is not None else k
        for j in range(k):
            rep[copy_name(w, j)] = copy_name(w, j % d)
    return rep
