"""Torsion-translated subtori of (C*)^n in binomial form.

A constraint ``(a, q)`` means prod x_i^{a_i} = exp(2 pi i q) with q a rational
angle kept in [0, 1).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from ..exactalg.cyclo import CycloNumber
from ..exactalg.lattice import hnf, snf
from ..exactalg.ratfunc import TorusParametrization


class EmptyTorusError(ValueError):
    pass


@dataclass(frozen=True)
class TorsionTorus:
    n: int
    constraints: tuple = ()

    def __post_init__(self):
        clean = []
        for a, q in self.constraints:
            a = tuple(int(x) for x in a)
            if len(a) != self.n:
                raise ValueError("constraint arity does not match the ambient torus")
            clean.append((a, Fraction(q) % 1))
        object.__setattr__(self, "constraints", tuple(clean))

    @classmethod
    def full(cls, n: int) -> "TorsionTorus":
        return cls(n, ())

    @classmethod
    def from_values(cls, n: int, constraints: Iterable[tuple[Sequence[int], CycloNumber]]):
        """Constraints given with CycloNumber roots of unity."""
        out = []
        for a, z in constraints:
            out.append((a, root_angle(z)))
        return cls(n, tuple(out))

    def values(self) -> list[tuple[tuple, CycloNumber]]:
        return [(a, CycloNumber.root_of_unity(q)) for a, q in self.constraints]

    # normal form

    def _normal(self):
        cache = self.__dict__.get("_nf")
        if cache is None:
            cache = _normal_form(self.n, self.constraints)
            object.__setattr__(self, "_nf", cache)
        return cache

    def canonicalize(self) -> tuple[bool, int, "TorsionTorus"]:
        nonempty, rank, rows, _ = self._normal()
        if not nonempty:
            return False, -1, self
        return True, self.n - rank, TorsionTorus(self.n, rows)

    @property
    def nonempty(self) -> bool:
        return self._normal()[0]

    @property
    def dimension(self) -> int:
        nonempty, rank, _, _ = self._normal()
        if not nonempty:
            raise EmptyTorusError("empty torus has no dimension")
        return self.n - rank

    def components(self) -> list[TorusParametrization]:
        """Parametrizations of the irreducible components (one unless the
        constraint lattice is not saturated)."""
        if not self.nonempty:
            raise EmptyTorusError("cannot parametrize an empty torus")
        cache = self.__dict__.get("_components")
        if cache is None:
            cache = _components(self)
            object.__setattr__(self, "_components", cache)
        return cache

    def parametrize(self) -> TorusParametrization:
        comps = self.components()
        if len(comps) != 1:
            raise ValueError(f"torus has {len(comps)} components; use components()")
        return comps[0]

    def intersect(self, other: "TorsionTorus") -> "TorsionTorus":
        if other.n != self.n:
            raise ValueError("arity mismatch")
        return TorsionTorus(self.n, self.constraints + other.constraints)

    def contains_point(self, angles: Sequence[Fraction]) -> bool:
        return all(sum(x * Fraction(p) for x, p in zip(a, angles)) % 1 == q
                   for a, q in self.constraints)

    def contains_trivial_character(self) -> bool:
        return self.contains_point([0] * self.n)

    def is_trivial_character(self) -> bool:
        return self.nonempty and self.dimension == 0 and len(self.components()) == 1 \
            and self.contains_trivial_character()

    def to_text(self) -> str:
        if not self.constraints:
            return "# full torus\n"
        return "".join(format_constraint(a, q) + "\n" for a, q in self.constraints)

    def __str__(self):
        return "{" + ", ".join(format_constraint(a, q) for a, q in self.constraints) + "}"


def root_angle(z: CycloNumber) -> Fraction:
    """Angle of a root of unity given as a CycloNumber."""
    n = z.conductor
    for k in range(n):
        if CycloNumber.zeta(n, k) == z:
            return Fraction(k, n) % 1
    raise ValueError("not a root of unity of its conductor")


def _normal_form(n, constraints):
    if not constraints:
        return True, 0, (), ()
    a = [list(x) for x, _ in constraints]
    qs = [q for _, q in constraints]
    h, u, pivots = hnf(a)
    rank = len(pivots)
    ang = [sum((c * q for c, q in zip(row, qs)), Fraction(0)) % 1 for row in u]
    if any(ang[i] for i in range(rank, len(a))):
        return False, rank, (), ()
    rows = tuple((tuple(h[i]), ang[i]) for i in range(rank))
    return True, rank, rows, tuple(pivots)


def _components(t: TorsionTorus) -> list[TorusParametrization]:
    n = t.n
    _, rank, rows, pivots = t._normal()
    if all(rows[i][0][pivots[i]] == 1 for i in range(rank)):
        free = [j for j in range(n) if j not in pivots]
        d = len(free)
        ang = [Fraction(0)] * n
        exps = [[0] * d for _ in range(n)]
        for idx, j in enumerate(free):
            exps[j][idx] = 1
        for i in range(rank - 1, -1, -1):
            row, q = rows[i]
            p = pivots[i]
            a = q
            e = [0] * d
            for j in range(p + 1, n):
                c = row[j]
                if c:
                    a -= c * ang[j]
                    for s in range(d):
                        e[s] -= c * exps[j][s]
            ang[p] = a % 1
            exps[p] = e
        return [TorusParametrization(tuple(ang), tuple(tuple(x) for x in exps))]
    a = [list(r) for r, _ in rows]
    qs = [q for _, q in rows]
    dmat, u, v, r = snf(a)
    target = [sum((c * q for c, q in zip(u[j], qs)), Fraction(0)) % 1 for j in range(r)]
    diag = [dmat[j][j] for j in range(r)]
    out = []
    for choice in product(*(range(dj) for dj in diag)):
        yang = [(target[j] + choice[j]) / diag[j] for j in range(r)]
        ang = []
        exps = []
        for i in range(n):
            ang.append(sum((v[i][l] * yang[l] for l in range(r)), Fraction(0)) % 1)
            exps.append(tuple(v[i][l] for l in range(r, n)))
        out.append(TorusParametrization(tuple(ang), tuple(exps)))
    return out


def torus_canonicalize(t: TorsionTorus) -> tuple[bool, int, TorsionTorus]:
    return t.canonicalize()


def torus_parametrize(t: TorsionTorus) -> TorusParametrization:
    return t.parametrize()


def torus_intersect(t1: TorsionTorus, t2: TorsionTorus) -> TorsionTorus:
    out = t1.intersect(t2)
    out.canonicalize()
    return out


def solve_pl_constraint(l: int, a: Sequence[int], n: int) -> list[TorsionTorus]:
    """Components of p_l(x^a) = 0: the tori x^a = zeta_l^j, 0 < j < l."""
    if l < 1:
        raise ValueError("p_l needs l >= 1")
    return [TorsionTorus(n, ((tuple(a), Fraction(j, l)),)) for j in range(1, l)]


# text format

def format_angle(q: Fraction) -> str:
    q = Fraction(q) % 1
    if q == 0:
        return "1"
    return f"zeta({q.denominator},{q.numerator})"


def format_monomial(a: Sequence[int]) -> str:
    parts = []
    for i, e in enumerate(a):
        if e == 1:
            parts.append(f"t{i}")
        elif e:
            parts.append(f"t{i}^{e}")
    return "*".join(parts) or "1"


def format_constraint(a, q) -> str:
    return f"{format_monomial(a)} = {format_angle(q)}"


_FACTOR = re.compile(r"^t(\d+)(?:\^(-?\d+))?$")
_ZETA = re.compile(r"^zeta\(\s*(\d+)\s*,\s*(-?\d+)\s*\)$")


class TorusSyntaxError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"{message} at line {line}" if line else message)


def _parse_side(text: str, line: int) -> tuple[dict, Fraction]:
    """A product of factors: t<i>[^e], 1, -1, zeta(N,k)."""
    exps: dict = {}
    ang = Fraction(0)
    text = text.strip()
    if not text:
        raise TorusSyntaxError("empty side", line)
    for tok in text.split("*"):
        tok = tok.strip()
        m = _FACTOR.match(tok)
        if m:
            i = int(m.group(1))
            exps[i] = exps.get(i, 0) + int(m.group(2) or 1)
            continue
        m = _ZETA.match(tok)
        if m:
            nn, kk = int(m.group(1)), int(m.group(2))
            if nn < 1:
                raise TorusSyntaxError("zeta needs N >= 1", line)
            ang += Fraction(kk, nn)
            continue
        if tok == "1":
            continue
        if tok == "-1":
            ang += Fraction(1, 2)
            continue
        raise TorusSyntaxError(f"cannot parse factor {tok!r}", line)
    return exps, ang % 1


def parse_constraint(text: str, line: int | None = None) -> tuple[dict, Fraction]:
    if text.count("=") != 1:
        raise TorusSyntaxError("constraint needs exactly one '='", line)
    lhs, rhs = text.split("=")
    le, la = _parse_side(lhs, line)
    re_, ra = _parse_side(rhs, line)
    exps = dict(le)
    for i, e in re_.items():
        exps[i] = exps.get(i, 0) - e
    return exps, (ra - la) % 1


def parse_torus_file(text: str, n: int | None = None) -> list[tuple[TorsionTorus, int]]:
    """Blocks of constraints separated by blank lines; ``#`` starts a comment.

    Returns (torus, first line number) per block.  A block whose only content
    is the word ``full`` denotes the whole torus.
    """
    blocks: list[tuple[list, int]] = []
    cur: list = []
    start = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        if not raw.strip():
            if start is not None:
                blocks.append((cur, start))
            cur, start = [], None
            continue
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        if start is None:
            start = lineno
        if body != "full":
            cur.append(parse_constraint(body, lineno))
    if start is not None:
        blocks.append((cur, start))
    maxidx = max((i for b, _ in blocks for e, _ in b for i in e), default=-1)
    if n is None:
        n = maxidx + 1
    elif maxidx >= n:
        raise TorusSyntaxError(f"variable t{maxidx} outside the ambient torus of rank {n}")
    out = []
    for cons, line in blocks:
        rows = []
        for exps, q in cons:
            a = [0] * n
            for i, e in exps.items():
                a[i] = e
            rows.append((tuple(a), q))
        out.append((TorsionTorus(n, tuple(rows)), line))
    return out


def format_torus_file(tori: Sequence[TorsionTorus]) -> str:
    chunks = []
    for t in tori:
        chunks.append(t.to_text() if t.constraints else "full\n")
    return "\n".join(chunks)
