"""Fox calculus and Alexander matrices."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .exactalg.laurent import LaurentPoly, p_poly
from .graph import LabeledGraph
from .presentation import (
    Abelianization, Presentation, Word, abelianize, cocyclic_presentation,
    copy_name, ubar,
)


def _phi_exps(ab: Abelianization, g: str, e: int, acc: list[int]):
    acc[ab.index[g]] += e


def fox_derivative(w: Word, g: str, ab: Abelianization) -> LaurentPoly:
    """Abelianized Fox derivative dw/dg, read left to right."""
    n = ab.free_rank
    if g not in ab.index:
        raise KeyError(f"unknown generator {g!r}")
    for h, _ in w.letters:
        if h not in ab.index:
            raise KeyError(f"unknown generator {h!r}")
    prefix = [0] * n
    out: dict = {}
    gv = ab.index[g]
    for h, e in w.letters:
        if h == g:
            step = 1 if e > 0 else -1
            for _ in range(abs(e)):
                if step < 0:
                    prefix[gv] -= 1
                key = tuple(prefix)
                v = out.get(key, 0) + step
                if v:
                    out[key] = v
                else:
                    out.pop(key)
                if step > 0:
                    prefix[gv] += 1
        else:
            prefix[ab.index[h]] += e
    return LaurentPoly(n, out)


def fox_closed_A(ell: int, ta: LaurentPoly, tb: LaurentPoly, wrt: str) -> LaurentPoly:
    """Derivatives of (ab)^ell (ba)^-ell: -(t_b - 1) p_ell(t_a t_b) for a and
    (t_a - 1) p_ell(t_a t_b) for b."""
    if wrt == "a":
        return -(tb - 1) * p_poly(ell, ta * tb)
    if wrt == "b":
        return (ta - 1) * p_poly(ell, ta * tb)
    return LaurentPoly.zero(ta.nvars)


def fox_closed_B(ell: int, k: int, i: int, xs: Sequence[LaurentPoly],
                 y: LaurentPoly, wrt: int | None) -> LaurentPoly:
    """Derivative of the i-th B-relator with respect to the letter at cyclic
    position ``wrt`` of the alphabet x_0, ..., x_{k-1}, y (``wrt = k`` is y,
    ``None`` any other generator).

    With T = y * x_0 ... x_{k-1} and P(p, s) the product of the s letters
    read cyclically from position p, the derivative is
    P(i, s0) p_{N0}(T) - P(i+1, s1) p_{N1}(T), where s0, s1 are the cyclic
    distances from the two starting points to ``wrt`` and N counts the
    occurrences of that letter in each side.
    """
    if len(xs) != k or not 0 <= i < k:
        raise ValueError("malformed B-relator indices")
    n = y.nvars
    if wrt is None:
        return LaurentPoly.zero(n)
    if not 0 <= wrt <= k:
        raise ValueError("position out of range")
    c, r = divmod(ell, k)
    eps = 0 if i < k - r else 1
    alphabet = list(xs) + [y]
    total = y
    for x in xs:
        total = total * x

    def side(start):
        s = (wrt - start) % (k + 1)
        prod = LaurentPoly.const(n, 1)
        for j in range(s):
            prod = prod * alphabet[(start + j) % (k + 1)]
        count = c + 1 if s < r + eps else c
        return prod * p_poly(count, total)

    return side(i) - side(i + 1)


@dataclass(frozen=True)
class AlexMatrix:
    """Fox Jacobian of a presentation over Z[H_1].

    One column per generator; ``col_vars[j]`` is the abelianization variable
    of column j's generator.
    """

    rows: tuple
    row_names: tuple
    row_tags: tuple
    row_blocks: tuple
    columns: tuple
    col_vars: tuple
    variables: tuple
    blocks: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.columns)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def entry(self, i: int, j: int) -> LaurentPoly:
        return self.rows[i][j]

    def var_names(self) -> list[str]:
        return [f"t{i}" for i in range(self.nvars)]

    def column_variable(self, j: int) -> LaurentPoly:
        return LaurentPoly.var(self.col_vars[j], self.nvars)

    def fox_kernel_vector(self) -> list[LaurentPoly]:
        """(t_g - 1)_g: annihilated by every Fox row."""
        return [self.column_variable(j) - 1 for j in range(self.ncols)]

    def satisfies_fox_identity(self) -> bool:
        v = self.fox_kernel_vector()
        for row in self.rows:
            acc = LaurentPoly.zero(self.nvars)
            for a, b in zip(row, v):
                if a:
                    acc = acc + a * b
            if acc:
                return False
        return True

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "AlexMatrix":
        return AlexMatrix(
            tuple(tuple(self.rows[i][j] for j in cols) for i in rows),
            tuple(self.row_names[i] for i in rows),
            tuple(self.row_tags[i] for i in rows),
            tuple(self.row_blocks[i] for i in rows),
            tuple(self.columns[j] for j in cols),
            tuple(self.col_vars[j] for j in cols),
            self.variables,
        )

    def block(self, name: str) -> "AlexMatrix":
        r, c = self.blocks[name]
        return self.submatrix(r, c)

    def as_lists(self) -> list[list[LaurentPoly]]:
        return [list(r) for r in self.rows]

    def render(self) -> str:
        names = self.var_names()
        lines = ["variables: " + ", ".join(
            f"{t}={v}" for t, v in zip(names, self.variables))]
        lines.append("columns: " + " ".join(
            f"{c}[t{v}]" for c, v in zip(self.columns, self.col_vars)))
        lines.append(f"{self.nrows} relators x {self.ncols} generators")
        if not self.rows:
            return "\n".join(lines) + "\n"
        cells = [[e.to_str(names) for e in row] for row in self.rows]
        widths = [max(len(cells[i][j]) for i in range(self.nrows)) for j in range(self.ncols)]
        heads = [f"{n} {b}".rstrip() for n, b in zip(self.row_names, self.row_blocks)]
        hw = max(len(h) for h in heads)
        for h, row in zip(heads, cells):
            body = "  ".join(c.rjust(w) for c, w in zip(row, widths))
            lines.append(f"{h.ljust(hw)} | {body}")
        return "\n".join(lines) + "\n"

    def to_json_obj(self) -> dict:
        names = self.var_names()
        return {
            "variables": list(self.variables),
            "columns": list(self.columns),
            "column_variables": list(self.col_vars),
            "rows": [
                {"name": n, "tag": t, "block": b, "entries": [e.to_str(names) for e in row]}
                for n, t, b, row in zip(self.row_names, self.row_tags, self.row_blocks, self.rows)
            ],
            "matrix": [[e.to_str(names) for e in row] for row in self.rows],
            "blocks": {k: {"rows": list(r), "columns": list(c)}
                       for k, (r, c) in sorted(self.blocks.items())},
        }


def alexander_matrix(p: Presentation, ab: Abelianization | None = None) -> AlexMatrix:
    if ab is None:
        ab = abelianize(p)
    rows = tuple(tuple(fox_derivative(r.word, g, ab) for g in p.generators)
                 for r in p.relators)
    return AlexMatrix(
        rows,
        tuple(r.name for r in p.relators),
        tuple(r.tag for r in p.relators),
        tuple(r.block for r in p.relators),
        tuple(p.generators),
        tuple(ab.index[g] for g in p.generators),
        tuple(ab.variables),
    )


def cocyclic_matrix(g: LabeledGraph, u: str, k: int) -> AlexMatrix:
    """Alexander matrix of the standard co-cyclic presentation with its
    block layout; raises AssertionError if an entry falls outside every
    declared block."""
    p = cocyclic_presentation(g, u, k)
    m = alexander_matrix(p)
    v2 = list(p.info["V2"])
    wl = list(p.info["W"])
    col = {name: j for j, name in enumerate(m.columns)}
    v2cols = tuple(col[v] for v in v2)
    ucol = col[ubar(u)]
    blocks: dict = {}

    def rows_of(block):
        return tuple(i for i, b in enumerate(m.row_blocks) if b == block)

    for j in range(k):
        r = rows_of(f"copy{j}")
        blocks[f"A'_{j}"] = (r, tuple(col[copy_name(w, j)] for w in wl))
        blocks[f"A_{j}"] = (r, v2cols)
    blocks["A_k"] = (rows_of("A_k"), v2cols)
    blocks["R1"] = (rows_of("R1"), v2cols + (ucol,))
    for w in wl:
        r = rows_of(f"B({w})")
        if r:
            blocks[f"B({w})"] = (r, tuple(col[copy_name(w, j)] for j in range(k)) + (ucol,))
    allowed = set()
    for r, c in blocks.values():
        allowed.update((i, j) for i in r for j in c)
    for i, row in enumerate(m.rows):
        for j, e in enumerate(row):
            if e and (i, j) not in allowed:
                raise AssertionError(f"nonzero entry outside the block layout at ({i},{j})")
    return AlexMatrix(m.rows, m.row_names, m.row_tags, m.row_blocks, m.columns,
                      m.col_vars, m.variables, blocks)
