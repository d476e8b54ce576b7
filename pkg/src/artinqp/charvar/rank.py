"""Exact ranks of Alexander matrices restricted to torsion-translated tori.

A torus component x_i = zeta_M^{e_i} s^{b_i} turns each entry into an
element of Z[zeta_M][s^{+-1}].  Writing Z[zeta_M] in its power basis
replaces every entry by a phi(M) x phi(M) integer block (multiplication
matrix), so the rank over Q(zeta_M)(s) is the rank over Q(s) of the expanded
integer-polynomial matrix divided by phi(M).  That rank is computed by
fraction-free (Bareiss) elimination with exact polynomial division.
"""

from __future__ import annotations

import random
from itertools import combinations
from typing import Sequence

from .. import _kernels as K
from ..alexander import AlexMatrix
from ..exactalg.cyclo import euler_phi, power_table
from ..exactalg.laurent import LaurentPoly
from ..exactalg.ratfunc import TorusParametrization
from .torus import EmptyTorusError, TorsionTorus

BITS = 20


class Packing:
    """Packed-key layout for polynomials in ``nvars`` variables."""

    def __init__(self, nvars: int, bits: int = BITS):
        self.nvars = nvars
        self.bits = bits
        self.guard = sum(1 << (bits * j + bits - 1) for j in range(nvars))
        self.limit = 1 << (bits - 1)

    @classmethod
    def for_elimination(cls, nvars: int, maxdeg: int, size: int) -> "Packing":
        """Narrowest layout that holds every Bareiss intermediate.

        Step k entries are minors of order k+1, so before the exact division
        their degree per variable is at most 2 (size + 1) maxdeg.  Narrow keys
        let the compiled kernels stay on machine words.
        """
        bound = 2 * (size + 1) * max(maxdeg, 1)
        return cls(nvars, max(bound.bit_length() + 1, 4))

    def pack(self, exps: Sequence[int]) -> int:
        key = 0
        for e in exps:
            if not 0 <= e < self.limit:
                raise OverflowError("exponent does not fit the packed layout")
            key = (key << self.bits) | e
        return key

    def unpack(self, key: int) -> tuple[int, ...]:
        mask = (1 << self.bits) - 1
        out = []
        for _ in range(self.nvars):
            out.append(key & mask)
            key >>= self.bits
        return tuple(reversed(out))


def bareiss_rank(mat: list[list[dict]], pk: Packing) -> int:
    """Rank of a matrix of packed integer polynomials (entries are dicts)."""
    a = [list(row) for row in mat if any(row)]
    if not a:
        return 0
    m, n = len(a), len(a[0])
    guard = pk.guard
    prev = {0: 1}
    rank = 0
    while rank < min(m, n):
        best = None
        for i in range(rank, m):
            row = a[i]
            for j in range(rank, n):
                e = row[j]
                if e:
                    key = (len(e), i, j)
                    if best is None or key < best:
                        best = key
        if best is None:
            break
        _, pi, pj = best
        a[rank], a[pi] = a[pi], a[rank]
        if pj != rank:
            for row in a:
                row[rank], row[pj] = row[pj], row[rank]
        p = a[rank][rank]
        prow = a[rank]
        for i in range(rank + 1, m):
            row = a[i]
            aik = row[rank]
            for j in range(rank + 1, n):
                row[j] = K.bareiss_step(p, row[j], aik, prow[j], prev, guard)
            row[rank] = {}
        prev = p
        rank += 1
    return rank


def bareiss_det(mat: list[list[dict]], pk: Packing) -> dict:
    """Determinant of a square matrix of packed polynomials."""
    a = [list(row) for row in mat]
    n = len(a)
    if n == 0:
        return {0: 1}
    guard = pk.guard
    prev = {0: 1}
    sign = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return {}
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        p = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = K.bareiss_step(p, a[i][j], aik, a[k][j], prev, guard)
            a[i][k] = {}
        prev = p
    det = a[n - 1][n - 1]
    return {key: sign * c for key, c in det.items()} if sign < 0 else dict(det)


def _pack_laurent_rows(rows: list[list[dict]], nvars: int):
    """rows: entries as {exponent tuple: int}.  Shift each row into
    nonnegative exponents and pack.  Returns (packed rows, shifts, packing)."""
    out = []
    shifts = []
    for row in rows:
        mins = [0] * nvars
        first = True
        for e in row:
            for ex in e:
                if first:
                    mins = list(ex)
                    first = False
                else:
                    for t in range(nvars):
                        if ex[t] < mins[t]:
                            mins[t] = ex[t]
        shifts.append(tuple(mins))
    maxdeg = max((x - s for row, mins in zip(rows, shifts) for e in row for ex in e
                  for x, s in zip(ex, mins)), default=0)
    size = min(len(rows), len(rows[0])) if rows else 0
    pk = Packing.for_elimination(nvars, maxdeg, size)
    for row, mins in zip(rows, shifts):
        out.append([{pk.pack([x - s for x, s in zip(ex, mins)]): c for ex, c in e.items()}
                    for e in row])
    return out, shifts, pk


def expand_on_component(m: AlexMatrix, param: TorusParametrization) -> tuple[list[list[dict]], int, int]:
    """Integer-polynomial expansion of M restricted to one component.

    Returns (rows of {s-exponent tuple: int}, phi, nparams).
    """
    if param.nvars != m.nvars:
        raise ValueError("torus arity does not match the matrix variables")
    mcond = param.conductor
    phi = euler_phi(mcond)
    table = power_table(mcond)
    roots = param.angle_exponents(mcond)
    d = param.nparams
    bvecs = param.exponents
    out: list[list[dict]] = [[] for _ in range(m.nrows * phi)]
    for i, row in enumerate(m.rows):
        expanded_row = [[{} for _ in range(m.ncols * phi)] for _ in range(phi)]
        for j, entry in enumerate(row):
            if not entry:
                continue
            # entry -> {s-exponent: {root exponent: int}}
            parts: dict = {}
            for ex, c in entry.items():
                root = 0
                se = [0] * d
                for t, k in enumerate(ex):
                    if k:
                        root += k * roots[t]
                        b = bvecs[t]
                        for s in range(d):
                            se[s] += k * b[s]
                key = tuple(se)
                slot = parts.setdefault(key, {})
                r = root % mcond
                slot[r] = slot.get(r, 0) + c
            # block column l holds coordinates of entry * zeta^l
            for l in range(phi):
                col = j * phi + l
                for se, roots_c in parts.items():
                    vec = [0] * phi
                    for r, c in roots_c.items():
                        if c:
                            coords = table[(r + l) % mcond]
                            for t in range(phi):
                                if coords[t]:
                                    vec[t] += c * coords[t]
                    for t in range(phi):
                        if vec[t]:
                            cell = expanded_row[t][col]
                            v = cell.get(se, 0) + vec[t]
                            if v:
                                cell[se] = v
                            else:
                                cell.pop(se, None)
        for t in range(phi):
            out[i * phi + t] = expanded_row[t]
    return out, phi, d


def rank_on_component(m: AlexMatrix, param: TorusParametrization) -> int:
    rows, phi, d = expand_on_component(m, param)
    if not rows or not m.ncols:
        return 0
    packed, _, pk = _pack_laurent_rows(rows, d)
    r = bareiss_rank(packed, pk)
    if r % phi:
        raise AssertionError("expanded rank is not a multiple of phi(M)")
    return r // phi


def rank_on_torus(m: AlexMatrix, t: TorsionTorus) -> int:
    """Rank of M over the function field of t (the maximum over components,
    i.e. the rank at a general point of t)."""
    if t.n != m.nvars:
        raise ValueError("torus arity does not match the matrix variables")
    if not t.nonempty:
        raise EmptyTorusError("rank on an empty torus")
    return max(rank_on_component(m, p) for p in t.components())


def rank_on_torus_components(m: AlexMatrix, t: TorsionTorus) -> list[int]:
    if t.n != m.nvars:
        raise ValueError("torus arity does not match the matrix variables")
    if not t.nonempty:
        raise EmptyTorusError("rank on an empty torus")
    return [rank_on_component(m, p) for p in t.components()]


PRIME = 2147483647


def _rank_at_points(packed, pk: Packing, npoints: int = 2) -> int:
    """Largest rank mod PRIME over a few fixed integer points; never exceeds
    the rank over the function field."""
    rng = random.Random(0x5EED)
    best = 0
    for _ in range(npoints):
        point = [rng.randrange(2, PRIME - 1) for _ in range(pk.nvars)]
        ints = [[K.eval_mod_p(e, point, pk.bits, PRIME) if e else 0 for e in row]
                for row in packed]
        best = max(best, K.rank_mod_p(ints, PRIME))
    return best


def generic_rank(m: AlexMatrix, certify: bool = True) -> int:
    """Rank over the fraction field of the Laurent ring (no substitution).

    With ``certify`` the rank at sample points (a lower bound) is compared
    with an upper bound: min(rows, cols), or cols - 1 when the Fox identity
    puts (t_j - 1) in the kernel.  If they meet the rank is proven; otherwise
    fraction-free elimination decides.
    """
    if not m.nrows or not m.ncols:
        return 0
    rows = [[e.terms() for e in row] for row in m.rows]
    packed, _, pk = _pack_laurent_rows(rows, m.nvars)
    if certify:
        upper = min(m.nrows, m.ncols)
        if upper == m.ncols and m.satisfies_fox_identity():
            upper -= 1
        if _rank_at_points(packed, pk) == upper:
            return upper
    return bareiss_rank(packed, pk)


def corank_on_torus(m: AlexMatrix, t: TorsionTorus) -> int:
    return m.ncols - rank_on_torus(m, t)


def charvar_depth(m: AlexMatrix, t: TorsionTorus) -> int:
    """Largest k >= 0 with t inside V_k: corank - 1, floored at 0."""
    return max(0, m.ncols - rank_on_torus(m, t) - 1)


def depth_from_rank(ncols: int, rank: int) -> int:
    return max(0, ncols - rank - 1)


def laurent_det(entries: list[list[LaurentPoly]]) -> LaurentPoly:
    n = len(entries)
    nvars = entries[0][0].nvars if n else 0
    if n == 0:
        return LaurentPoly.const(nvars, 1)
    rows = [[e.terms() for e in row] for row in entries]
    packed, shifts, pk = _pack_laurent_rows(rows, nvars)
    det = bareiss_det(packed, pk)
    total = [sum(s[t] for s in shifts) for t in range(nvars)]
    return LaurentPoly(nvars, {tuple(x + y for x, y in zip(pk.unpack(k), total)): c
                               for k, c in det.items()})


def fitting_minors(m: AlexMatrix, order: int) -> list[LaurentPoly]:
    """All order x order minors, row subsets outer and column subsets inner,
    both in lexicographic order."""
    if not 1 <= order <= min(m.nrows, m.ncols):
        raise ValueError("minor order out of range")
    out = []
    for rs in combinations(range(m.nrows), order):
        for cs in combinations(range(m.ncols), order):
            out.append(laurent_det([[m.rows[i][j] for j in cs] for i in rs]))
    return out


def rank_mod_p_at(m: AlexMatrix, param: TorusParametrization, point: Sequence[int],
                  p: int = PRIME) -> int:
    """Rank of the expanded matrix modulo p at an integer point, divided by
    phi and rounded up: a certified lower bound for rank_on_component."""
    rows, phi, d = expand_on_component(m, param)
    if not rows or not m.ncols:
        return 0
    packed, _, pk = _pack_laurent_rows(rows, d)
    ints = [[K.eval_mod_p(e, point, pk.bits, p) if e else 0 for e in row] for row in packed]
    r = K.rank_mod_p(ints, p)
    return -(-r // phi)
