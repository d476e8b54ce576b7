"""Checking an obstruction witness against the co-cyclic Alexander matrix.

Conditions checked (depth = corank - 1 floored at 0):

* C1: every witness torus has depth >= 1 and the generic depth is smaller;
* C2: some pair (t1, t2) from the two lists meets in a torus of dim >= 1;
* C3: for that pair the intersection is strictly deeper than both tori, or
  each list is a single irreducible torus.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from ..alexander import AlexMatrix, cocyclic_matrix
from ..graph import LabeledGraph
from .rank import depth_from_rank, generic_rank, rank_on_torus
from .torus import TorsionTorus


@dataclass(frozen=True)
class ObstructionWitness:
    u: str
    k: int
    tori1: tuple
    tori2: tuple
    ideals: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if not self.tori1 or not self.tori2:
            raise ValueError("witness lists must be nonempty")
        arities = {t.n for t in self.tori1 + self.tori2}
        if len(arities) != 1:
            raise ValueError("witness tori have different arities")


@dataclass
class TorusReport:
    torus: TorsionTorus
    dimension: int
    rank: int
    corank: int
    depth: int
    trivial_character: bool = False

    def to_json_obj(self) -> dict:
        return {
            "constraints": [f"{line}" for line in self.torus.to_text().splitlines()],
            "dimension": self.dimension,
            "rank": self.rank,
            "corank": self.corank,
            "depth": self.depth,
            "trivial_character": self.trivial_character,
        }


@dataclass
class PairReport:
    index1: int
    index2: int
    nonempty: bool
    dimension: int | None = None
    rank: int | None = None
    corank: int | None = None
    depth: int | None = None

    def to_json_obj(self) -> dict:
        return {
            "pair": [self.index1, self.index2],
            "nonempty": self.nonempty,
            "dimension": self.dimension,
            "rank": self.rank,
            "corank": self.corank,
            "depth": self.depth,
        }


@dataclass
class ObstructionReport:
    u: str
    k: int
    ncols: int
    generic_rank: int
    generic_corank: int
    generic_depth: int
    tori1: list
    tori2: list
    pairs: list
    c1: bool
    c2: bool
    c3: bool
    chosen_pair: tuple | None
    reasons: list

    @property
    def passed(self) -> bool:
        return self.c1 and self.c2 and self.c3

    def coranks_summary(self) -> tuple:
        """(corank on tori1, corank on tori2, corank on the chosen
        intersection, its dimension); multi-torus lists report the minimum."""
        c1 = min(r.corank for r in self.tori1)
        c2 = min(r.corank for r in self.tori2)
        if self.chosen_pair is None:
            return c1, c2, None, None
        pr = next(p for p in self.pairs if (p.index1, p.index2) == self.chosen_pair)
        return c1, c2, pr.corank, pr.dimension

    def to_json_obj(self) -> dict:
        return {
            "u": self.u,
            "k": self.k,
            "columns": self.ncols,
            "generic": {"rank": self.generic_rank, "corank": self.generic_corank,
                        "depth": self.generic_depth},
            "tori1": [r.to_json_obj() for r in self.tori1],
            "tori2": [r.to_json_obj() for r in self.tori2],
            "pairs": [p.to_json_obj() for p in self.pairs],
            "C1": self.c1,
            "C2": self.c2,
            "C3": self.c3,
            "chosen_pair": list(self.chosen_pair) if self.chosen_pair else None,
            "passed": self.passed,
            "reasons": list(self.reasons),
        }

    def summary(self) -> str:
        if not self.passed:
            return "witness FAILED: " + "; ".join(self.reasons)
        a, b, c, d = self.coranks_summary()
        return f"witness verified: coranks {a},{b} → {c}; dim(∩)={d}"


def _rank_task(args):
    m, t = args
    return rank_on_torus(m, t)


def _ranks(m: AlexMatrix, tori: list, jobs: int) -> list[int]:
    if jobs > 1 and len(tori) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(_rank_task, [(m, t) for t in tori]))
    return [rank_on_torus(m, t) for t in tori]


def verify_obstruction(g: LabeledGraph, w: ObstructionWitness, jobs: int = 1,
                       matrix: AlexMatrix | None = None) -> ObstructionReport:
    m = matrix if matrix is not None else cocyclic_matrix(g, w.u, w.k)
    for t in w.tori1 + w.tori2:
        if t.n != m.nvars:
            raise ValueError("witness arity does not match the co-cyclic abelianization")
    n = m.ncols
    reasons = []
    grank = generic_rank(m)
    gdepth = depth_from_rank(n, grank)

    tori = list(w.tori1) + list(w.tori2)
    live = [t for t in tori if t.nonempty]
    if len(live) != len(tori):
        reasons.append("C1: a witness torus is empty")
    ranks = dict(zip(map(id, live), _ranks(m, live, jobs)))

    def treport(t):
        if not t.nonempty:
            return TorusReport(t, -1, 0, n, n - 1)
        r = ranks[id(t)]
        return TorusReport(t, t.dimension, r, n - r, depth_from_rank(n, r),
                           t.is_trivial_character())

    rep1 = [treport(t) for t in w.tori1]
    rep2 = [treport(t) for t in w.tori2]
    c1 = len(live) == len(tori)
    for lab, reps in (("tori1", rep1), ("tori2", rep2)):
        for idx, r in enumerate(reps):
            if r.trivial_character:
                c1 = False
                reasons.append(f"C1: {lab}[{idx}] is the trivial character")
            if r.depth < 1 or r.depth <= gdepth:
                c1 = False
                reasons.append(f"C1: {lab}[{idx}] has depth {r.depth} (generic {gdepth})")

    pairs = []
    inter = []
    for i, t1 in enumerate(w.tori1):
        for j, t2 in enumerate(w.tori2):
            x = t1.intersect(t2)
            if x.nonempty:
                pairs.append(PairReport(i, j, True, x.dimension))
                inter.append(x)
            else:
                pairs.append(PairReport(i, j, False))
    live_pairs = [p for p in pairs if p.nonempty and p.dimension >= 1]
    live_inter = [x for p, x in zip([p for p in pairs if p.nonempty], inter)
                  if p.dimension >= 1]
    for p, r in zip(live_pairs, _ranks(m, live_inter, jobs)):
        p.rank, p.corank, p.depth = r, n - r, depth_from_rank(n, r)
    c2 = bool(live_pairs)
    if not c2:
        reasons.append("C2: no pair of witness tori meets in positive dimension")

    single = len(w.tori1) == 1 and len(w.tori2) == 1
    c3 = False
    chosen = None
    for p in live_pairs:
        d1, d2 = rep1[p.index1].depth, rep2[p.index2].depth
        if p.depth > max(d1, d2) or single:
            c3 = True
            chosen = (p.index1, p.index2)
            break
    if c2 and not c3:
        reasons.append("C3: no intersection is deeper than both tori")
    if chosen is None and live_pairs:
        chosen = (live_pairs[0].index1, live_pairs[0].index2)

    return ObstructionReport(w.u, w.k, n, grank, n - grank, gdepth, rep1, rep2, pairs,
                             c1, c2, c3, chosen, reasons)
