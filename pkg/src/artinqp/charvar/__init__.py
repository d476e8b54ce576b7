"""Tori, exact ranks on tori, Fitting minors and obstruction checks."""

from ..exactalg.lattice import hnf, snf
from ..exactalg.ratfunc import TorusParametrization
from .obstruction import ObstructionReport, ObstructionWitness, verify_obstruction
from .rank import (
    charvar_depth, corank_on_torus, fitting_minors, generic_rank, laurent_det,
    rank_on_torus, rank_on_torus_components,
)
from .torus import (
    EmptyTorusError, TorsionTorus, format_torus_file, parse_torus_file,
    solve_pl_constraint, torus_canonicalize, torus_intersect, torus_parametrize,
)

__all__ = [
    "EmptyTorusError", "ObstructionReport", "ObstructionWitness", "TorsionTorus",
    "TorusParametrization", "charvar_depth", "corank_on_torus", "fitting_minors",
    "format_torus_file", "generic_rank", "hnf", "laurent_det", "parse_torus_file",
    "rank_on_torus", "rank_on_torus_components", "snf", "solve_pl_constraint",
    "torus_canonicalize", "torus_intersect", "torus_parametrize", "verify_obstruction",
]
