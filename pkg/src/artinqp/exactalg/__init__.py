"""Exact algebra: Laurent polynomials, cyclotomic numbers, rational functions."""

from .cyclo import (
    CycloNumber, angle, angle_of, angle_roots, cyclo_embed, cyclotomic_poly,
    euler_phi, power_table,
)
from .laurent import LaurentPoly, p_poly
from .ratfunc import CycloPoly, RatFunc, TorusParametrization, substitute

__all__ = [
    "CycloNumber", "CycloPoly", "LaurentPoly", "RatFunc", "TorusParametrization",
    "angle", "angle_of", "angle_roots", "cyclo_embed", "cyclotomic_poly",
    "euler_phi", "p_poly", "power_table", "substitute",
]
