"""Rational functions over cyclotomic fields and monomial substitution."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .cyclo import CycloNumber
from .laurent import LaurentPoly


@dataclass(frozen=True)
class TorusParametrization:
    """x_i = exp(2 pi i angles[i]) * s^exponents[i] for i < n.

    ``exponents[i]`` has one entry per free parameter s_0 .. s_{d-1}.
    """

    angles: tuple
    exponents: tuple

    @property
    def nvars(self) -> int:
        return len(self.angles)

    @property
    def nparams(self) -> int:
        return len(self.exponents[0]) if self.exponents else 0

    @property
    def conductor(self) -> int:
        return lcm(1, *(Fraction(a).denominator for a in self.angles))

    @property
    def coefficients(self) -> tuple:
        return tuple(CycloNumber.root_of_unity(a) for a in self.angles)

    def angle_exponents(self, conductor: int | None = None) -> tuple:
        """Integers e_i with x_i's root of unity equal to zeta_M^{e_i}."""
        m = conductor or self.conductor
        return tuple(int(Fraction(a) * m) % m for a in self.angles)


class CycloPoly:
    """Polynomial in s_0..s_{d-1} (nonnegative exponents) with CycloNumber
    coefficients."""

    __slots__ = ("nparams", "terms")

    def __init__(self, nparams: int, terms=None):
        self.nparams = nparams
        self.terms = {e: c for e, c in (terms or {}).items() if not c.is_zero()}

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return CycloPoly(self.nparams, out)

    def __neg__(self):
        return CycloPoly(self.nparams, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out[e] + c1 * c2 if e in out else c1 * c2
        return CycloPoly(self.nparams, out)

    def is_zero(self) -> bool:
        return not self.terms

    @classmethod
    def one(cls, nparams):
        return cls(nparams, {(0,) * nparams: CycloNumber.from_int(1)})


class RatFunc:
    """num/den with num, den in Q(zeta)[s_0..s_{d-1}] and den != 0."""

    __slots__ = ("num", "den")

    def __init__(self, num: CycloPoly, den: CycloPoly | None = None):
        if den is None:
            den = CycloPoly.one(num.nparams)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        self.num = num
        self.den = den

    @property
    def nparams(self):
        return self.num.nparams

    def __add__(self, other):
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        return RatFunc(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __mul__(self, other):
        return RatFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero()

    __hash__ = None


def substitute(poly: LaurentPoly, param: TorusParametrization) -> RatFunc:
    """Image of a Laurent polynomial under a torus parametrization."""
    if poly.nvars != param.nvars:
        raise ValueError("parametrization has the wrong number of variables")
    d = param.nparams
    m = param.conductor
    roots = param.angle_exponents(m)
    raw = []
    for e, c in poly.items():
        root = sum(k * r for k, r in zip(e, roots)) % m
        se = [0] * d
        for k, b in zip(e, param.exponents):
            if k:
                for j in range(d):
                    se[j] += k * b[j]
        raw.append((tuple(se), CycloNumber.zeta(m, root) * c))
    if not raw:
        return RatFunc(CycloPoly(d))
    shift = [min(se[j] for se, _ in raw) for j in range(d)]
    terms: dict = {}
    for se, c in raw:
        key = tuple(a - b for a, b in zip(se, shift))
        terms[key] = terms[key] + c if key in terms else c
    den = CycloPoly(d, {tuple(-x for x in shift): CycloNumber.from_int(1)})
    return RatFunc(CycloPoly(d, terms), den)
