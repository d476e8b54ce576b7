"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are coordinate vectors in the power basis 1, z, ..., z^(phi(N)-1)
modulo the cyclotomic polynomial Phi_N.  Roots of unity that occur as torus
coordinates are tracked separately as angles q in Q/Z (meaning exp(2 pi i q));
see ``angle`` helpers at the bottom.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _poly_divmod_monic(a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    """Integer polynomial division by a monic b; lists are low-degree first."""
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [0], a
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    rem = a[:db] or [0]
    return q, rem


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("cyclotomic polynomials are indexed by n >= 1")
    num = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        num, rem = _poly_divmod_monic(num, list(cyclotomic_poly(d)))
        assert not any(rem)
    return tuple(num)


def euler_phi(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


@lru_cache(maxsize=None)
def power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Row e is the coordinate vector of z^e for 0 <= e < n (integers)."""
    phi = cyclotomic_poly(n)
    d = len(phi) - 1
    rows = []
    cur = [1] + [0] * (d - 1) if d else []
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by z and reduce
        nxt = [0] + cur[:-1] if d else []
        top = cur[-1] if d else 0
        if top:
            for j in range(d):
                nxt[j] -= top * phi[j]
        cur = nxt
    return tuple(rows)


def _reduce(coeffs: list, n: int) -> list:
    phi = cyclotomic_poly(n)
    d = len(phi) - 1
    c = list(coeffs)
    for i in range(len(c) - 1, d - 1, -1):
        t = c[i]
        if t:
            for j in range(d + 1):
                c[i - d + j] -= t * phi[j]
    c = c[:d] + [0] * max(0, d - len(c))
    return c


class CycloNumber:
    """An element of Q(zeta_N) with exact rational coordinates."""

    __slots__ = ("conductor", "coords")

    def __init__(self, conductor: int, coords):
        if conductor < 1:
            raise ValueError("conductor must be positive")
        d = euler_phi(conductor)
        c = [Fraction(x) for x in coords]
        if len(c) > d:
            c = _reduce(c, conductor)
        c = c + [Fraction(0)] * (d - len(c))
        self.conductor = conductor
        self.coords = tuple(c)

    @classmethod
    def from_int(cls, x, conductor: int = 1) -> "CycloNumber":
        return cls(conductor, [x])

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "CycloNumber":
        """zeta_n^k with zeta_n = exp(2 pi i / n)."""
        return cls(n, power_table(n)[k % n])

    @classmethod
    def root_of_unity(cls, angle: Fraction) -> "CycloNumber":
        angle = Fraction(angle) % 1
        return cls.zeta(angle.denominator, angle.numerator)

    def lift(self, m: int) -> "CycloNumber":
        """The same number written in Q(zeta_m), where conductor | m."""
        if m % self.conductor:
            raise ValueError("target conductor must be a multiple")
        if m == self.conductor:
            return self
        step = m // self.conductor
        table = power_table(m)
        out = [Fraction(0)] * euler_phi(m)
        for j, c in enumerate(self.coords):
            if c:
                for t, v in enumerate(table[(j * step) % m]):
                    if v:
                        out[t] += c * v
        return CycloNumber(m, out)

    def _common(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycloNumber(self.conductor, [other])
        if not isinstance(other, CycloNumber):
            return None, None
        m = self.conductor * other.conductor // gcd(self.conductor, other.conductor)
        return self.lift(m), other.lift(m)

    def __add__(self, other):
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        return CycloNumber(a.conductor, [x + y for x, y in zip(a.coords, b.coords)])

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber(self.conductor, [-x for x in self.coords])

    def __sub__(self, other):
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        return CycloNumber(a.conductor, [x - y for x, y in zip(a.coords, b.coords)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        d = len(a.coords)
        prod = [Fraction(0)] * max(1, 2 * d - 1)
        for i, x in enumerate(a.coords):
            if x:
                for j, y in enumerate(b.coords):
                    if y:
                        prod[i + j] += x * y
        return CycloNumber(a.conductor, _reduce(prod, a.conductor))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self):
        return not self.is_zero()

    def inverse(self) -> "CycloNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        n = self.conductor
        a = _trim(list(self.coords))
        b = _trim([Fraction(x) for x in cyclotomic_poly(n)])
        # extended Euclid: find s with s*a = 1 mod b
        s0, s1 = [Fraction(1)], [Fraction(0)]
        r0, r1 = a, b
        while len(r1) > 1 or r1[0] != 0:
            q, r = _qdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _trim(_psub(s0, _pmul(q, s1)))
        # r0 is a nonzero constant
        c = r0[0]
        return CycloNumber(n, _reduce([x / c for x in s0], n))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycloNumber(self.conductor, [other])
        return self * other.inverse()

    def __rtruediv__(self, other):
        return CycloNumber(self.conductor, [other]) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CycloNumber(self.conductor, [1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        return a.coords == b.coords

    def minimal_conductor(self) -> "CycloNumber":
        """Rewrite in the smallest Q(zeta_m) containing this element."""
        for m in _divisors(self.conductor):
            if self.conductor % m == 0:
                if m == self.conductor:
                    return self
                # try to descend: lift of a candidate must equal self
                step = self.conductor // m
                table = power_table(self.conductor)
                # coordinates in Q(zeta_m) solve a linear system; use the
                # images of the basis and back-substitute greedily
                cand = _descend(self, m, step, table)
                if cand is not None:
                    return cand
        return self

    def __hash__(self):
        r = self.minimal_conductor()
        return hash((r.conductor, r.coords))

    def to_complex(self) -> complex:
        import cmath
        z = cmath.exp(2j * cmath.pi / self.conductor)
        return sum(complex(float(c)) * z ** j for j, c in enumerate(self.coords))

    def __repr__(self):
        terms = [f"{c}*z^{j}" for j, c in enumerate(self.coords) if c]
        return f"CycloNumber(N={self.conductor}: {' + '.join(terms) or '0'})"


def _descend(x: CycloNumber, m: int, step: int, table) -> CycloNumber | None:
    """Solve lift(y) == x for y in Q(zeta_m) by linear algebra over Q."""
    dm = euler_phi(m)
    dn = euler_phi(x.conductor)
    cols = [table[(j * step) % x.conductor] for j in range(dm)]
    # Gaussian elimination on the dn x dm system
    aug = [[Fraction(cols[j][i]) for j in range(dm)] + [x.coords[i]] for i in range(dn)]
    piv_cols = []
    r = 0
    for c in range(dm):
        p = next((i for i in range(r, dn) if aug[i][c]), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(dn):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    if any(aug[i][dm] for i in range(r, dn)):
        return None
    y = [Fraction(0)] * dm
    for i, c in enumerate(piv_cols):
        y[c] = aug[i][dm]
    return CycloNumber(m, y)


def _trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p or [Fraction(0)]


def _pmul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _psub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _qdivmod(a, b):
    a = [Fraction(x) for x in a]
    b = _trim(b)
    if len(a) < len(b):
        return [Fraction(0)], _trim(a)
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / lead
        q[i] = c
        if c:
            for j, y in enumerate(b):
                a[i + j] -= c * y
    return _trim(q), _trim(a[: len(b) - 1] or [Fraction(0)])


def cyclo_embed(n: int, k: int) -> CycloNumber:
    return CycloNumber.zeta(n, k)


# angles: torsion points of the circle stored as q in [0, 1)

def angle(q) -> Fraction:
    return Fraction(q) % 1


def angle_of(n: int, k: int) -> Fraction:
    return Fraction(k, n) % 1


def angle_roots(q: Fraction, d: int) -> list[Fraction]:
    """All d-th roots of exp(2 pi i q), as angles, sorted."""
    return sorted(((Fraction(q) + m) / d) % 1 for m in range(d))
