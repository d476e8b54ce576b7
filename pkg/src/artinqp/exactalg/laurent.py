"""Multivariate Laurent polynomials over the integers."""

from __future__ import annotations

import ast
from typing import Iterable, Mapping, Sequence


class LaurentPoly:
    """An element of Z[t_0^{+-1}, ..., t_{n-1}^{+-1}].

    Terms are kept as a dict from exponent tuples to nonzero ints.  Instances
    are treated as immutable.
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple, int] | None = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    if len(e) != nvars:
                        raise ValueError("exponent length does not match nvars")
                    clean[tuple(e)] = clean.get(tuple(e), 0) + c
            clean = {e: c for e, c in clean.items() if c}
        self._terms = clean
        self._hash = None

    # constructors

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, c: int) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exps: Sequence[int], c: int = 1) -> "LaurentPoly":
        return cls(len(exps), {tuple(exps): c})

    @classmethod
    def var(cls, i: int, nvars: int, power: int = 1) -> "LaurentPoly":
        e = [0] * nvars
        e[i] = power
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def _raw(cls, nvars, terms):
        p = cls.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    # inspection

    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_unit(self) -> bool:
        """Units of the Laurent ring are +-monomials."""
        return len(self._terms) == 1 and abs(next(iter(self._terms.values()))) == 1

    def constant_term(self) -> int:
        return self._terms.get((0,) * self.nvars, 0)

    def min_exponents(self) -> tuple:
        if not self._terms:
            return (0,) * self.nvars
        return tuple(min(e[i] for e in self._terms) for i in range(self.nvars))

    def degree_bounds(self) -> list[tuple[int, int]]:
        if not self._terms:
            return [(0, 0)] * self.nvars
        return [(min(e[i] for e in self._terms), max(e[i] for e in self._terms))
                for i in range(self.nvars)]

    # arithmetic

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ValueError("mixing Laurent polynomials in different rings")
            return other
        if isinstance(other, int):
            return LaurentPoly.const(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return LaurentPoly._raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise ValueError("only monomials have negative powers")
            (e, c), = self._terms.items()
            if abs(c) != 1:
                raise ValueError("only unit monomials have negative powers")
            return LaurentPoly._raw(self.nvars, {tuple(x * k for x in e): c ** (-k)})
        result = LaurentPoly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, exps: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial t^exps."""
        return LaurentPoly._raw(
            self.nvars,
            {tuple(a + b for a, b in zip(e, exps)): c for e, c in self._terms.items()},
        )

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(self.nvars, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def substitute_monomials(self, images: Sequence["LaurentPoly"]) -> "LaurentPoly":
        """Ring map t_i -> images[i]; images must be unit monomials."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        m = images[0].nvars if images else 0
        imgs = []
        for im in images:
            if not im.is_unit():
                raise ValueError("images must be unit monomials")
            (e, c), = im._terms.items()
            imgs.append((e, c))
        out: dict = {}
        for e, c in self._terms.items():
            ne = [0] * m
            sign = c
            for i, k in enumerate(e):
                if k:
                    ie, ic = imgs[i]
                    for j in range(m):
                        ne[j] += ie[j] * k
                    if ic == -1 and k % 2:
                        sign = -sign
            t = tuple(ne)
            v = out.get(t, 0) + sign
            if v:
                out[t] = v
            else:
                out.pop(t, None)
        return LaurentPoly._raw(m, out)

    def evaluate(self, point: Sequence, one=1):
        """Evaluate at a point of any commutative ring supporting ``**`` with
        negative exponents (Fractions, complex numbers, ...)."""
        total = 0 * one
        for e, c in self._terms.items():
            term = c * one
            for x, k in zip(point, e):
                if k:
                    term = term * x ** k
            total = total + term
        return total

    # text

    def sorted_terms(self) -> list[tuple[tuple, int]]:
        """Terms in graded lexicographic order, largest first."""
        return sorted(self._terms.items(), key=lambda ec: (sum(ec[0]), ec[0]), reverse=True)

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if not self._terms:
            return "0"
        if names is None:
            names = [f"t{i}" for i in range(self.nvars)]
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            for name, k in zip(names, e):
                if k == 1:
                    factors.append(name)
                elif k:
                    factors.append(f"{name}^{k}")
            mono = "*".join(factors)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += sign + body
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"LaurentPoly({self.nvars}, {self.to_str()!r})"

    @classmethod
    def parse(cls, text: str, names: Sequence[str] | int) -> "LaurentPoly":
        """Parse an expression such as ``-(t0*t1+1)*(t1-1)`` or ``t0^-1 - 2``.

        ``names`` is either the list of variable names or the number of
        variables, in which case the names are ``t0 .. t{n-1}``.
        """
        if isinstance(names, int):
            names = [f"t{i}" for i in range(names)]
        index = {name: i for i, name in enumerate(names)}
        n = len(names)
        try:
            tree = ast.parse(text.replace("^", "**").strip(), mode="eval")
        except SyntaxError as exc:
            raise ValueError(f"cannot parse polynomial {text!r}") from exc

        def ev(node):
            if isinstance(node, ast.Expression):
                return ev(node.body)
            if isinstance(node, ast.Constant) and isinstance(node.value, int) \
                    and not isinstance(node.value, bool):
                return cls.const(n, node.value)
            if isinstance(node, ast.Name):
                if node.id not in index:
                    raise ValueError(f"unknown variable {node.id!r}")
                return cls.var(index[node.id], n)
            if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
                v = ev(node.operand)
                return -v if isinstance(node.op, ast.USub) else v
            if isinstance(node, ast.BinOp):
                if isinstance(node.op, ast.Pow):
                    k = _int_literal(node.right)
                    return ev(node.left) ** k
                a, b = ev(node.left), ev(node.right)
                if isinstance(node.op, ast.Add):
                    return a + b
                if isinstance(node.op, ast.Sub):
                    return a - b
                if isinstance(node.op, ast.Mult):
                    return a * b
            raise ValueError(f"unsupported syntax in polynomial {text!r}")

        return ev(tree)


def _int_literal(node) -> int:
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return node.value
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_int_literal(node.operand)
    raise ValueError("exponents must be integer literals")


def p_poly(l: int, x: LaurentPoly) -> LaurentPoly:
    """p_l(x) = 1 + x + ... + x^(l-1)."""
    if l < 0:
        raise ValueError("p_l needs l >= 0")
    total = LaurentPoly.zero(x.nvars)
    power = LaurentPoly.const(x.nvars, 1)
    for _ in range(l):
        total = total + power
        power = power * x
    return total


def monomial_from_exponents(exps: Mapping[int, int], nvars: int) -> LaurentPoly:
    e = [0] * nvars
    for i, k in exps.items():
        e[i] += k
    return LaurentPoly.monomial(e)


def poly_sum(items: Iterable[LaurentPoly], nvars: int) -> LaurentPoly:
    total = LaurentPoly.zero(nvars)
    for x in items:
        total = total + x
    return total
