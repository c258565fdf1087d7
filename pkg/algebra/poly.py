"""
Sparse multivariate polynomials and order-truncated power series over ℚ.

Terms are kept as a map from exponent tuples to nonzero Fractions, in
graded-lexicographic order (total degree first, then x before y), so the
text form of a polynomial is reproducible byte for byte.
"""

from __future__ import annotations

import math
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

import sympy as sp

from .errors import StructuralError

Exponent = tuple[int, ...]


def _grlex_key(exp: Exponent):
    return (sum(exp), tuple(-e for e in exp))


def format_rational(value: Fraction) -> str:
    """`p` or `p/q`; never a float."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def to_fraction(value) -> Fraction:
    """Convert ints, Fractions and sympy rationals to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise StructuralError(f"floating-point value {value!r} where an exact rational is required")
    r = sp.Rational(value)
    return Fraction(int(r.p), int(r.q))


class Poly:
    """Immutable sparse polynomial with an explicit, ordered variable list."""

    __slots__ = ("variables", "_terms", "_hash")

    def __init__(self, variables: Iterable[str], terms: Mapping[Exponent, object] | None = None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise StructuralError(f"duplicate variable names in {variables}")
        clean: dict[Exponent, Fraction] = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != len(variables):
                raise StructuralError(
                    f"exponent {exp} has length {len(exp)}, expected {len(variables)}"
                )
            if any(e < 0 for e in exp):
                raise StructuralError(f"negative exponent in {exp}")
            c = to_fraction(coeff)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
        self.variables = variables
        self._terms = {e: clean[e] for e in sorted(clean, key=_grlex_key) if clean[e]}
        self._hash = None

    @classmethod
    def _raw(cls, variables: tuple[str, ...], terms: dict[Exponent, Fraction]) -> "Poly":
        p = cls.__new__(cls)
        p.variables = variables
        p._terms = {e: terms[e] for e in sorted(terms, key=_grlex_key)}
        p._hash = None
        return p

    # ── Constructors ─────────────────────────────────────────

    @classmethod
    def zero(cls, variables: Iterable[str]) -> "Poly":
        return cls._raw(tuple(variables), {})

    @classmethod
    def constant(cls, variables: Iterable[str], value) -> "Poly":
        variables = tuple(variables)
        c = to_fraction(value)
        return cls._raw(variables, {(0,) * len(variables): c} if c else {})

    @classmethod
    def var(cls, variables: Iterable[str], name: str) -> "Poly":
        variables = tuple(variables)
        if name not in variables:
            raise StructuralError(f"{name!r} is not one of {variables}")
        exp = tuple(int(v == name) for v in variables)
        return cls._raw(variables, {exp: Fraction(1)})

    @classmethod
    def monomial(cls, variables: Iterable[str], exp: Exponent, coeff=1) -> "Poly":
        return cls(variables, {tuple(exp): coeff})

    # ── Access ───────────────────────────────────────────────

    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        return MappingProxyType(self._terms)

    def __iter__(self) -> Iterator[tuple[Exponent, Fraction]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, exp: Exponent) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * len(self.variables))

    def degree(self) -> int:
        """Largest total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def order(self):
        """Smallest total degree of a term; math.inf for zero."""
        return min((sum(e) for e in self._terms), default=math.inf)

    def order_in(self, name: str):
        """Largest k with name^k dividing the polynomial; math.inf for zero."""
        i = self._position(name)
        return min((e[i] for e in self._terms), default=math.inf)

    def _position(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise StructuralError(f"{name!r} is not one of {self.variables}") from None

    # ── Arithmetic ───────────────────────────────────────────

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.variables != self.variables:
                raise StructuralError(
                    f"variable lists differ: {self.variables} vs {other.variables}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.constant(self.variables, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        terms = dict(self._terms)
        for e, c in o._terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Poly._raw(self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.variables, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return Poly.zero(self.variables)
            return Poly._raw(self.variables, {e: v * c for e, v in self._terms.items()})
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        terms: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in o._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return Poly._raw(self.variables, {e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise StructuralError(f"polynomial powers must be non-negative integers, got {n!r}")
        result = Poly.constant(self.variables, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, exp: Exponent, coeff=1) -> "Poly":
        """Multiply by the monomial coeff·x^exp."""
        c = to_fraction(coeff)
        if not c:
            return Poly.zero(self.variables)
        return Poly._raw(
            self.variables,
            {tuple(a + b for a, b in zip(e, exp)): v * c for e, v in self._terms.items()},
        )

    def divide_monomial(self, exp: Exponent) -> "Poly":
        """Exact division by x^exp."""
        out = {}
        for e, c in self._terms.items():
            q = tuple(a - b for a, b in zip(e, exp))
            if any(x < 0 for x in q):
                raise StructuralError(f"{self} is not divisible by the monomial {exp}")
            out[q] = c
        return Poly._raw(self.variables, out)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.variables == other.variables and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.constant(self.variables, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self._terms.items())))
        return self._hash

    # ── Calculus and truncation ──────────────────────────────

    def diff(self, name: str) -> "Poly":
        i = self._position(name)
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                d = list(e)
                d[i] -= 1
                out[tuple(d)] = c * e[i]
        return Poly._raw(self.variables, out)

    def truncate(self, n: int) -> "Poly":
        """Drop every term of total degree > n."""
        return Poly._raw(self.variables, {e: c for e, c in self._terms.items() if sum(e) <= n})

    def homogeneous(self, n: int) -> "Poly":
        return Poly._raw(self.variables, {e: c for e, c in self._terms.items() if sum(e) == n})

    def evaluate(self, values: Mapping[str, object]) -> Fraction:
        point = [to_fraction(values[v]) for v in self.variables]
        total = Fraction(0)
        for e, c in self._terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term *= x ** k
            total += term
        return total

    def substitute(self, mapping: Mapping[str, "Poly"], variables: Iterable[str] | None = None) -> "Poly":
        """Compose with a polynomial map; all images share one variable list."""
        missing = [v for v in self.variables if v not in mapping]
        if missing:
            raise StructuralError(f"substitution does not assign {missing}")
        images = [mapping[v] for v in self.variables]
        if variables is None:
            if not images:
                raise StructuralError("cannot infer the target variables of an empty substitution")
            variables = images[0].variables
        variables = tuple(variables)
        for img in images:
            if img.variables != variables:
                raise StructuralError(
                    f"substitution images live in {img.variables}, expected {variables}"
                )
        powers: list[dict[int, Poly]] = [{} for _ in images]

        def power(i: int, k: int) -> Poly:
            cache = powers[i]
            if k not in cache:
                cache[k] = images[i] ** k
            return cache[k]

        acc: dict[Exponent, Fraction] = {}
        for e, c in self._terms.items():
            term = Poly.constant(variables, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            for te, tc in term._terms.items():
                acc[te] = acc.get(te, 0) + tc
        return Poly._raw(variables, {e: c for e, c in acc.items() if c})

    def with_variables(self, variables: Iterable[str]) -> "Poly":
        """Re-embed into a variable list containing every variable that occurs."""
        variables = tuple(variables)
        used = {v for e in self._terms for v, k in zip(self.variables, e) if k}
        if not used <= set(variables):
            raise StructuralError(f"{sorted(used - set(variables))} missing from {variables}")
        out = {}
        for e, c in self._terms.items():
            powers = dict(zip(self.variables, e))
            out[tuple(powers.get(v, 0) for v in variables)] = c
        return Poly._raw(variables, out)

    # ── sympy bridge ─────────────────────────────────────────

    def to_sympy(self) -> sp.Expr:
        symbols = [sp.Symbol(v) for v in self.variables]
        return sp.Add(*[
            sp.Rational(c.numerator, c.denominator) * sp.Mul(*[s ** k for s, k in zip(symbols, e)])
            for e, c in self._terms.items()
        ])

    @classmethod
    def from_sympy(cls, expr, variables: Iterable[str]) -> "Poly":
        variables = tuple(variables)
        expr = sp.sympify(expr)
        if not variables:
            if not expr.is_Rational:
                raise StructuralError(f"{expr} is not a rational constant")
            return cls.constant((), to_fraction(expr))
        symbols = [sp.Symbol(v) for v in variables]
        try:
            poly = sp.Poly(expr, *symbols, domain=sp.QQ)
        except (sp.PolynomialError, sp.CoercionFailed) as exc:
            raise StructuralError(f"{expr} is not a polynomial in {variables} over QQ: {exc}") from exc
        return cls(variables, {tuple(m): to_fraction(c) for m, c in poly.terms()})

    # ── Text ─────────────────────────────────────────────────

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self._terms.items():
            mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, e) if k)
            mag = abs(c)
            if not mono:
                body = format_rational(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{format_rational(mag)}*{mono}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"Poly({str(self)!r}, variables={self.variables})"


class PowerSeries:
    """A polynomial known only through total degree `order`."""

    __slots__ = ("base", "order")

    def __init__(self, base: Poly, order: int):
        if order < 0:
            raise StructuralError(f"truncation order must be >= 0, got {order}")
        self.base = base.truncate(order)
        self.order = order

    @property
    def variables(self) -> tuple[str, ...]:
        return self.base.variables

    def _operand(self, other) -> tuple[Poly, int]:
        if isinstance(other, PowerSeries):
            return other.base, other.order
        if isinstance(other, (Poly, int, Fraction)):
            return other, self.order
        return NotImplemented, 0

    def __add__(self, other):
        base, order = self._operand(other)
        if base is NotImplemented:
            return NotImplemented
        n = min(self.order, order)
        return PowerSeries(self.base.truncate(n) + base, n)

    __radd__ = __add__

    def __sub__(self, other):
        base, order = self._operand(other)
        if base is NotImplemented:
            return NotImplemented
        n = min(self.order, order)
        return PowerSeries(self.base.truncate(n) - base, n)

    def __neg__(self):
        return PowerSeries(-self.base, self.order)

    def __mul__(self, other):
        base, order = self._operand(other)
        if base is NotImplemented:
            return NotImplemented
        n = min(self.order, order)
        return PowerSeries(self.base * base, n)

    __rmul__ = __mul__

    def diff(self, name: str) -> "PowerSeries":
        """Derivative, known one degree less precisely than the series."""
        if self.order == 0:
            raise StructuralError("the derivative of a series truncated at order 0 carries no terms")
        return PowerSeries(self.base.diff(name), self.order - 1)

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.order == other.order and self.base == other.base

    def __hash__(self):
        return hash((self.base, self.order))

    def __str__(self):
        return f"{self.base} + O(deg {self.order + 1})"

    def __repr__(self):
        return f"PowerSeries({str(self.base)!r}, order={self.order})"


# ── Module-level operations ──────────────────────────────────

def poly_arith(p: Poly, q: Poly, op: str) -> Poly:
    if p.variables != q.variables:
        raise StructuralError(f"variable lists differ: {p.variables} vs {q.variables}")
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise StructuralError(f"unknown polynomial operation {op!r}")


def poly_order(p: Poly):
    return p.order()


def poly_order_in(p: Poly, name: str):
    return p.order_in(name)


def substitute(p: Poly, mapping: Mapping[str, Poly], variables: Iterable[str] | None = None) -> Poly:
    return p.substitute(mapping, variables)
