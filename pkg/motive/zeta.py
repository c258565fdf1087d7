"""
Monodromy zeta function from the exceptional divisors of a resolution:

    ζ(t) = Π_i (1 − t^{m_i})^{−χ(E_i°)}
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

import sympy as sp

from algebra.errors import StructuralError
from resolution.graph import ResolutionGraph

t = sp.Symbol("t")


@dataclass(frozen=True)
class ZetaFn:
    factors: tuple[tuple[int, int], ...]

    def as_rational(self) -> sp.Expr:
        return sp.cancel(prod(((1 - t**m) ** e for m, e in self.factors), start=sp.Integer(1)))

    @property
    def degree(self) -> int:
        """deg numerator − deg denominator."""
        return sum(m * e for m, e in self.factors)

    def __str__(self):
        if not self.factors:
            return "1"
        return " ".join(f"(1-t{'' if m == 1 else f'^{m}'})^{e}" for m, e in self.factors)


def monodromy_zeta(g: ResolutionGraph) -> ZetaFn:
    if not g.snc_certificate:
        raise StructuralError("the zeta function needs a resolution with a normal-crossings certificate")
    exponents: dict[int, int] = {}
    for d in g.divisors:
        exponents[d.m] = exponents.get(d.m, 0) - g.chi(d.id)
    return ZetaFn(tuple((m, e) for m, e in sorted(exponents.items()) if e != 0))
