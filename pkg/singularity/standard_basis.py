"""
Standard bases in the local ring ℚ[x]_(x) under the anti-graded order.

The leading monomial of a polynomial is its lowest-degree monomial, ties
broken lexicographically (x before y). Reduction is Mora's normal form:
among divisors of the leading term the one with least écart is used, and
the current remainder joins the reducer set whenever it has smaller écart
than the divisor chosen.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from typing import Iterable, Sequence

from algebra.errors import InternalError, ResourceError, StructuralError
from algebra.poly import Exponent, Poly


def local_key(exp: Exponent):
    return (-sum(exp), exp)


def leading_exponent(p: Poly) -> Exponent:
    if p.is_zero():
        raise StructuralError("the zero polynomial has no leading term")
    return max(p.terms, key=local_key)


def leading_term(p: Poly) -> tuple[Exponent, Fraction]:
    e = leading_exponent(p)
    return e, p.terms[e]


def ecart(p: Poly) -> int:
    return p.degree() - sum(leading_exponent(p))


def divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


class LocalIdeal:
    """Ideal of the local ring at the origin, given by nonzero generators."""

    def __init__(self, generators: Iterable[Poly], variables: Sequence[str] | None = None):
        gens = [g for g in generators if not g.is_zero()]
        if variables is None:
            if not gens:
                raise StructuralError("cannot infer variables of an ideal without generators")
            variables = gens[0].variables
        variables = tuple(variables)
        for g in gens:
            if g.variables != variables:
                raise StructuralError(f"generator in {g.variables}, expected {variables}")
        self.generators = tuple(gens)
        self.variables = variables

    def leading_exponents(self) -> list[Exponent]:
        return [leading_exponent(g) for g in self.generators]

    def leading_ideal(self) -> list[Exponent]:
        """Minimal generators of the leading-monomial ideal, sorted."""
        leads = sorted(set(self.leading_exponents()), key=lambda e: (sum(e), tuple(-x for x in e)))
        minimal = []
        for e in leads:
            if not any(divides(m, e) for m in minimal):
                minimal.append(e)
        return minimal

    def __len__(self):
        return len(self.generators)

    def __repr__(self):
        return f"LocalIdeal({[str(g) for g in self.generators]})"


def _reduce_step(h: Poly, g: Poly) -> Poly:
    eh, ch = leading_term(h)
    eg, cg = leading_term(g)
    shift = tuple(a - b for a, b in zip(eh, eg))
    return h - g.shift(shift, ch / cg)


def local_normal_form(p: Poly, G: LocalIdeal, *, max_steps: int = 20000) -> Poly:
    """Mora normal form of p with respect to G."""
    if p.variables != G.variables and G.generators:
        raise StructuralError(f"polynomial in {p.variables}, ideal in {G.variables}")
    h = p
    reducers = list(G.generators)
    steps = 0
    while not h.is_zero():
        lead = leading_exponent(h)
        candidates = [g for g in reducers if divides(leading_exponent(g), lead)]
        if not candidates:
            break
        g = min(candidates, key=ecart)
        if ecart(g) > ecart(h):
            reducers.append(h)
        h = _reduce_step(h, g)
        steps += 1
        if steps > max_steps:
            raise InternalError(f"normal form did not terminate within {max_steps} reduction steps")
    return h


def s_polynomial(f: Poly, g: Poly) -> Poly:
    ef, cf = leading_term(f)
    eg, cg = leading_term(g)
    lcm = tuple(max(a, b) for a, b in zip(ef, eg))
    left = f.shift(tuple(a - b for a, b in zip(lcm, ef)), 1 / cf)
    right = g.shift(tuple(a - b for a, b in zip(lcm, eg)), 1 / cg)
    return left - right


def standard_basis(J: LocalIdeal, *, degree_cap: int = 64, max_steps: int = 20000) -> LocalIdeal:
    """Standard basis by S-pair completion, pairs processed first in first out."""
    basis = list(J.generators)
    pairs = deque((i, j) for j in range(len(basis)) for i in range(j))
    while pairs:
        i, j = pairs.popleft()
        s = s_polynomial(basis[i], basis[j])
        if s.is_zero():
            continue
        h = local_normal_form(s, LocalIdeal(basis, J.variables), max_steps=max_steps)
        if h.is_zero():
            continue
        if h.degree() > degree_cap:
            raise ResourceError(
                f"standard basis element of degree {h.degree()} exceeds the degree cap {degree_cap} "
                f"({len(basis)} elements so far)"
            )
        basis.append(h)
        pairs.extend((k, len(basis) - 1) for k in range(len(basis) - 1))
    return LocalIdeal(basis, J.variables)
