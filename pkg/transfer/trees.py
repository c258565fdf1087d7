"""
Homotopy transfer of an L∞ structure to cohomology.

The rooted-tree sum is organized by leaf count. Coefficients live in the
free graded-commutative algebra Λ with one generator x_h per cohomology
basis element, |x_h| = 1 − |h|, so that z = Σ x_h h has degree 1. With
m_k = (−1)^{k(k+1)/2} μ_k extended to Λ ⊗ L by the Koszul rule,

    a_1 = ι(z)
    q_n = Σ_k 1/k! Σ_{n_1+…+n_k = n} m_k(a_{n_1}, …, a_{n_k})
    a_n = η(q_n)

so a_n collects the trees with n leaves whose root edge carries η, and
p(q_n) = ((−1)^{n(n+1)/2}/n!) ν_n(z, …, z). The coefficient of the monomial
x_{h_1}⋯x_{h_n} in p(q_n) gives ν_n(h_1, …, h_n). On the degree-1 sector
every generator is even and the coefficients are ordinary polynomials.

Koszul rule: φ(λ_1 b_1, …, λ_k b_k) = ±λ_1⋯λ_k φ(b_1, …, b_k), the sign
collected by moving each λ_i past φ and past b_1, …, b_{i−1}.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, product
from math import factorial, prod
from typing import Sequence

from algebra.errors import ResourceError, StructuralError
from linfty.axioms import AxiomReport, check_cyclic, check_jacobi
from linfty.graded import GradedSpace, LinearMap
from linfty.structure import CyclicPairing, LInftyStructure, eval_mu, repeats_even

from .contraction import Contraction

Monomial = tuple[int, ...]
Coefficient = dict[Monomial, Fraction]
CoefficientVector = dict[str, Coefficient]


@dataclass(frozen=True)
class TransferredStructure:
    structure: LInftyStructure
    pairing: CyclicPairing
    contraction: Contraction
    order: int
    source_arity: int = 0

    @property
    def minimal(self) -> bool:
        return self.contraction.minimal


class GradedCoefficients:
    """Free graded-commutative algebra on one generator per basis element of H."""

    def __init__(self, M: GradedSpace):
        self.names = M.basis
        self.odd = tuple(_parity(M, h) == 1 for h in M.basis)

    def generator(self, name: str) -> Coefficient:
        return {tuple(1 if n == name else 0 for n in self.names): Fraction(1)}

    def _merge(self, e1: Monomial, e2: Monomial) -> tuple[int, Monomial] | None:
        swaps = 0
        later = 0
        for j in range(len(e1) - 1, -1, -1):
            if not self.odd[j]:
                continue
            if e1[j] and e2[j]:
                return None
            if e2[j]:
                swaps += later
            if e1[j]:
                later += 1
        return (-1 if swaps % 2 else 1), tuple(a + b for a, b in zip(e1, e2))

    def multiply(self, p: Coefficient, q: Coefficient) -> Coefficient:
        out: Coefficient = {}
        for e1, c1 in p.items():
            for e2, c2 in q.items():
                merged = self._merge(e1, e2)
                if merged is None:
                    continue
                sign, e = merged
                out[e] = out.get(e, Fraction(0)) + sign * c1 * c2
        return {e: c for e, c in out.items() if c}


def _parity(space: GradedSpace, name: str) -> int:
    """Parity of the coefficient carried by `name` in a degree-1 element."""
    return (1 - space.degree(name)) % 2


def _koszul_exponent(space: GradedSpace, names: Sequence[str], map_degree: int) -> int:
    total = 0
    passed = map_degree
    for n in names:
        if _parity(space, n):
            total += passed
        passed += space.degree(n)
    return total


def _mc_sign(k: int) -> int:
    return -1 if (k * (k + 1) // 2) % 2 else 1


@lru_cache(maxsize=None)
def partitions(n: int, k: int, smallest: int = 1) -> tuple[tuple[int, ...], ...]:
    """Nondecreasing k-tuples of positive integers summing to n."""
    if k == 1:
        return ((n,),) if n >= smallest else ()
    out = []
    for first in range(smallest, n // k + 1):
        for rest in partitions(n - first, k - 1, first):
            out.append((first,) + rest)
    return tuple(out)


def _orderings(parts: tuple[int, ...]) -> int:
    return factorial(len(parts)) // prod(factorial(c) for c in Counter(parts).values())


def _accumulate(acc: CoefficientVector, name: str, coeff: Coefficient, scale) -> None:
    slot = acc.setdefault(name, {})
    for e, c in coeff.items():
        slot[e] = slot.get(e, Fraction(0)) + scale * c


def _cleaned(vec: CoefficientVector) -> CoefficientVector:
    out: CoefficientVector = {}
    for name, coeff in vec.items():
        kept = {e: c for e, c in coeff.items() if c}
        if kept:
            out[name] = kept
    return out


def _apply(f: LinearMap, vec: CoefficientVector, space: GradedSpace, *, odd: bool) -> CoefficientVector:
    """f on Λ ⊗ L; an odd map picks up the parity of each coefficient."""
    out: CoefficientVector = {}
    for name, coeff in vec.items():
        sign = -1 if odd and _parity(space, name) else 1
        for target, c in f.image(name).items():
            _accumulate(out, target, coeff, sign * c)
    return _cleaned(out)


def _bracket(S: LInftyStructure, args: list[CoefficientVector], G: GradedCoefficients) -> CoefficientVector:
    k = len(args)
    out: CoefficientVector = {}
    for combo in product(*(list(a.items()) for a in args)):
        names = tuple(n for n, _ in combo)
        value = S.basis_value(names)
        if not value:
            continue
        coeff = combo[0][1]
        for _, c in combo[1:]:
            coeff = G.multiply(coeff, c)
            if not coeff:
                break
        if not coeff:
            continue
        scale = -1 if _koszul_exponent(S.space, names, 2 - k) % 2 else 1
        for target, c in value.items():
            _accumulate(out, target, coeff, scale * c)
    return _cleaned(out)


def _restrict_minimal(S: LInftyStructure, C: Contraction, N: int) -> dict:
    M = C.h_space
    maps = {}
    for k in range(1, min(N, S.max_arity) + 1):
        if k not in S.maps:
            continue
        table = {}
        for args in combinations_with_replacement(M.basis, k):
            if repeats_even(M, args):
                continue
            value = C.proj(eval_mu(S, k, [C.iota.image(h) for h in args]))
            if value:
                table[args] = value
        if table:
            maps[k] = table
    return maps


def _tree_brackets(S: LInftyStructure, C: Contraction, N: int) -> dict:
    M = C.h_space
    L = S.space
    G = GradedCoefficients(M)
    first: CoefficientVector = {}
    for h in M.basis:
        for target, c in C.iota.image(h).items():
            _accumulate(first, target, G.generator(h), c)
    a: dict[int, CoefficientVector] = {1: _cleaned(first)}
    maps = {}
    for n in range(2, N + 1):
        q: CoefficientVector = {}
        for k in range(2, min(n, S.max_arity) + 1):
            if k not in S.maps:
                continue
            scale = Fraction(_mc_sign(k), factorial(k))
            for parts in partitions(n, k):
                if any(not a.get(p) for p in parts):
                    continue
                term = _bracket(S, [a[p] for p in parts], G)
                weight = scale * _orderings(parts)
                for target, coeff in term.items():
                    _accumulate(q, target, coeff, weight)
        q = _cleaned(q)
        harmonic = _apply(C.proj, q, L, odd=False)
        table: dict[tuple[str, ...], dict[str, Fraction]] = {}
        for g, coeff in harmonic.items():
            for exp, c in coeff.items():
                args = tuple(h for h, e in zip(M.basis, exp) for _ in range(e))
                sign = -1 if _koszul_exponent(M, args, 2 - n) % 2 else 1
                alpha = prod(factorial(e) for e in exp)
                table.setdefault(args, {})[g] = sign * _mc_sign(n) * alpha * c
        if table:
            maps[n] = table
        a[n] = _apply(C.eta, q, L, odd=True)
    return maps


def transfer(S: LInftyStructure, ae: CyclicPairing, C: Contraction, N: int, *, budget: int = 24) -> TransferredStructure:
    """ν_k on cohomology for k ≤ N, with κ the restriction of ae."""
    if N < 2:
        raise StructuralError(f"transfer order must be >= 2, got {N}")
    if N > budget:
        raise ResourceError(f"transfer order {N} exceeds the arity budget {budget}")
    M = C.h_space
    kappa = {}
    for i, h in enumerate(M.basis):
        for g in M.basis[i:]:
            value = ae.pair(C.iota.image(h), C.iota.image(g))
            if value:
                kappa[(h, g)] = value
    pairing = CyclicPairing(M, kappa, ae.dimension)
    maps = _restrict_minimal(S, C, N) if C.minimal else _tree_brackets(S, C, N)
    return TransferredStructure(LInftyStructure(M, maps), pairing, C, N, S.max_arity)


def check_transfer(T: TransferredStructure, N: int) -> AxiomReport:
    return check_jacobi(T.structure, N).merge(check_cyclic(T.structure, T.pairing, N))
