"""
Axiom checks for L∞ structures and cyclic pairings.

Checks never raise on a failed identity: every nonzero residual becomes a
Violation in the returned AxiomReport.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product

from algebra.errors import AxiomError
from algebra.linalg import is_invertible, rank

from .cohomology import cohomology
from .graded import Vector, add_scaled, basis_vector
from .structure import CyclicPairing, LInftyStructure, repeats_even, eval_mu, koszul_sign


@dataclass(frozen=True)
class Violation:
    identity: str
    arguments: tuple[str, ...]
    residual: dict[str, Fraction]

    def __str__(self):
        res = ", ".join(f"{k}: {v}" for k, v in self.residual.items())
        return f"{self.identity}({', '.join(self.arguments)}) residual {{{res}}}"


@dataclass
class AxiomReport:
    checked_arities: list[int] = field(default_factory=list)
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def identities(self) -> list[str]:
        return sorted({v.identity for v in self.violations})

    def merge(self, other: "AxiomReport") -> "AxiomReport":
        arities = sorted(set(self.checked_arities) | set(other.checked_arities))
        return AxiomReport(arities, self.violations + other.violations)


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


def jacobi_residual(S: LInftyStructure, args: tuple[str, ...]) -> Vector:
    """Left-hand side of the n-th higher Jacobi identity on basis arguments."""
    n = len(args)
    degrees = [S.space.degree(a) for a in args]
    residual: Vector = {}
    for l in range(1, n + 1):
        outer = n - l + 1
        if l not in S.maps or outer not in S.maps:
            continue
        base = _sign((n - l + 1) * (l - 1))
        for first in combinations(range(n), l):
            rest = [i for i in range(n) if i not in first]
            perm = list(first) + rest
            chi = koszul_sign(perm, degrees).combined
            inner = S.basis_value(tuple(args[i] for i in first))
            if not inner:
                continue
            value = eval_mu(S, outer, [inner] + [basis_vector(args[i]) for i in rest])
            add_scaled(residual, value, base * chi)
    return residual


def check_jacobi(S: LInftyStructure, n_max: int) -> AxiomReport:
    """Higher Jacobi identities for every multiset of basis arguments of size ≤ n_max.

    n = 1 is μ_1∘μ_1 = 0.
    """
    report = AxiomReport(checked_arities=list(range(1, n_max + 1)))
    basis = S.space.basis
    for n in range(1, n_max + 1):
        if not any(l in S.maps and (n - l + 1) in S.maps for l in range(1, n + 1)):
            continue
        for args in combinations_with_replacement(basis, n):
            if repeats_even(S.space, args):
                continue
            residual = jacobi_residual(S, args)
            if residual:
                report.violations.append(Violation(f"jacobi[n={n}]", args, residual))
    return report


def _check_symmetry(ae: CyclicPairing, report: AxiomReport) -> None:
    space = ae.space
    for (a, b), value in sorted(ae.entries.items(), key=lambda kv: (space.index(kv[0][0]), space.index(kv[0][1]))):
        da, db = space.degree(a), space.degree(b)
        if a == b:
            if (da * db) % 2:
                report.violations.append(Violation("symmetry", (a, b), {"value": value}))
            continue
        if space.index(a) > space.index(b) and (b, a) in ae.entries:
            continue
        if (b, a) in ae.entries:
            expected = _sign(da * db) * value
            other = ae.entries[(b, a)]
            if other != expected:
                report.violations.append(Violation("symmetry", (a, b), {"value": other - expected}))


def _check_support(ae: CyclicPairing, report: AxiomReport) -> None:
    space = ae.space
    for (a, b), value in ae.entries.items():
        if space.degree(a) + space.degree(b) != ae.dimension:
            report.violations.append(Violation("degree-support", (a, b), {"value": value}))


def _check_perfect(S: LInftyStructure, ae: CyclicPairing, report: AxiomReport) -> None:
    try:
        H, iota, _ = cohomology(S)
    except AxiomError:
        report.violations.append(Violation("perfectness", ("d^2",), {"nonzero": Fraction(1)}))
        return
    for deg in H.degrees:
        left = H.names_in(deg)
        right = H.names_in(ae.dimension - deg)
        gram = [[ae.pair(iota.image(h), iota.image(g)) for g in right] for h in left]
        if len(left) != len(right) or not is_invertible(gram):
            r = rank(gram, len(right)) if left and right else 0
            report.violations.append(Violation(
                "perfectness",
                (f"H^{deg}", f"H^{ae.dimension - deg}"),
                {"dim_left": Fraction(len(left)), "dim_right": Fraction(len(right)), "rank": Fraction(r)},
            ))


def _check_invariance(S: LInftyStructure, ae: CyclicPairing, n_max: int, report: AxiomReport) -> None:
    space = S.space
    basis = space.basis
    for n in range(1, n_max + 1):
        if n not in S.maps:
            continue
        for head in product(basis, repeat=n):
            head_degs = [space.degree(a) for a in head]
            for last in space.names_in(ae.dimension - 2 + n - sum(head_degs)):
                args = head + (last,)
                degs = head_degs + [space.degree(last)]
                lhs = ae.pair(S.basis_value(head), basis_vector(last))
                sign = _sign(n + degs[0] * sum(degs[1:]))
                rhs = sign * ae.pair(S.basis_value(args[1:]), basis_vector(args[0]))
                if lhs != rhs:
                    report.violations.append(Violation(f"cyclic[n={n}]", args, {"value": lhs - rhs}))


def check_cyclic(S: LInftyStructure, ae: CyclicPairing, n_max: int) -> AxiomReport:
    """Graded symmetry, degree support, perfectness on cohomology and invariance up to n_max."""
    report = AxiomReport(checked_arities=list(range(1, n_max + 1)))
    _check_symmetry(ae, report)
    _check_support(ae, report)
    _check_perfect(S, ae, report)
    _check_invariance(S, ae, n_max, report)
    return report
