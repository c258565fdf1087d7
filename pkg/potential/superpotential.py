"""
Maurer-Cartan map, potential and Jacobian ideal of a transferred structure.

Coordinates x_j on H¹ are named after the H¹ basis. With z = Σ x_j h_j:

    F_k(z) = ((−1)^{k(k+1)/2} / k!) ν_k(z, …, z)
    f(z)   = Σ_{n≥2} ((−1)^{n(n+1)/2} / (n+1)!) κ(ν_n(z, …, z), z)
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from math import factorial, prod

from algebra.errors import InternalError, StructuralError, UnsupportedError
from algebra.linalg import is_invertible
from algebra.poly import Poly, PowerSeries
from linfty.axioms import AxiomReport, Violation
from transfer.trees import TransferredStructure


def _mc_sign(k: int) -> int:
    return -1 if (k * (k + 1) // 2) % 2 else 1


@dataclass(frozen=True)
class MaurerCartanMap:
    variables: tuple[str, ...]
    targets: tuple[str, ...]
    components: dict[int, dict[str, Poly]]
    pairing: dict[tuple[str, str], Fraction]
    order: int

    def total(self) -> dict[str, Poly]:
        out = {g: Poly.zero(self.variables) for g in self.targets}
        for comp in self.components.values():
            for g, poly in comp.items():
                out[g] = out[g] + poly
        return out

    def dual(self, h: str) -> Poly:
        """κ(h, F(z)) as a polynomial."""
        total = self.total()
        acc = Poly.zero(self.variables)
        for g in self.targets:
            c = self.pairing.get((h, g), Fraction(0))
            if c:
                acc = acc + total[g] * c
        return acc


@dataclass(frozen=True)
class Potential:
    series: PowerSeries
    variables: tuple[str, ...]
    truncation_order: int
    exact: bool = False

    @property
    def polynomial(self) -> Poly:
        return self.series.base

    def __str__(self):
        return str(self.polynomial)


@dataclass(frozen=True)
class JacobianIdeal:
    generators: tuple[Poly, ...]
    variables: tuple[str, ...]


def _signature(T: TransferredStructure) -> tuple[tuple[str, ...], tuple[str, ...]]:
    M = T.structure.space
    outside = [d for d in M.degrees if d not in (1, 2)]
    if outside:
        raise UnsupportedError(
            f"H^{outside[0]} ≠ 0: the potential needs cohomology concentrated in degrees 1 and 2"
        )
    return M.names_in(1), M.names_in(2)


def _kappa(T: TransferredStructure, h1, h2) -> dict[tuple[str, str], Fraction]:
    gram = [[T.pairing.value(h, g) for g in h2] for h in h1]
    if len(h1) != len(h2) or not is_invertible(gram):
        raise StructuralError("κ does not identify H¹ with the dual of H²")
    return {(h, g): gram[i][j] for i, h in enumerate(h1) for j, g in enumerate(h2) if gram[i][j]}


def generic_value(T: TransferredStructure, n: int, variables: tuple[str, ...]) -> dict[str, Poly]:
    """ν_n(z, …, z) expanded by multilinearity."""
    out: dict[str, Poly] = {}
    for combo in combinations_with_replacement(variables, n):
        value = T.structure.basis_value(combo)
        if not value:
            continue
        counts = Counter(combo)
        weight = factorial(n) // prod(factorial(c) for c in counts.values())
        mono = Poly.monomial(variables, tuple(counts[v] for v in variables), weight)
        for g, c in value.items():
            out[g] = out.get(g, Poly.zero(variables)) + mono * c
    return {g: p for g, p in out.items() if p}


def _check_order(T: TransferredStructure, N: int) -> None:
    if N < 2:
        raise StructuralError(f"truncation order must be >= 2, got {N}")
    if N > T.order:
        raise StructuralError(f"the structure was transferred through arity {T.order}, not {N}")


def mc_map(T: TransferredStructure, N: int) -> MaurerCartanMap:
    h1, h2 = _signature(T)
    _check_order(T, N)
    components = {}
    for k in range(2, N + 1):
        value = generic_value(T, k, h1)
        scale = Fraction(_mc_sign(k), factorial(k))
        components[k] = {g: p * scale for g, p in value.items()}
    pairing = {(h, g): T.pairing.value(h, g) for h in h1 for g in h2 if T.pairing.value(h, g)}
    return MaurerCartanMap(h1, h2, components, pairing, N)


def potential(T: TransferredStructure, N: int) -> Potential:
    h1, h2 = _signature(T)
    _check_order(T, N)
    kappa = _kappa(T, h1, h2)
    f = Poly.zero(h1)
    for n in range(2, N + 1):
        value = generic_value(T, n, h1)
        if not value:
            continue
        paired = Poly.zero(h1)
        for g, poly in value.items():
            for h in h1:
                c = kappa.get((h, g))
                if c:
                    paired = paired + poly * Poly.var(h1, h) * c
        f = f + paired * Fraction(_mc_sign(n), factorial(n + 1))
    if f and f.order() < 3:
        raise InternalError(f"potential has a term of degree {f.order()} < 3")
    exact = T.minimal and N >= T.source_arity
    return Potential(PowerSeries(f, N + 1), h1, N, exact)


def check_df_equals_F(f: Potential, F: MaurerCartanMap) -> AxiomReport:
    """∂f/∂x_i against κ(h_i, F) through the shared order."""
    if f.truncation_order != F.order:
        raise StructuralError(
            f"truncation orders differ: potential {f.truncation_order}, MC map {F.order}"
        )
    if f.variables != F.variables:
        raise StructuralError(f"variables differ: {f.variables} vs {F.variables}")
    N = f.truncation_order
    report = AxiomReport(checked_arities=list(range(2, N + 1)))
    for h in f.variables:
        residual = f.polynomial.diff(h).truncate(N) - F.dual(h).truncate(N)
        if residual:
            report.violations.append(Violation(
                "df=F", (h,), {str(Poly.monomial(f.variables, e)): c for e, c in residual}
            ))
    return report


def jacobian_ideal(f: Potential) -> JacobianIdeal:
    N = f.truncation_order
    return JacobianIdeal(tuple(f.polynomial.diff(v).truncate(N) for v in f.variables), f.variables)
