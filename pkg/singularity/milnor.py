"""
Milnor numbers of germs at the origin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from itertools import product
from typing import Callable, Sequence

from algebra.errors import ResourceError, UnsupportedError
from algebra.poly import Exponent, Poly
from potential.superpotential import Potential

from .standard_basis import LocalIdeal, divides, standard_basis


@dataclass(frozen=True)
class MilnorData:
    mu: int | float
    monomial_basis: tuple[Exponent, ...]
    determinacy: int | None
    variables: tuple[str, ...]
    smooth_point: bool = False
    truncation_order: int | None = None
    certified: bool = True

    @property
    def isolated(self) -> bool:
        return self.mu != math.inf

    def basis_strings(self) -> list[str]:
        return [str(Poly.monomial(self.variables, e)) for e in self.monomial_basis]


def quotient_monomials(leading: Sequence[Exponent], nvars: int) -> tuple[Exponent, ...] | None:
    """Monomials outside the leading ideal; None when there are infinitely many."""
    bounds = []
    for i in range(nvars):
        pure = [e[i] for e in leading if all(e[j] == 0 for j in range(nvars) if j != i)]
        if not pure:
            return None
        bounds.append(min(pure))
    monos = [
        exp for exp in product(*(range(b) for b in bounds))
        if not any(divides(l, exp) for l in leading)
    ]
    monos.sort(key=lambda e: (sum(e), tuple(-x for x in e)))
    return tuple(monos)


def _milnor_of_poly(f: Poly, *, degree_cap: int, max_steps: int, order: int | None = None) -> MilnorData:
    variables = f.variables
    gens = [f.diff(v) for v in variables]
    if any(g.constant_term() != 0 for g in gens):
        return MilnorData(0, (), 1, variables, smooth_point=True, truncation_order=order)
    sb = standard_basis(LocalIdeal(gens, variables), degree_cap=degree_cap, max_steps=max_steps)
    monos = quotient_monomials(sb.leading_exponents(), len(variables))
    if monos is None:
        return MilnorData(math.inf, (), None, variables, truncation_order=order)
    return MilnorData(len(monos), monos, len(monos) + 1, variables, truncation_order=order)


def milnor_number(
    f: Potential | Poly,
    *,
    refine: Callable[[int], Potential] | None = None,
    cap: int = 24,
    step: int = 2,
    degree_cap: int = 64,
    max_steps: int = 20000,
    progress: Callable[[str], None] | None = None,
) -> MilnorData:
    """μ = dim ℚ[[x]]/(∂f).

    A truncated potential is accepted once its order N satisfies N ≥ μ + 1;
    otherwise `refine(N')` supplies the potential at a higher order.
    """
    if isinstance(f, Poly):
        return _milnor_of_poly(f, degree_cap=degree_cap, max_steps=max_steps)
    while True:
        N = f.truncation_order
        data = _milnor_of_poly(f.polynomial, degree_cap=degree_cap, max_steps=max_steps, order=N)
        if f.exact or (data.isolated and N >= data.mu + 1):
            return replace(data, certified=True)
        if refine is None:
            raise ResourceError(f"truncation order {N} does not certify the Milnor number; raise the order")
        nxt = N + step
        if data.isolated:
            nxt = max(nxt, int(data.mu) + 1)
        if nxt > cap:
            raise ResourceError(f"Milnor number did not stabilize below the truncation cap {cap}")
        if progress:
            progress(f"raising truncation order {N} → {nxt} (μ = {data.mu} at order {N})")
        f = refine(nxt)


def determinacy_bound(md: MilnorData) -> int:
    if not md.isolated:
        raise UnsupportedError("non-isolated singularity: no finite determinacy bound")
    return int(md.mu) + 1
