"""
Behrend function of the critical locus at the origin.

    ν(0) = (−1)^m (1 − χ(F₀))

χ(F₀) comes either from the Milnor number, χ(F₀) = 1 + (−1)^{m−1} μ, or
(plane curves only) from the Euler specialization of the motivic Milnor
fiber of an embedded resolution.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from algebra.errors import AxiomError, InputError, UnsupportedError
from algebra.poly import Poly
from potential.superpotential import Potential
from resolution.graph import ResolutionGraph, embedded_resolution
from resolution.strata import strata
from singularity.milnor import MilnorData, milnor_number

from .grothendieck import euler_specialize, motivic_milnor_fiber

ROUTES = ("auto", "resolution", "milnor")


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


@dataclass(frozen=True)
class BehrendValue:
    value: int
    route: str
    m: int
    mu: int
    chi_fiber: int
    values: dict[str, int] = field(default_factory=dict)
    notes: tuple[str, ...] = ()

    @property
    def agreement(self) -> bool | None:
        """None unless more than one route ran."""
        if len(self.values) < 2:
            return None
        return len(set(self.values.values())) == 1


def chi_top_function(g: ResolutionGraph) -> int:
    """χ_top of the motivic Milnor fiber at the origin; 0 for a smooth germ."""
    if g.smooth:
        return 0
    return euler_specialize(motivic_milnor_fiber(strata(g)))


def _centred(f: Poly) -> Poly:
    c = f.constant_term()
    return f - c if c else f


def behrend_value(
    source: Potential | Poly,
    route: str = "auto",
    *,
    milnor: MilnorData | None = None,
    refine: Callable[[int], Potential] | None = None,
    cap: int = 24,
    step: int = 2,
    degree_cap: int = 64,
    max_steps: int = 20000,
    max_blowups: int = 64,
    extra_blowups: int = 0,
    graph: ResolutionGraph | None = None,
    progress: Callable[[str], None] | None = None,
) -> BehrendValue:
    if route not in ROUTES:
        raise InputError(f"unknown route {route!r}; expected one of {', '.join(ROUTES)}")
    if milnor is None:
        milnor = milnor_number(
            source, refine=refine, cap=cap, step=step,
            degree_cap=degree_cap, max_steps=max_steps, progress=progress,
        )
    if not milnor.isolated:
        raise UnsupportedError("the critical point at the origin is not isolated")
    if (
        isinstance(source, Potential)
        and refine is not None
        and milnor.truncation_order not in (None, source.truncation_order)
    ):
        source = refine(milnor.truncation_order)
    mu = int(milnor.mu)
    m = len(milnor.variables)

    values: dict[str, int] = {}
    chis: dict[str, int] = {}
    notes: list[str] = []
    if route in ("auto", "milnor"):
        chis["milnor"] = 1 + _sign(m - 1) * mu
    if route == "resolution" or (route == "auto" and m == 2):
        if m != 2:
            raise UnsupportedError(f"the resolution route needs 2 variables, got {m}")
        if graph is None:
            f = source.polynomial if isinstance(source, Potential) else source
            try:
                graph = embedded_resolution(_centred(f), max_blowups=max_blowups, extra_blowups=extra_blowups)
            except UnsupportedError as exc:
                if route != "auto":
                    raise
                notes.append(f"resolution route skipped: {exc}")
                if progress:
                    progress(f"  ⚠ resolution route skipped: {exc}")
        if graph is not None:
            chis["resolution"] = 1 if graph.smooth else chi_top_function(graph)
    for name, chi in chis.items():
        values[name] = _sign(m) * (1 - chi)

    if len(set(values.values())) > 1:
        raise AxiomError(
            "routes disagree on the Behrend value: "
            + ", ".join(f"{k} = {v}" for k, v in values.items())
        )
    chosen = "resolution" if "resolution" in chis else "milnor"
    return BehrendValue(
        value=values[chosen],
        route="auto" if len(values) == 2 else chosen,
        m=m,
        mu=mu,
        chi_fiber=chis[chosen],
        values=values,
        notes=tuple(notes),
    )
