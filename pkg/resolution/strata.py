"""
Strata E_I° of a resolved germ.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from algebra.errors import StructuralError

from .graph import ResolutionGraph


def label_key(label: str) -> tuple[int, int]:
    """E-labels before S-labels, numerically within each."""
    return (0 if label[0] == "E" else 1, int(label[1:]))


@dataclass(frozen=True)
class Stratum:
    index: tuple[str, ...]
    chi: int
    m: int
    over_origin: bool

    @property
    def size(self) -> int:
        return len(self.index)

    @property
    def name(self) -> str:
        return "{" + ",".join(self.index) + "}"


def strata(g: ResolutionGraph) -> list[Stratum]:
    if not g.snc_certificate:
        raise StructuralError("strata need a resolution with a normal-crossings certificate")
    m = {d.id: d.m for d in g.divisors}
    out = [Stratum((d.label,), g.chi(d.id), d.m, True) for d in g.divisors]
    for a, b in g.edges:
        out.append(Stratum((f"E{a}", f"E{b}"), 1, gcd(m[a], m[b]), True))
    for branch in g.strict_branches:
        out.append(Stratum((branch.label,), 0, 1, False))
        out.append(Stratum((branch.label, f"E{branch.divisor}"), branch.points, 1, True))
    out.sort(key=lambda s: (s.size, [label_key(l) for l in s.index]))
    return out
