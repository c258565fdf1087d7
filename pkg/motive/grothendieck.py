"""
Symbolic classes in the equivariant Grothendieck ring.

A class is a finite sum of cover symbols with coefficients in ℤ[L, L⁻¹].
A cover symbol stands for the étale μ̂-cover of a stratum E_I° of degree m_I;
it is never resolved into an explicit curve, only specialized.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import sympy as sp

from algebra.errors import StructuralError
from resolution.strata import Stratum, label_key

L = sp.Symbol("L")


def format_laurent(expr) -> str:
    """Integer Laurent polynomial in L, ascending powers: `1 - L`, `1 - 2*L + L^2`."""
    pieces = []
    for term in sp.Add.make_args(sp.expand(expr)):
        c, e = term.as_coeff_exponent(L)
        if c != 0:
            pieces.append((int(e), int(c)))
    pieces.sort()
    out = ""
    for e, c in pieces:
        mono = "" if e == 0 else ("L" if e == 1 else f"L^{e}")
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
        if not out:
            out = ("-" if c < 0 else "") + body
        else:
            out += (" - " if c < 0 else " + ") + body
    return out or "0"


@dataclass(frozen=True)
class Cover:
    stratum: tuple[str, ...]
    base_chi: int
    cover_degree: int
    mu_hat_order: int

    @property
    def sort_key(self):
        return (len(self.stratum), [label_key(l) for l in self.stratum])

    def __str__(self):
        return f"Cover{{{','.join(self.stratum)}, chi={self.base_chi}, deg={self.cover_degree}}}"


@dataclass(frozen=True)
class MotiveTerm:
    coefficient: sp.Expr
    cover: Cover

    def __str__(self):
        if sp.expand(self.coefficient - 1) == 0:
            return str(self.cover)
        return f"({format_laurent(self.coefficient)}) * {self.cover}"


@dataclass(frozen=True)
class MotiveExpr:
    terms: tuple[MotiveTerm, ...] = ()

    @classmethod
    def normalized(cls, terms: Iterable[MotiveTerm]) -> "MotiveExpr":
        merged: dict[Cover, sp.Expr] = {}
        for t in terms:
            if t.cover.cover_degree < 1:
                raise StructuralError(f"cover degree must be ≥ 1, got {t.cover.cover_degree}")
            merged[t.cover] = merged.get(t.cover, sp.Integer(0)) + t.coefficient
        kept = [
            MotiveTerm(sp.expand(c), cover)
            for cover, c in merged.items()
            if sp.expand(c) != 0
        ]
        kept.sort(key=lambda t: t.cover.sort_key)
        return cls(tuple(kept))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "MotiveExpr") -> "MotiveExpr":
        return MotiveExpr.normalized(self.terms + other.terms)

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    def __str__(self):
        return " + ".join(str(t) for t in self.terms) if self.terms else "0"


def motivic_milnor_fiber(strata: Iterable[Stratum]) -> MotiveExpr:
    """Σ over strata meeting the origin of (1 − L)^{|I|−1} · [Ẽ_I°]."""
    terms = [
        MotiveTerm(
            (1 - L) ** (s.size - 1),
            Cover(s.index, s.chi, s.m, s.m),
        )
        for s in strata
        if s.over_origin
    ]
    return MotiveExpr.normalized(terms)


def euler_specialize(M: MotiveExpr) -> int:
    """L ↦ 1 and each cover ↦ degree × Euler characteristic of its base."""
    total = 0
    for t in M:
        c = t.coefficient.subs(L, 1)
        total += int(c) * t.cover.cover_degree * t.cover.base_chi
    return total


def unweighted_euler(strata: Iterable[Stratum]) -> int:
    """Σ m_I · χ(E_I°) over every stratum meeting the origin, without (1 − L) weights."""
    return sum(s.m * s.chi for s in strata if s.over_origin)
