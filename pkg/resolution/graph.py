"""
Embedded resolution of a reduced plane-curve germ at the origin.

Points are visited first in first out. At each point the strict transform
is read off by dividing the translated total transform by the visible
exceptional axes. The point is left alone when the strict transform misses
it or crosses a single exceptional axis transversally; otherwise it is
blown up. Contact points of the strict transform with a new divisor are
the roots of its restriction to that divisor: rational roots become new
work items and irrational simple factors are recorded as transverse
branches counted with their number of geometric points.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

import sympy as sp

from algebra.errors import InputError, InternalError, ResourceError, UnsupportedError
from algebra.poly import Poly, to_fraction

from .charts import Chart, blow_up_point, initial_chart


@dataclass(frozen=True)
class ExceptionalDivisor:
    id: int
    m: int
    p: int
    k: int
    self_intersection: int

    @property
    def n(self) -> int:
        return self.m - self.p

    @property
    def label(self) -> str:
        return f"E{self.id}"


@dataclass(frozen=True)
class StrictBranch:
    label: str
    divisor: int
    points: int
    rational: bool


@dataclass(frozen=True)
class ResolutionGraph:
    curve: Poly
    divisors: tuple[ExceptionalDivisor, ...]
    edges: tuple[tuple[int, int], ...]
    strict_branches: tuple[StrictBranch, ...]
    snc_certificate: bool
    charts: tuple[Chart, ...] = ()

    @property
    def smooth(self) -> bool:
        return not self.divisors

    def divisor(self, did: int) -> ExceptionalDivisor:
        for d in self.divisors:
            if d.id == did:
                return d
        raise KeyError(did)

    def neighbours(self, did: int) -> list[int]:
        return sorted({b for a, b in self.edges if a == did} | {a for a, b in self.edges if b == did})

    def strict_points(self, did: int) -> int:
        return sum(b.points for b in self.strict_branches if b.divisor == did)

    def chi(self, did: int) -> int:
        """Euler characteristic of E_i minus every other component."""
        return 2 - len(self.neighbours(did)) - self.strict_points(did)

    def acampo_sum(self) -> int:
        return sum(d.m * self.chi(d.id) for d in self.divisors)


def _restrict_axis(p: Poly, axis: str) -> Poly:
    """p restricted to the coordinate axis u = 0 ('u') or v = 0 ('v')."""
    u, v = p.variables
    zero = Poly.zero(p.variables)
    if axis == "u":
        return p.substitute({u: zero, v: Poly.var(p.variables, v)}, p.variables)
    return p.substitute({u: Poly.var(p.variables, u), v: zero}, p.variables)


def _jacobian_determinant(chart: Chart) -> Poly:
    (x, y), (u, v) = chart.pullback, chart.coordinates
    return x.diff(u) * y.diff(v) - x.diff(v) * y.diff(u)


def contact_points(restricted: Poly, var: str) -> tuple[list[Fraction], list[tuple[int, int]]]:
    """Rational roots and (degree, multiplicity) of irrational factors of a univariate polynomial."""
    if restricted.degree() <= 0:
        return [], []
    sym = sp.Symbol(var)
    _, factors = sp.Poly(restricted.to_sympy(), sym, domain=sp.QQ).factor_list()
    roots, irrational = [], []
    for fac, mult in factors:
        deg = fac.degree()
        if deg == 1:
            c1, c0 = fac.all_coeffs()
            roots.append(to_fraction(-c0 / c1))
        elif deg > 1:
            irrational.append((deg, int(mult)))
    return sorted(roots), irrational


class _Resolver:
    def __init__(self, f: Poly, max_blowups: int):
        self.f = f
        self.partials = tuple(f.diff(v) for v in f.variables)
        self.max_blowups = max_blowups
        self.divisors: dict[int, dict] = {}
        self.edges: set[frozenset] = set()
        self.branches: list[StrictBranch] = []
        self.queue: deque[tuple[Chart, tuple[Fraction, Fraction]]] = deque()
        self.home: dict[int, Chart] = {}
        self.charts: list[Chart] = []

    def run(self, extra_blowups: int = 0) -> ResolutionGraph:
        self.queue.append((initial_chart(self.f), (Fraction(0), Fraction(0))))
        self._drain()
        for _ in range(extra_blowups):
            self._extra()
            self._drain()
        return self._graph()

    def _drain(self):
        while self.queue:
            self._visit(*self.queue.popleft())

    def _local(self, chart: Chart, point) -> tuple[Poly, dict[str, int]]:
        g = chart.translated(point)
        axes = chart.divisors_through(point)
        u, v = chart.coordinates
        strict = g
        if "u" in axes:
            strict = strict.divide_monomial((strict.order_in(u), 0))
        if "v" in axes:
            strict = strict.divide_monomial((0, strict.order_in(v)))
        return strict, axes

    def _visit(self, chart: Chart, point):
        strict, axes = self._local(chart, point)
        mult = strict.order()
        if mult == 0:
            return
        if mult == 1 and len(axes) == 0:
            return
        if mult == 1 and len(axes) == 1:
            axis, did = next(iter(axes.items()))
            if _restrict_axis(strict, axis).order() == 1:
                self._branch(did, 1, rational=True)
                return
        self._blow_up(chart, point, axes)

    def _branch(self, did: int, points: int, rational: bool):
        self.branches.append(StrictBranch(f"S{len(self.branches) + 1}", did, points, rational))

    def _orders(self, chart: Chart, axis_var: str) -> tuple[int, int, int]:
        sub = dict(zip(self.f.variables, chart.pullback))
        m = chart.total_transform.order_in(axis_var)
        p = min(part.substitute(sub, chart.coordinates).order_in(axis_var) for part in self.partials)
        k = _jacobian_determinant(chart).order_in(axis_var)
        return m, p, k

    def _blow_up(self, chart: Chart, point, axes: dict[str, int]):
        if len(self.divisors) >= self.max_blowups:
            raise ResourceError(f"embedded resolution needs more than {self.max_blowups} blow-ups")
        new_id = len(self.divisors) + 1
        A, B = blow_up_point(chart, point, divisor_id=new_id)
        in_a = self._orders(A, A.coordinates[0])
        in_b = self._orders(B, B.coordinates[1])
        if in_a != in_b:
            raise InternalError(f"charts disagree on (m, p, k) for E{new_id}: {in_a} vs {in_b}")
        m, p, k = in_a
        for did in axes.values():
            self.divisors[did]["self"] -= 1
            self.edges.add(frozenset((did, new_id)))
        if len(axes) == 2:
            self.edges.discard(frozenset(axes.values()))
        self.divisors[new_id] = {"m": m, "p": p, "k": k, "self": -1}
        self.home[new_id] = A
        self.charts.extend((A, B))

        origin = (Fraction(0), Fraction(0))
        strict_a, _ = self._local(A, origin)
        restricted = _restrict_axis(strict_a, "u")
        roots, irrational = contact_points(restricted, A.coordinates[1])
        for r in roots:
            self.queue.append((A, (Fraction(0), r)))
        for deg, mult in irrational:
            if mult != 1:
                raise UnsupportedError(
                    f"the strict transform meets E{new_id} with multiplicity {mult} at non-rational points"
                )
            self._branch(new_id, deg, rational=False)
        strict_b, _ = self._local(B, origin)
        if strict_b.constant_term() == 0:
            self.queue.append((B, origin))

    def _extra(self):
        did = max(self.divisors)
        chart = self.home[did]
        strict, _ = self._local(chart, (Fraction(0), Fraction(0)))
        restricted = _restrict_axis(strict, "u")
        v = chart.coordinates[1]
        r = 1
        while restricted.evaluate({chart.coordinates[0]: 0, v: r}) == 0:
            r += 1
        point = (Fraction(0), Fraction(r))
        self._blow_up(chart, point, chart.divisors_through(point))

    def _graph(self) -> ResolutionGraph:
        divisors = tuple(
            ExceptionalDivisor(did, d["m"], d["p"], d["k"], d["self"])
            for did, d in sorted(self.divisors.items())
        )
        edges = tuple(sorted(tuple(sorted(e)) for e in self.edges))
        if divisors and len(edges) != len(divisors) - 1:
            raise InternalError(f"dual graph with {len(divisors)} divisors has {len(edges)} edges")
        return ResolutionGraph(
            curve=self.f,
            divisors=divisors,
            edges=edges,
            strict_branches=tuple(self.branches),
            snc_certificate=True,
            charts=tuple(self.charts),
        )


def _check_reduced(f: Poly) -> None:
    symbols = [sp.Symbol(v) for v in f.variables]
    _, factors = sp.Poly(f.to_sympy(), *symbols, domain=sp.QQ).sqf_list()
    origin = {s: 0 for s in symbols}
    for fac, mult in factors:
        if mult >= 2 and fac.as_expr().subs(origin) == 0:
            raise InputError(f"f must be reduced: ({fac.as_expr()})^{mult} divides f")


def embedded_resolution(f: Poly, *, max_blowups: int = 64, extra_blowups: int = 0) -> ResolutionGraph:
    """Resolve f = 0 at the origin to simple normal crossings."""
    if f.is_zero():
        raise InputError("f is identically zero")
    if f.constant_term() != 0:
        raise InputError("f(0) ≠ 0: the origin is not on the curve")
    if len(f.variables) != 2:
        raise UnsupportedError(
            f"embedded resolution handles curves in 2 variables, got {len(f.variables)}; use the Milnor route"
        )
    _check_reduced(f)
    return _Resolver(f, max_blowups).run(extra_blowups)
