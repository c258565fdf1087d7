"""
Affine charts of iterated point blow-ups of the plane.

A chart carries the total transform of f, the exceptional divisors visible
in it as coordinate axes, and the pullback of the original coordinates.
Blowing up the point (a, b) of a chart with coordinates (u, v) gives

    chart A:  u = a + u',       v = b + u'·v'    (new divisor: u' = 0)
    chart B:  u = a + u'·v',    v = b + v'       (new divisor: v' = 0)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from algebra.poly import Poly, format_rational


@dataclass(frozen=True)
class Chart:
    name: str
    coordinates: tuple[str, str]
    total_transform: Poly
    divisors: tuple[tuple[int, str], ...]
    pullback: tuple[Poly, Poly]
    history: tuple[str, ...] = ()

    def axis_divisor(self, axis: str) -> int | None:
        for did, ax in self.divisors:
            if ax == axis:
                return did
        return None

    def divisors_through(self, point: tuple[Fraction, Fraction]) -> dict[str, int]:
        """Visible divisors passing through `point`, keyed by axis."""
        a, b = point
        out = {}
        for did, axis in self.divisors:
            if (axis == "u" and a == 0) or (axis == "v" and b == 0):
                out[axis] = did
        return out

    def translated(self, point: tuple[Fraction, Fraction]) -> Poly:
        """Total transform in coordinates centred at `point`."""
        u, v = self.coordinates
        a, b = point
        shift = {
            u: Poly.var(self.coordinates, u) + a,
            v: Poly.var(self.coordinates, v) + b,
        }
        return self.total_transform.substitute(shift, self.coordinates)


def initial_chart(f: Poly) -> Chart:
    coords = tuple(f.variables)
    return Chart(
        name="0",
        coordinates=coords,
        total_transform=f,
        divisors=(),
        pullback=(Poly.var(coords, coords[0]), Poly.var(coords, coords[1])),
        history=(),
    )


def _affine(value: Fraction, term: str) -> str:
    if value == 0:
        return term
    return f"{format_rational(value)} + {term}"


def blow_up_point(c: Chart, point, divisor_id: int | None = None, tag: str | None = None) -> tuple[Chart, Chart]:
    """Blow up `point` of chart c; returns the two charts covering the new divisor."""
    a, b = Fraction(point[0]), Fraction(point[1])
    u, v = c.coordinates
    new_id = divisor_id if divisor_id is not None else 1 + max((d for d, _ in c.divisors), default=0)
    tag = tag or str(new_id)
    old_u = c.axis_divisor("u") if a == 0 else None
    old_v = c.axis_divisor("v") if b == 0 else None

    coords_a = (f"u{tag}a", f"v{tag}a")
    ua, va = (Poly.var(coords_a, n) for n in coords_a)
    map_a = {u: ua + a, v: ua * va + b}
    divisors_a = ((new_id, "u"),) + (((old_v, "v"),) if old_v is not None else ())

    coords_b = (f"u{tag}b", f"v{tag}b")
    ub, vb = (Poly.var(coords_b, n) for n in coords_b)
    map_b = {u: ub * vb + a, v: vb + b}
    divisors_b = ((new_id, "v"),) + (((old_u, "u"),) if old_u is not None else ())

    def chart(label, coords, mapping, divisors, step):
        return Chart(
            name=f"{tag}{label}",
            coordinates=coords,
            total_transform=c.total_transform.substitute(mapping, coords),
            divisors=divisors,
            pullback=tuple(p.substitute(mapping, coords) for p in c.pullback),
            history=c.history + (step,),
        )

    step_a = f"{u} = {_affine(a, coords_a[0])}, {v} = {_affine(b, coords_a[0] + '*' + coords_a[1])}"
    step_b = f"{u} = {_affine(a, coords_b[0] + '*' + coords_b[1])}, {v} = {_affine(b, coords_b[1])}"
    return (
        chart("a", coords_a, map_a, divisors_a, step_a),
        chart("b", coords_b, map_b, divisors_b, step_b),
    )
