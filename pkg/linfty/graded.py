"""
Graded vector spaces with named bases, sparse vectors and linear maps.

A vector is a dict from basis name to nonzero Fraction. Maps between named
bases are stored column by column.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from algebra.errors import StructuralError
from algebra.linalg import rank as matrix_rank
from algebra.poly import to_fraction

Vector = dict[str, Fraction]


class GradedSpace:
    """ℤ-graded ℚ-vector space with a globally unique named basis."""

    def __init__(self, components: Mapping[int, Sequence[str]]):
        comps: dict[int, tuple[str, ...]] = {}
        seen: set[str] = set()
        for deg in sorted(components):
            names = tuple(components[deg])
            for n in names:
                if n in seen:
                    raise StructuralError(f"duplicate basis name {n!r}")
                seen.add(n)
            if names:
                comps[int(deg)] = names
        self.components = comps
        self.basis = tuple(n for d in comps for n in comps[d])
        self._degree = {n: d for d, ns in comps.items() for n in ns}
        self._index = {n: i for i, n in enumerate(self.basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def degrees(self) -> list[int]:
        return list(self.components)

    def names_in(self, degree: int) -> tuple[str, ...]:
        return self.components.get(degree, ())

    def dim_in(self, degree: int) -> int:
        return len(self.names_in(degree))

    def degree(self, name: str) -> int:
        try:
            return self._degree[name]
        except KeyError:
            raise StructuralError(f"{name!r} is not a basis element of this space") from None

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise StructuralError(f"{name!r} is not a basis element of this space") from None

    def __contains__(self, name) -> bool:
        return name in self._index

    def check_vector(self, vec: Mapping[str, object]) -> None:
        for name in vec:
            if name not in self._index:
                raise StructuralError(f"{name!r} is not a basis element of this space")

    def vector_degree(self, vec: Mapping[str, object]) -> int | None:
        """Degree of a homogeneous vector; None for zero."""
        degs = {self.degree(n) for n, c in vec.items() if c}
        if len(degs) > 1:
            raise StructuralError(f"vector {vec} is not homogeneous")
        return degs.pop() if degs else None

    def __eq__(self, other):
        return isinstance(other, GradedSpace) and self.components == other.components

    def __hash__(self):
        return hash(tuple(self.components.items()))

    def __repr__(self):
        body = ", ".join(f"{d}: {list(ns)}" for d, ns in self.components.items())
        return f"GradedSpace({{{body}}})"


# ── Sparse vectors ───────────────────────────────────────────

def basis_vector(name: str) -> Vector:
    return {name: Fraction(1)}


def clean(vec: Mapping[str, object]) -> Vector:
    out = {}
    for n, c in vec.items():
        c = to_fraction(c)
        if c:
            out[n] = c
    return out


def add_scaled(acc: Vector, vec: Mapping[str, Fraction], scale=1) -> Vector:
    """acc += scale·vec in place."""
    scale = to_fraction(scale)
    if not scale:
        return acc
    for n, c in vec.items():
        s = acc.get(n, Fraction(0)) + scale * c
        if s:
            acc[n] = s
        else:
            acc.pop(n, None)
    return acc


def scaled(vec: Mapping[str, Fraction], scale) -> Vector:
    return add_scaled({}, vec, scale)


def coordinates(vec: Mapping[str, Fraction], names: Sequence[str]) -> list[Fraction]:
    return [vec.get(n, Fraction(0)) for n in names]


def from_coordinates(coords: Sequence, names: Sequence[str]) -> Vector:
    return clean(dict(zip(names, coords)))


class LinearMap:
    """Linear map between named bases; `columns[name]` is the image of a basis vector."""

    def __init__(self, source: Iterable[str], target: Iterable[str], columns: Mapping[str, Mapping[str, object]]):
        self.source = tuple(source)
        self.target = tuple(target)
        tgt = set(self.target)
        cols = {}
        for name in self.source:
            col = clean(columns.get(name, {}))
            stray = set(col) - tgt
            if stray:
                raise StructuralError(f"image of {name!r} uses {sorted(stray)} outside the target basis")
            cols[name] = col
        extra = set(columns) - set(self.source)
        if extra:
            raise StructuralError(f"columns for {sorted(extra)} outside the source basis")
        self.columns = cols

    @classmethod
    def identity(cls, names: Iterable[str]) -> "LinearMap":
        names = tuple(names)
        return cls(names, names, {n: basis_vector(n) for n in names})

    @classmethod
    def zero(cls, source: Iterable[str], target: Iterable[str]) -> "LinearMap":
        return cls(source, target, {})

    def image(self, name: str) -> Vector:
        try:
            return self.columns[name]
        except KeyError:
            raise StructuralError(f"{name!r} is not in the source basis") from None

    def __call__(self, vec: Mapping[str, Fraction]) -> Vector:
        out: Vector = {}
        for n, c in vec.items():
            add_scaled(out, self.image(n), c)
        return out

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self ∘ other."""
        if other.target != self.source:
            raise StructuralError("composition of maps with mismatched bases")
        return LinearMap(other.source, self.target, {n: self(other.image(n)) for n in other.source})

    def _combine(self, other: "LinearMap", sign: int) -> "LinearMap":
        if (self.source, self.target) != (other.source, other.target):
            raise StructuralError("sum of maps with mismatched bases")
        cols = {}
        for n in self.source:
            col = dict(self.columns[n])
            add_scaled(col, other.columns[n], sign)
            cols[n] = col
        return LinearMap(self.source, self.target, cols)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def scale(self, factor) -> "LinearMap":
        return LinearMap(self.source, self.target, {n: scaled(c, factor) for n, c in self.columns.items()})

    def is_zero(self) -> bool:
        return not any(self.columns.values())

    def rank(self) -> int:
        return matrix_rank([coordinates(self.columns[n], self.target) for n in self.source], len(self.target))

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return (self.source, self.target, self.columns) == (other.source, other.target, other.columns)

    def __repr__(self):
        nz = {n: c for n, c in self.columns.items() if c}
        return f"LinearMap({len(self.source)}→{len(self.target)}, {nz})"
