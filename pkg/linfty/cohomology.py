"""
Cohomology of the differential μ_1, with representative and projection maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from algebra.errors import AxiomError
from algebra.linalg import columns_matrix, extend_basis, independent_subset, inverse, nullspace, unit_vectors

from .graded import GradedSpace, LinearMap, Vector, basis_vector, coordinates, from_coordinates
from .structure import LInftyStructure, eval_mu


def differential(S: LInftyStructure) -> LinearMap:
    names = S.space.basis
    return LinearMap(names, names, {n: eval_mu(S, 1, [basis_vector(n)]) for n in names})


@dataclass(frozen=True)
class DegreeSplit:
    """Cycles, boundaries and a chosen complement of B in Z, in one degree."""

    degree: int
    names: tuple[str, ...]
    cycles: list[list[Fraction]]
    boundaries: list[list[Fraction]]
    harmonic: list[list[Fraction]]


def split_degrees(space: GradedSpace, d: LinearMap) -> dict[int, DegreeSplit]:
    splits = {}
    for deg in space.degrees:
        names = space.names_in(deg)
        nxt = space.names_in(deg + 1)
        prev = space.names_in(deg - 1)
        rows = [[d.image(n).get(t, Fraction(0)) for n in names] for t in nxt]
        cycles = nullspace(rows, len(names))
        images = [coordinates(d.image(p), names) for p in prev]
        boundaries = independent_subset(images, len(names))
        harmonic = extend_basis(boundaries, cycles, len(names))
        splits[deg] = DegreeSplit(deg, names, cycles, boundaries, harmonic)
    return splits


def _unit_position(vec: list[Fraction]) -> int | None:
    nz = [i for i, c in enumerate(vec) if c]
    if len(nz) == 1 and vec[nz[0]] == 1:
        return nz[0]
    return None


def name_representatives(space: GradedSpace, splits: dict[int, DegreeSplit]) -> dict[int, list[str]]:
    """Names for cohomology classes.

    A representative that is a single basis vector keeps that vector's name;
    other classes are called h<deg>_<k> (hm<deg>_<k> in negative degree).
    """
    taken = set(space.basis)
    named: dict[int, list[str | None]] = {}
    for deg, split in splits.items():
        row = []
        for vec in split.harmonic:
            pos = _unit_position(vec)
            row.append(split.names[pos] if pos is not None else None)
        named[deg] = row
    out: dict[int, list[str]] = {}
    for deg, row in named.items():
        prefix = f"h{deg}" if deg >= 0 else f"hm{-deg}"
        final = []
        k = 1
        for name in row:
            if name is None:
                while f"{prefix}_{k}" in taken:
                    k += 1
                name = f"{prefix}_{k}"
                taken.add(name)
            final.append(name)
        out[deg] = final
    return out


@dataclass(frozen=True)
class Cohomology:
    space: GradedSpace
    iota: LinearMap
    proj: LinearMap

    def __iter__(self):
        yield self.space
        yield self.iota
        yield self.proj

    def dims(self) -> dict[int, int]:
        return {d: len(ns) for d, ns in self.space.components.items()}


def _coordinates_in_basis(basis: list[list[Fraction]], dim: int) -> list[list[Fraction]]:
    """Rows of the inverse of the matrix whose columns are `basis`."""
    return inverse(columns_matrix(basis)) if dim else []


def cohomology(S: LInftyStructure) -> Cohomology:
    """H = Z/B per degree, with ι: H → L and p: L → H such that p∘ι = id."""
    d = differential(S)
    if not d.compose(d).is_zero():
        raise AxiomError("μ_1∘μ_1 ≠ 0; check_jacobi reports it as jacobi[n=1]")
    space = S.space
    splits = split_degrees(space, d)
    names = name_representatives(space, splits)
    H = GradedSpace({deg: names[deg] for deg in splits})

    iota_cols: dict[str, Vector] = {}
    proj_cols: dict[str, Vector] = {}
    for deg, split in splits.items():
        dim = len(split.names)
        for h, vec in zip(names[deg], split.harmonic):
            iota_cols[h] = from_coordinates(vec, split.names)
        zb = split.harmonic + split.boundaries
        rest = extend_basis(zb, unit_vectors(dim), dim)
        inv = _coordinates_in_basis(zb + rest, dim)
        k = len(split.harmonic)
        for j, n in enumerate(split.names):
            proj_cols[n] = {names[deg][i]: inv[i][j] for i in range(k) if inv[i][j]}

    iota = LinearMap(H.basis, space.basis, iota_cols)
    proj = LinearMap(space.basis, H.basis, proj_cols)
    return Cohomology(H, iota, proj)
