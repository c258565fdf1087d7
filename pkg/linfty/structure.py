"""
L∞ structure constants, Koszul signs and cyclic pairings.

Sign convention. For a permutation σ of graded elements a_1, …, a_n,

    a_{σ(1)} ∧ ⋯ ∧ a_{σ(n)} = (−1)^σ̃ · ε(σ) · a_1 ∧ ⋯ ∧ a_n

where (−1)^σ̃ is the permutation sign and ε(σ) collects (−1)^{|a||b|} for
every pair of elements the permutation swaps. Structure maps are graded
antisymmetric, so reordering arguments multiplies by the combined sign
(−1)^σ̃ ε(σ). Two odd elements commute; an even element anticommutes with
everything.

μ_k is stored only on argument tuples sorted by basis position.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, NamedTuple, Sequence

from algebra.errors import StructuralError
from algebra.poly import to_fraction

from .graded import GradedSpace, Vector, add_scaled, clean, scaled


class KoszulSign(NamedTuple):
    """The two halves of a reordering sign."""

    epsilon: int
    parity: int

    @property
    def combined(self) -> int:
        return self.epsilon * self.parity

    def __int__(self) -> int:
        return self.combined


def koszul_sign(permutation: Sequence[int], degrees: Sequence[int]) -> KoszulSign:
    """Sign of the reordering whose position i holds original element permutation[i].

    `degrees[j]` is the degree of original element j.
    """
    perm = list(permutation)
    degs = list(degrees)
    if len(perm) != len(degs):
        raise StructuralError(f"permutation of length {len(perm)} with {len(degs)} degrees")
    if sorted(perm) != list(range(len(perm))):
        raise StructuralError(f"{perm} is not a permutation of 0..{len(perm) - 1}")
    eps = 1
    inversions = 0
    n = len(perm)
    for i in range(n):
        for j in range(i + 1, n):
            if perm[i] > perm[j]:
                inversions += 1
                if degs[perm[i]] % 2 and degs[perm[j]] % 2:
                    eps = -eps
    return KoszulSign(eps, -1 if inversions % 2 else 1)


def canonical_order(space: GradedSpace, names: Sequence[str]) -> tuple[tuple[str, ...], int]:
    """Sort arguments by basis position; returns (sorted names, combined sign)."""
    idx = [space.index(n) for n in names]
    order = sorted(range(len(names)), key=lambda i: idx[i])
    sign = koszul_sign(order, [space.degree(n) for n in names]).combined
    return tuple(names[i] for i in order), sign


def repeats_even(space: GradedSpace, names: Sequence[str]) -> bool:
    seen = set()
    for n in names:
        if n in seen and space.degree(n) % 2 == 0:
            return True
        seen.add(n)
    return False


class LInftyStructure:
    """Structure constants of the maps μ_k on a GradedSpace."""

    def __init__(self, space: GradedSpace, maps: Mapping[int, Mapping[Sequence[str], Mapping[str, object]]]):
        tables: dict[int, dict[tuple[str, ...], Vector]] = {}
        for k in sorted(maps):
            if k < 1:
                raise StructuralError(f"arity must be >= 1, got {k}")
            table: dict[tuple[str, ...], Vector] = {}
            for inputs, output in maps[k].items():
                inputs = tuple(inputs)
                if len(inputs) != k:
                    raise StructuralError(f"μ_{k} entry {inputs} has {len(inputs)} inputs")
                key, _ = canonical_order(space, inputs)
                if key != inputs:
                    raise StructuralError(f"μ_{k} entry {inputs} is not in basis order")
                out = clean(output)
                space.check_vector(out)
                if not out:
                    continue
                if repeats_even(space, inputs):
                    raise StructuralError(
                        f"μ_{k}{inputs} repeats an even element and must vanish"
                    )
                expected = sum(space.degree(n) for n in inputs) + 2 - k
                for n in out:
                    if space.degree(n) != expected:
                        raise StructuralError(
                            f"μ_{k}{inputs} has output {n!r} in degree {space.degree(n)}, expected {expected}"
                        )
                table[inputs] = out
            if table:
                tables[k] = table
        self.space = space
        self.maps = tables
        self._cache: dict[tuple[str, ...], Vector] = {}

    @classmethod
    def from_entries(cls, space: GradedSpace, entries: Iterable[tuple[Sequence[str], Mapping[str, object]]]) -> "LInftyStructure":
        """Build from entries in any argument order; the Koszul sign normalizes them."""
        maps: dict[int, dict[tuple[str, ...], Vector]] = {}
        for inputs, output in entries:
            key, sign = canonical_order(space, tuple(inputs))
            table = maps.setdefault(len(key), {})
            if key in table:
                raise StructuralError(f"duplicate μ_{len(key)} entry for {key}")
            table[key] = scaled(clean(output), sign)
        return cls(space, maps)

    @property
    def max_arity(self) -> int:
        return max(self.maps, default=0)

    def table(self, k: int) -> Mapping[tuple[str, ...], Vector]:
        return self.maps.get(k, {})

    def entries(self) -> Iterable[tuple[int, tuple[str, ...], Vector]]:
        for k, table in self.maps.items():
            for inputs in sorted(table, key=lambda t: [self.space.index(n) for n in t]):
                yield k, inputs, table[inputs]

    def with_entry(self, inputs: Sequence[str], output: Mapping[str, object]) -> "LInftyStructure":
        """Copy with one entry replaced; `inputs` may be unsorted."""
        key, sign = canonical_order(self.space, tuple(inputs))
        maps = {k: dict(t) for k, t in self.maps.items()}
        maps.setdefault(len(key), {})[key] = scaled(clean(output), sign)
        return LInftyStructure(self.space, maps)

    def restricted(self, max_arity: int) -> "LInftyStructure":
        return LInftyStructure(self.space, {k: t for k, t in self.maps.items() if k <= max_arity})

    def basis_value(self, names: Sequence[str]) -> Vector:
        """μ_k on basis elements in any order."""
        names = tuple(names)
        hit = self._cache.get(names)
        if hit is not None:
            return hit
        table = self.maps.get(len(names))
        if not table:
            value: Vector = {}
        else:
            key, sign = canonical_order(self.space, names)
            stored = table.get(key)
            value = scaled(stored, sign) if stored else {}
        self._cache[names] = value
        return value

    def __eq__(self, other):
        return isinstance(other, LInftyStructure) and self.space == other.space and self.maps == other.maps

    def __repr__(self):
        counts = {k: len(t) for k, t in self.maps.items()}
        return f"LInftyStructure({self.space!r}, entries per arity {counts})"


def eval_mu(S: LInftyStructure, k: int, args: Sequence[Mapping[str, Fraction]]) -> Vector:
    """Multilinear extension of μ_k to arbitrary vectors."""
    if len(args) != k:
        raise StructuralError(f"μ_{k} takes {k} arguments, got {len(args)}")
    for a in args:
        S.space.check_vector(a)
    if k not in S.maps:
        return {}
    result: Vector = {}
    for combo in product(*(list(a.items()) for a in args)):
        coeff = Fraction(1)
        for _, c in combo:
            coeff *= c
        if coeff:
            add_scaled(result, S.basis_value(tuple(n for n, _ in combo)), coeff)
    return result


class CyclicPairing:
    """Graded-symmetric bilinear form of degree −d on a GradedSpace."""

    def __init__(self, space: GradedSpace, entries: Mapping[tuple[str, str], object], dimension: int = 3):
        table = {}
        for (a, b), value in entries.items():
            space.index(a)
            space.index(b)
            v = to_fraction(value)
            if v:
                table[(a, b)] = v
        self.space = space
        self.entries = table
        self.dimension = dimension

    def value(self, a: str, b: str) -> Fraction:
        if (a, b) in self.entries:
            return self.entries[(a, b)]
        if (b, a) in self.entries:
            sign = -1 if (self.space.degree(a) * self.space.degree(b)) % 2 else 1
            return sign * self.entries[(b, a)]
        return Fraction(0)

    def pair(self, u: Mapping[str, Fraction], v: Mapping[str, Fraction]) -> Fraction:
        total = Fraction(0)
        for a, ca in u.items():
            for b, cb in v.items():
                val = self.value(a, b)
                if val:
                    total += ca * cb * val
        return total

    def gram(self, left: Sequence[str], right: Sequence[str]) -> list[list[Fraction]]:
        return [[self.value(a, b) for b in right] for a in left]

    def scaled_by(self, factor) -> "CyclicPairing":
        factor = to_fraction(factor)
        return CyclicPairing(self.space, {k: v * factor for k, v in self.entries.items()}, self.dimension)

    def __repr__(self):
        return f"CyclicPairing(d={self.dimension}, {len(self.entries)} entries)"
