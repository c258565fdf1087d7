"""
Small structures with known answers.

Used by the tests and by the shipped `.cla` files under data/.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product

from algebra.errors import StructuralError
from algebra.linalg import inverse, is_invertible

from .graded import GradedSpace, Vector, add_scaled, clean
from .structure import CyclicPairing, LInftyStructure

Sample = tuple[LInftyStructure, CyclicPairing]


def desk_cusp(a: str = "a", b: str = "b") -> Sample:
    """L¹ = ⟨a⟩, L² = ⟨b⟩, [a, a] = 2b, κ(a, b) = 1."""
    space = GradedSpace({1: [a], 2: [b]})
    S = LInftyStructure(space, {2: {(a, a): {b: 2}}})
    return S, CyclicPairing(space, {(a, b): 1})


def direct_sum(*parts: Sample) -> Sample:
    components: dict[int, list[str]] = {}
    maps: dict[int, dict] = {}
    pairing: dict[tuple[str, str], Fraction] = {}
    for S, ae in parts:
        for deg, names in S.space.components.items():
            components.setdefault(deg, []).extend(names)
        for k, table in S.maps.items():
            maps.setdefault(k, {}).update(table)
        pairing.update(ae.entries)
    dims = {ae.dimension for _, ae in parts}
    if len(dims) > 1:
        raise StructuralError(f"pairings of different dimensions {sorted(dims)}")
    space = GradedSpace(components)
    S = LInftyStructure.from_entries(space, ((k_in, out) for table in maps.values() for k_in, out in table.items()))
    return S, CyclicPairing(space, pairing, dims.pop() if dims else 3)


def exact_pair() -> Sample:
    """L¹ = ⟨a, e⟩, L² = ⟨b, c⟩, d(e) = c, κ(a, b) = κ(e, c) = 1."""
    space = GradedSpace({1: ["a", "e"], 2: ["b", "c"]})
    S = LInftyStructure(space, {1: {("e",): {"c": 1}}})
    return S, CyclicPairing(space, {("a", "b"): 1, ("e", "c"): 1})


def kuranishi_example() -> Sample:
    """exact_pair with [a, a] = 2c and [a, e] = 2b; the transferred potential is a⁴/2."""
    S, ae = exact_pair()
    S = LInftyStructure(S.space, {
        1: {("e",): {"c": 1}},
        2: {("a", "a"): {"c": 2}, ("a", "e"): {"b": 2}},
    })
    return S, ae


def sl2() -> LInftyStructure:
    space = GradedSpace({0: ["H", "E", "F"]})
    return LInftyStructure(space, {2: {
        ("H", "E"): {"E": 2},
        ("H", "F"): {"F": -2},
        ("E", "F"): {"H": 1},
    }})


def change_basis(S: LInftyStructure, matrix, names) -> LInftyStructure:
    """The same μ_2 written in the basis g_j = Σ_i matrix[i][j] · e_i.

    Only single-degree structures with a μ_2 are supported.
    """
    if len(S.space.degrees) != 1 or set(S.maps) - {2}:
        raise StructuralError("change_basis handles a single degree and μ_2 only")
    deg = S.space.degrees[0]
    old = S.space.basis
    if len(names) != len(old) or not is_invertible(matrix):
        raise StructuralError("change_basis needs an invertible square matrix")
    inv = inverse(matrix)
    space = GradedSpace({deg: list(names)})
    columns = [{old[i]: Fraction(matrix[i][j]) for i in range(len(old)) if matrix[i][j]} for j in range(len(old))]
    entries = []
    for i, j in combinations_with_replacement(range(len(names)), 2):
        if i == j and deg % 2 == 0:
            continue
        value: Vector = {}
        for (x, cx), (y, cy) in product(columns[i].items(), columns[j].items()):
            add_scaled(value, S.basis_value((x, y)), cx * cy)
        coords = [value.get(n, Fraction(0)) for n in old]
        new = {names[r]: sum(inv[r][c] * coords[c] for c in range(len(old))) for r in range(len(old))}
        entries.append(((names[i], names[j]), clean(new)))
    return LInftyStructure.from_entries(space, entries)


def _random_invertible(rng: random.Random, n: int) -> list[list[int]]:
    while True:
        matrix = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
        if is_invertible(matrix):
            return matrix


def sl2_random_basis(rng: random.Random) -> LInftyStructure:
    return change_basis(sl2(), _random_invertible(rng, 3), ["g1", "g2", "g3"])


def sl2_trace_form() -> dict[tuple[str, str], Fraction]:
    """tr(XY) in the defining representation; invariant under the bracket."""
    return {("H", "H"): Fraction(2), ("E", "F"): Fraction(1), ("F", "E"): Fraction(1)}


def _form_in_basis(form, matrix, old, names) -> dict[tuple[str, str], Fraction]:
    out = {}
    for i, gi in enumerate(names):
        for j, gj in enumerate(names):
            value = sum(
                Fraction(matrix[a][i] * matrix[b][j]) * form.get((old[a], old[b]), 0)
                for a in range(len(old))
                for b in range(len(old))
            )
            if value:
                out[(gi, gj)] = value
    return out


# Exterior algebra on x, y, z: monomials are increasing index tuples.
_GENERATORS = ("x", "y", "z")


def _wedge(m1: tuple[int, ...], m2: tuple[int, ...]) -> tuple[int, tuple[int, ...]] | None:
    if set(m1) & set(m2):
        return None
    inversions = sum(1 for i in m1 for j in m2 if i > j)
    return (-1 if inversions % 2 else 1), tuple(sorted(m1 + m2))


def _heisenberg_d(m: tuple[int, ...], twist: Fraction) -> dict[tuple[int, ...], Fraction]:
    """Leibniz extension of dx = dy = 0, dz = twist·xy."""
    out: dict[tuple[int, ...], Fraction] = {}
    for pos, gen in enumerate(m):
        if _GENERATORS[gen] != "z":
            continue
        left = _wedge(m[:pos], (0, 1))
        if left is None:
            continue
        s1, mid = left
        right = _wedge(mid, m[pos + 1:])
        if right is None:
            continue
        s2, mono = right
        out[mono] = out.get(mono, Fraction(0)) + (-1) ** pos * s1 * s2 * twist
    return {k: v for k, v in out.items() if v}


def heisenberg_dg_lie(
    lie: LInftyStructure | None = None,
    form: dict[tuple[str, str], Fraction] | None = None,
    *,
    twist=1,
    volume=1,
) -> Sample:
    """𝔤 ⊗ A for A = Λ(x, y, z) with dz = twist·xy and ∫xyz = volume.

    A is the minimal model of the Heisenberg nilmanifold, so the transferred
    structure has a nonzero ν_3 (Massey products) and H⁰, H³ ≅ 𝔤. Basis
    names concatenate the 𝔤 name and the monomial: g, gx, gxy, gxyz.
    """
    if lie is None:
        lie, form = sl2(), sl2_trace_form()
    if form is None:
        raise StructuralError("heisenberg_dg_lie needs an invariant form for its Lie algebra")
    twist, volume = Fraction(twist), Fraction(volume)
    top = (0, 1, 2)
    monomials = [m for size in range(4) for m in combinations(range(3), size)]
    word = {m: "".join(_GENERATORS[i] for i in m) for m in monomials}
    name = {(g, m): f"{g}{word[m]}" for m in monomials for g in lie.space.basis}
    space = GradedSpace({
        size: [name[(g, m)] for m in monomials if len(m) == size for g in lie.space.basis]
        for size in range(4)
    })
    factor = {v: k for k, v in name.items()}

    differential = {}
    for (g, m), n in name.items():
        value = {name[(g, mm)]: c for mm, c in _heisenberg_d(m, twist).items()}
        if value:
            differential[(n,)] = value
    brackets = {}
    for p, q in combinations_with_replacement(space.basis, 2):
        (g, a), (h, b) = factor[p], factor[q]
        merged = _wedge(a, b)
        lie_value = lie.basis_value((g, h))
        if merged is None or not lie_value:
            continue
        sign, ab = merged
        brackets[(p, q)] = {name[(k, ab)]: sign * c for k, c in lie_value.items()}
    pairing = {}
    for p, q in combinations(space.basis, 2):
        (g, a), (h, b) = factor[p], factor[q]
        merged = _wedge(a, b)
        k = form.get((g, h), 0) or form.get((h, g), 0)
        if merged is None or merged[1] != top or not k:
            continue
        pairing[(p, q)] = k * merged[0] * volume
    S = LInftyStructure(space, {1: differential, 2: brackets})
    return S, CyclicPairing(space, pairing)


def random_dg_lie(rng: random.Random) -> Sample:
    """heisenberg_dg_lie over sl₂ in a random basis with random twist and volume."""
    matrix = _random_invertible(rng, 3)
    names = ["g1", "g2", "g3"]
    lie = change_basis(sl2(), matrix, names)
    form = _form_in_basis(sl2_trace_form(), matrix, sl2().space.basis, names)
    return heisenberg_dg_lie(lie, form, twist=rng.choice([-2, -1, 1, 2]), volume=rng.choice([-1, 1, 2]))


def bad_sl2() -> LInftyStructure:
    """sl₂ with [H, E] = 3E; the Jacobi identity fails on (H, E, F)."""
    return sl2().with_entry(("H", "E"), {"E": 3})


def square_nonzero() -> LInftyStructure:
    """x ↦ y ↦ z with d² x = z."""
    space = GradedSpace({0: ["x"], 1: ["y"], 2: ["z"]})
    return LInftyStructure(space, {1: {("x",): {"y": 1}, ("y",): {"z": 1}}})


def _symmetric_rank(rng: random.Random, n: int, rank: int) -> list[list[int]]:
    D = [[0] * n for _ in range(n)]
    for _ in range(rank):
        v = [rng.randint(-1, 1) for _ in range(n)]
        lam = rng.choice([-1, 1])
        for i in range(n):
            for j in range(n):
                D[i][j] += lam * v[i] * v[j]
    return D


def _symmetric_tensor(rng: random.Random, n: int, order: int, spread: int) -> dict[tuple[int, ...], int]:
    return {idx: rng.randint(-spread, spread) for idx in combinations_with_replacement(range(n), order)}


def random_cyclic(
    rng: random.Random,
    n: int,
    *,
    rank: int | None = None,
    max_arity: int = 2,
    spread: int = 2,
) -> Sample:
    """Random cyclic structure on L¹ = ⟨a1..an⟩, L² = ⟨b1..bn⟩ with κ(a_i, b_i) = 1.

    d is symmetric of the given rank; μ_k on L¹ comes from a totally
    symmetric (k+1)-tensor. H⁰ = H³ = 0 by construction. max_arity = 2 gives
    a dg Lie algebra.
    """
    a = [f"a{i + 1}" for i in range(n)]
    b = [f"b{i + 1}" for i in range(n)]
    space = GradedSpace({1: a, 2: b})
    if rank is None:
        rank = rng.randint(0, max(n - 1, 0))
    D = _symmetric_rank(rng, n, rank)
    maps: dict[int, dict] = {1: {(a[i],): clean({b[j]: D[j][i] for j in range(n)}) for i in range(n)}}
    for k in range(2, max_arity + 1):
        C = _symmetric_tensor(rng, n, k + 1, spread)
        maps[k] = {
            tuple(a[i] for i in idx): clean({b[l]: C[tuple(sorted(idx + (l,)))] for l in range(n)})
            for idx in combinations_with_replacement(range(n), k)
        }
    pairing = {(a[i], b[i]): 1 for i in range(n)}
    return LInftyStructure(space, maps), CyclicPairing(space, pairing)


def break_cyclicity(S: LInftyStructure) -> LInftyStructure:
    """Add b2 to μ_2(a1, a1) only, so ae(μ_2(a1, a1), a2) ≠ ae(μ_2(a1, a2), a1)."""
    if "b2" not in S.space or "a1" not in S.space:
        raise StructuralError("break_cyclicity needs a1 and b2")
    value = dict(S.basis_value(("a1", "a1")))
    value["b2"] = value.get("b2", Fraction(0)) + 1
    return S.with_entry(("a1", "a1"), value)
