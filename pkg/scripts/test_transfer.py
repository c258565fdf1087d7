#!/usr/bin/env python3
"""Tests for contraction data and homotopy transfer."""

import os
import random
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from algebra.errors import AxiomError, ResourceError, StructuralError
from linfty import CyclicPairing, GradedSpace, LInftyStructure, LinearMap
from linfty.samples import (
    desk_cusp,
    exact_pair,
    heisenberg_dg_lie,
    kuranishi_example,
    random_cyclic,
    random_dg_lie,
    square_nonzero,
)
from potential import check_df_equals_F, mc_map, potential
from transfer import build_contraction, check_transfer, partitions, transfer, verify_contraction


def test_partitions():
    """Nondecreasing compositions of n into k parts."""
    assert partitions(4, 2) == ((1, 3), (2, 2)), f"Expected ((1, 3), (2, 2)), got {partitions(4, 2)}"
    assert partitions(3, 3) == ((1, 1, 1),), f"Expected ((1, 1, 1),), got {partitions(3, 3)}"
    assert partitions(2, 3) == (), f"Expected no partitions, got {partitions(2, 3)}"
    print("  [PASS] partitions")


def test_minimal_transfer_is_restriction():
    """A zero differential transfers to the same structure."""
    S, ae = desk_cusp()
    C = build_contraction(S, ae)
    assert C.minimal, "Expected a minimal contraction"
    assert C.eta.is_zero(), "Expected η = 0"
    T = transfer(S, ae, C, 4)
    assert T.structure == S, f"Expected the desk structure back, got {T.structure!r}"
    assert T.pairing.value("a", "b") == 1, f"Expected κ(a, b) = 1, got {T.pairing.value('a', 'b')}"
    assert T.minimal and T.source_arity == 2, f"Expected minimal source of arity 2, got {T.source_arity}"
    print("  [PASS] minimal transfer is restriction")


def test_random_minimal_transfer():
    """Rank-0 random structures transfer to themselves."""
    rng = random.Random(41)
    for _ in range(5):
        S, ae = random_cyclic(rng, rng.randint(1, 3), rank=0, max_arity=3)
        T = transfer(S, ae, build_contraction(S, ae), 4)
        assert T.structure == S, f"Expected restriction to be the identity, got {T.structure!r}"
    print("  [PASS] random minimal transfers")


def test_exact_pair_contraction():
    """d(e) = c is inverted by η(c) = e."""
    S, ae = exact_pair()
    C = build_contraction(S, ae)
    assert not C.minimal, "Expected a nonzero differential"
    assert C.h_space.basis == ("a", "b"), f"Expected ('a', 'b'), got {C.h_space.basis}"
    assert C.eta.image("c") == {"e": 1}, f"Expected η(c) = e, got {C.eta.image('c')}"
    assert C.eta.image("e") == {}, f"Expected η(e) = 0, got {C.eta.image('e')}"
    assert C.pi == C.iota.compose(C.proj), "Expected Π = ι∘p"
    assert C.proj.compose(C.iota) == LinearMap.identity(C.h_space.basis), "Expected p∘ι = id"
    verify_contraction(C, ae)
    print("  [PASS] exact pair contraction")


def test_kuranishi_transfer():
    """[a, a] = 2c, [a, e] = 2b transfers to ν_3(a, a, a) = 12b."""
    S, ae = kuranishi_example()
    T = transfer(S, ae, build_contraction(S, ae), 4)
    assert not T.structure.table(2), f"Expected ν_2 = 0, got {T.structure.table(2)}"
    nu3 = T.structure.table(3).get(("a", "a", "a"))
    assert nu3 == {"b": 12}, f"Expected ν_3(a, a, a) = 12b, got {nu3}"
    assert not T.minimal, "Expected a non-minimal source"
    report = check_transfer(T, 4)
    assert report.ok, f"Expected the transferred structure to pass, got {[str(v) for v in report.violations]}"
    print("  [PASS] Kuranishi transfer")


def test_random_transfer_is_cyclic():
    """Transferred random structures satisfy Jacobi, cyclic invariance and df = F."""
    rng = random.Random(43)
    checked = 0
    for _ in range(20):
        n = rng.randint(2, 3)
        S, ae = random_cyclic(rng, n, rank=rng.randint(1, n - 1), max_arity=rng.choice([2, 3]))
        T = transfer(S, ae, build_contraction(S, ae), 5)
        report = check_transfer(T, 5)
        assert report.ok, f"Expected a cyclic transfer, got {[str(v) for v in report.violations]}"
        df = check_df_equals_F(potential(T, 5), mc_map(T, 5))
        assert df.ok, f"Expected df = F, got {[str(v) for v in df.violations]}"
        checked += 1
    for _ in range(3):
        S, ae = random_dg_lie(rng)
        T = transfer(S, ae, build_contraction(S, ae), 3)
        assert T.structure.table(3), "Expected a nonzero ν_3 on the Heisenberg model"
        report = check_transfer(T, 3)
        assert report.ok, f"Expected a cyclic transfer, got {[str(v) for v in report.violations[:3]]}"
        checked += 1
    print(f"  [PASS] {checked} random transfers are cyclic")


def test_transfer_errors():
    """Order bounds, degenerate pairings and d² ≠ 0 are rejected."""
    S, ae = desk_cusp()
    C = build_contraction(S, ae)
    for N, exc in ((1, StructuralError), (30, ResourceError)):
        try:
            transfer(S, ae, C, N)
        except exc:
            continue
        raise AssertionError(f"Expected {exc.__name__} for N={N}")
    try:
        build_contraction(S, CyclicPairing(S.space, {}))
    except StructuralError:
        pass
    else:
        raise AssertionError("Expected StructuralError for a degenerate pairing")
    try:
        build_contraction(square_nonzero(), CyclicPairing(square_nonzero().space, {}))
    except AxiomError:
        pass
    else:
        raise AssertionError("Expected AxiomError for d² ≠ 0")
    print("  [PASS] transfer errors")


def test_transfer_outside_degrees_one_and_two():
    """H⁰ and H³ survive a transfer with a nonzero differential."""
    space = GradedSpace({0: ["u"], 1: ["a", "e"], 2: ["b", "c"], 3: ["v"]})
    S = LInftyStructure(space, {1: {("e",): {"c": 1}}})
    ae = CyclicPairing(space, {("u", "v"): 1, ("a", "b"): 1, ("e", "c"): 1})
    T = transfer(S, ae, build_contraction(S, ae), 3)
    assert T.structure.space.basis == ("u", "a", "b", "v"), f"Expected (u, a, b, v), got {T.structure.space.basis}"
    assert not T.structure.maps, f"Expected no brackets, got {T.structure.maps}"
    assert T.pairing.value("u", "v") == 1, f"Expected κ(u, v) = 1, got {T.pairing.value('u', 'v')}"
    assert check_transfer(T, 3).ok, "Expected the transferred structure to pass"
    print("  [PASS] transfer with H⁰ and H³")


def test_heisenberg_transfer():
    """sl₂ ⊗ Heisenberg model: ν_2 restricts, ν_3 carries the Massey products."""
    S, ae = heisenberg_dg_lie()
    T = transfer(S, ae, build_contraction(S, ae), 4)
    M = T.structure.space
    dims = {d: M.dim_in(d) for d in M.degrees}
    assert dims == {0: 3, 1: 6, 2: 6, 3: 3}, f"Expected dims 3, 6, 6, 3, got {dims}"
    assert T.structure.basis_value(("H", "E")) == {"E": 2}, f"Expected [H, E] = 2E, got {T.structure.basis_value(('H', 'E'))}"
    assert T.structure.basis_value(("E", "Fxyz")) == {"Hxyz": 1}, f"Expected [E, Fxyz] = Hxyz, got {T.structure.basis_value(('E', 'Fxyz'))}"
    assert T.structure.table(3), "Expected a nonzero ν_3"
    report = check_transfer(T, 4)
    assert report.ok, f"Expected a cyclic transfer, got {[str(v) for v in report.violations[:3]]}"
    print("  [PASS] Heisenberg transfer")


if __name__ == "__main__":
    print("Running transfer tests...\n")
    test_partitions()
    test_minimal_transfer_is_restriction()
    test_random_minimal_transfer()
    test_exact_pair_contraction()
    test_kuranishi_transfer()
    test_random_transfer_is_cyclic()
    test_transfer_errors()
    test_transfer_outside_degrees_one_and_two()
    test_heisenberg_transfer()
    print("\nAll tests passed.")
