#!/usr/bin/env python3
"""Tests for local standard bases and Milnor numbers."""

import math
import os
import sys

import sympy as sp

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from algebra import parse_poly
from algebra.errors import ResourceError, UnsupportedError
from linfty.samples import desk_cusp, kuranishi_example
from potential import potential
from singularity import (
    LocalIdeal,
    determinacy_bound,
    leading_exponent,
    local_normal_form,
    milnor_number,
    quotient_monomials,
    standard_basis,
)
from transfer import build_contraction, transfer

XY = ("x", "y")

ADE = (
    [(f"x^2 + y^{k + 1}", k) for k in range(1, 11)]
    + [(f"x^2*y + y^{k - 1}", k) for k in range(4, 9)]
    + [("x^3 + y^4", 6), ("x^3 + x*y^3", 7), ("x^3 + y^5", 8)]
    + [("x^2 + y^2 + z^2", 1), ("x^2*y + y^4 + z^2", 5), ("x^3 + y^2", 2)]
)


def _transferred(sample, N):
    S, ae = sample
    return transfer(S, ae, build_contraction(S, ae), N)


def test_ade_table():
    """Milnor numbers of the simple singularities."""
    for text, expected in ADE:
        md = milnor_number(parse_poly(text))
        assert md.mu == expected, f"Expected μ({text}) = {expected}, got {md.mu}"
        assert len(md.monomial_basis) == expected, f"Expected {expected} basis monomials for {text}"
        assert determinacy_bound(md) == expected + 1, f"Expected determinacy {expected + 1} for {text}"
    print(f"  [PASS] ADE table ({len(ADE)} germs)")


def test_cusp_basis():
    """ℚ[[x, y]]/(2x, 3y²) has basis 1, y."""
    md = milnor_number(parse_poly("x^2 + y^3"))
    assert md.basis_strings() == ["1", "y"], f"Expected ['1', 'y'], got {md.basis_strings()}"
    print("  [PASS] cusp Milnor basis")


def test_coordinate_change_invariance():
    """A linear change of coordinates keeps μ."""
    md = milnor_number(parse_poly("(x + y)^2*y + y^3"))
    assert md.mu == 4, f"Expected μ = 4, got {md.mu}"
    md = milnor_number(parse_poly("(x + 2*y)^3 + y^4"))
    assert md.mu == 6, f"Expected μ = 6, got {md.mu}"
    print("  [PASS] coordinate change invariance")


def test_non_isolated_and_smooth():
    """x²y² is non-isolated; x + y² is smooth."""
    md = milnor_number(parse_poly("x^2*y^2"))
    assert md.mu == math.inf and not md.isolated, f"Expected μ = inf, got {md.mu}"
    try:
        determinacy_bound(md)
    except UnsupportedError:
        pass
    else:
        raise AssertionError("Expected UnsupportedError for a non-isolated germ")
    smooth = milnor_number(parse_poly("x + y^2"))
    assert smooth.mu == 0 and smooth.smooth_point, f"Expected a smooth point, got {smooth}"
    print("  [PASS] non-isolated and smooth germs")


def test_quotient_monomials():
    """Staircase below ⟨x², y³⟩ and an infinite quotient."""
    monos = quotient_monomials([(2, 0), (0, 3)], 2)
    assert monos is not None and len(monos) == 6, f"Expected 6 monomials, got {monos}"
    assert quotient_monomials([(1, 1)], 2) is None, "Expected an infinite quotient"
    print("  [PASS] quotient monomials")


def _ideal(*texts):
    return LocalIdeal([parse_poly(t, XY) for t in texts], XY)


def test_local_normal_form():
    """Reduction in the local ring: x + x² lies in ⟨x⟩ and y is reduced by ⟨x, y²⟩."""
    h = local_normal_form(parse_poly("x + x^2", XY), _ideal("x"))
    assert h.is_zero(), f"Expected 0, got {h}"
    h = local_normal_form(parse_poly("y", XY), _ideal("x", "y^2"))
    assert h == parse_poly("y", XY), f"Expected y, got {h}"
    print("  [PASS] local normal form")


def test_local_unit_is_removed():
    """x + x² = x·(1 + x) generates ⟨x⟩ locally, unlike in the polynomial ring."""
    g = parse_poly("x + x^2", XY)
    assert leading_exponent(g) == (1, 0), f"Expected the lowest-degree term x to lead, got {leading_exponent(g)}"
    _, remainder = sp.reduced(sp.Symbol("x"), [g.to_sympy()], *sp.symbols("x y"), order="grlex")
    assert remainder == sp.Symbol("x"), f"Expected x to survive global division, got {remainder}"
    h = local_normal_form(parse_poly("x", XY), _ideal("x + x^2"))
    assert h.is_zero(), f"Expected x to reduce to 0 modulo the unit multiple, got {h}"
    h = local_normal_form(parse_poly("y", XY), _ideal("x + x^2"))
    assert h == parse_poly("y", XY), f"Expected y to stay, got {h}"
    print("  [PASS] local unit removed")


def test_standard_basis_leading_ideal():
    """⟨x² + y³, xy⟩ has leading ideal ⟨x², xy, y⁴⟩ and colength 4."""
    J = standard_basis(_ideal("x^2 + y^3", "x*y"))
    leads = J.leading_ideal()
    assert leads == [(2, 0), (1, 1), (0, 4)], f"Expected x^2, xy, y^4, got {leads}"
    monos = quotient_monomials(leads, 2)
    assert monos is not None and len(monos) == 5, f"Expected 1, x, y, y^2, y^3, got {monos}"
    print("  [PASS] standard basis leading ideal")


def test_exact_potential_needs_no_refinement():
    """The desk potential is exact at order 2."""
    f = potential(_transferred(desk_cusp(), 2), 2)
    md = milnor_number(f)
    assert md.mu == 2 and md.certified, f"Expected certified μ = 2, got {md}"
    print("  [PASS] exact potential")


def test_refinement_loop():
    """A truncated potential is raised until N ≥ μ + 1."""
    T = _transferred(kuranishi_example(), 8)
    messages = []
    md = milnor_number(potential(T, 3), refine=lambda n: potential(T, n), progress=messages.append)
    assert md.mu == 3, f"Expected μ = 3, got {md.mu}"
    assert md.truncation_order == 5 and md.certified, f"Expected certification at order 5, got {md.truncation_order}"
    assert len(messages) == 1, f"Expected one progress line, got {messages}"
    for kwargs in ({}, {"refine": lambda n: potential(T, n), "cap": 4}):
        try:
            milnor_number(potential(T, 3), **kwargs)
        except ResourceError:
            continue
        raise AssertionError(f"Expected ResourceError for {kwargs}")
    print("  [PASS] truncation refinement")


if __name__ == "__main__":
    print("Running singularity tests...\n")
    test_ade_table()
    test_cusp_basis()
    test_coordinate_change_invariance()
    test_non_isolated_and_smooth()
    test_quotient_monomials()
    test_local_normal_form()
    test_local_unit_is_removed()
    test_standard_basis_leading_ideal()
    test_exact_potential_needs_no_refinement()
    test_refinement_loop()
    print("\nAll tests passed.")
