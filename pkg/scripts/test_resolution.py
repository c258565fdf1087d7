#!/usr/bin/env python3
"""Tests for embedded resolution of plane-curve germs and their strata."""

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from algebra import parse_poly
from algebra.errors import InputError, ResourceError, UnsupportedError
from resolution import blow_up_point, embedded_resolution, initial_chart, strata


def _mpk(g):
    return [(d.m, d.p, d.k) for d in g.divisors]


def test_blow_up_point():
    """The cusp pulls back to v²(u² + v) in the second chart."""
    a, b = blow_up_point(initial_chart(parse_poly("x^2 + y^3")), (0, 0))
    expected = parse_poly("u1b^2*v1b^2 + v1b^3", ("u1b", "v1b"))
    assert b.total_transform == expected, f"Expected {expected}, got {b.total_transform}"
    assert b.total_transform.order_in("v1b") == 2, f"Expected order 2 along E1, got {b.total_transform.order_in('v1b')}"
    assert b.divisors == ((1, "v"),) and a.divisors == ((1, "u"),), f"Expected E1 in both charts, got {a.divisors}, {b.divisors}"
    assert len(b.history) == 1, f"Expected one recorded step, got {b.history}"
    print("  [PASS] blow up a point")


def test_cusp_resolution():
    """x² + y³ needs three blow-ups."""
    g = embedded_resolution(parse_poly("x^2 + y^3"))
    assert _mpk(g) == [(2, 1, 1), (3, 2, 2), (6, 3, 4)], f"Expected cusp (m, p, k), got {_mpk(g)}"
    chis = [g.chi(d.id) for d in g.divisors]
    assert chis == [1, 1, -1], f"Expected χ = [1, 1, -1], got {chis}"
    selfs = [d.self_intersection for d in g.divisors]
    assert selfs == [-3, -2, -1], f"Expected self-intersections [-3, -2, -1], got {selfs}"
    assert g.edges == ((1, 3), (2, 3)), f"Expected edges ((1, 3), (2, 3)), got {g.edges}"
    assert len(g.strict_branches) == 1 and g.strict_branches[0].divisor == 3, f"Expected one branch on E3, got {g.strict_branches}"
    assert g.acampo_sum() == -1, f"Expected A'Campo sum -1, got {g.acampo_sum()}"
    assert g.snc_certificate and not g.smooth, "Expected a certified resolution"
    print("  [PASS] cusp resolution")


def test_node_resolution():
    """xy resolves in one blow-up with two strict branches."""
    g = embedded_resolution(parse_poly("x*y"))
    assert [d.m for d in g.divisors] == [2], f"Expected m = [2], got {[d.m for d in g.divisors]}"
    assert g.chi(1) == 0, f"Expected χ(E1) = 0, got {g.chi(1)}"
    assert len(g.strict_branches) == 2, f"Expected two branches, got {g.strict_branches}"
    assert all(b.rational for b in g.strict_branches), "Expected rational branches"
    print("  [PASS] node resolution")


def test_irrational_branch():
    """x² + y² meets E1 in a conjugate pair of points."""
    g = embedded_resolution(parse_poly("x^2 + y^2"))
    assert len(g.strict_branches) == 1, f"Expected one branch, got {g.strict_branches}"
    branch = g.strict_branches[0]
    assert branch.points == 2 and not branch.rational, f"Expected 2 irrational points, got {branch}"
    assert g.chi(1) == 0, f"Expected χ(E1) = 0, got {g.chi(1)}"
    print("  [PASS] irrational branch")


def test_d_series():
    """D4 and D6 multiplicities and Euler characteristics."""
    d4 = embedded_resolution(parse_poly("x^2*y + y^3"))
    assert [d.m for d in d4.divisors] == [3], f"Expected D4 m = [3], got {[d.m for d in d4.divisors]}"
    assert d4.chi(1) == -1, f"Expected χ(E1) = -1, got {d4.chi(1)}"
    d6 = embedded_resolution(parse_poly("x^2*y + y^5"))
    assert [d.m for d in d6.divisors] == [3, 5], f"Expected D6 m = [3, 5], got {[d.m for d in d6.divisors]}"
    chis = [d6.chi(d.id) for d in d6.divisors]
    assert chis == [0, -1], f"Expected χ = [0, -1], got {chis}"
    print("  [PASS] D4 and D6")


PLANE_ADE = (
    [(f"x^2 + y^{k + 1}", k) for k in range(1, 11)]
    + [(f"x^2*y + y^{k - 1}", k) for k in range(4, 9)]
    + [("x^3 + y^4", 6), ("x^3 + x*y^3", 7), ("x^3 + y^5", 8)]
)


def test_acampo_matches_milnor():
    """Σ m_i χ(E_i°) = 1 - μ and n_i = m_i - p_i ≥ 1 on the ADE table."""
    for text, mu in PLANE_ADE:
        g = embedded_resolution(parse_poly(text))
        assert g.acampo_sum() == 1 - mu, f"Expected {1 - mu} for {text}, got {g.acampo_sum()}"
        for d in g.divisors:
            assert d.n >= 1, f"Expected n ≥ 1 on {d.label} of {text}, got {d.n}"
    print(f"  [PASS] A'Campo sums ({len(PLANE_ADE)} germs)")


def test_extra_blowups_keep_invariants():
    """A blow-up at a generic point of the last divisor keeps the A'Campo sum."""
    base = embedded_resolution(parse_poly("x^2 + y^3"))
    more = embedded_resolution(parse_poly("x^2 + y^3"), extra_blowups=1)
    assert len(more.divisors) == len(base.divisors) + 1, f"Expected one more divisor, got {len(more.divisors)}"
    assert more.divisors[-1].m == 6, f"Expected the new divisor to have m = 6, got {more.divisors[-1].m}"
    assert more.acampo_sum() == base.acampo_sum(), "Expected the A'Campo sum to be unchanged"
    print("  [PASS] extra blow-ups")


def test_smooth_germ():
    """A smooth germ needs no blow-up."""
    g = embedded_resolution(parse_poly("x + y^2"))
    assert g.smooth and not g.divisors, f"Expected no divisors, got {g.divisors}"
    print("  [PASS] smooth germ")


def test_strata_of_cusp():
    """Singletons, crossings and the strict-transform contact."""
    names = [(s.name, s.chi, s.m, s.over_origin) for s in strata(embedded_resolution(parse_poly("x^2 + y^3")))]
    expected = [
        ("{E1}", 1, 2, True),
        ("{E2}", 1, 3, True),
        ("{E3}", -1, 6, True),
        ("{S1}", 0, 1, False),
        ("{E1,E3}", 1, 2, True),
        ("{E2,E3}", 1, 3, True),
        ("{S1,E3}", 1, 1, True),
    ]
    assert names == expected, f"Expected {expected}, got {names}"
    print("  [PASS] cusp strata")


def test_resolution_errors():
    """Bad germs are rejected with the right category."""
    cases = [
        ("x^2 + y^2 + z^2", UnsupportedError),
        ("x + 1", InputError),
        ("x^2*y^2", InputError),
    ]
    for text, exc in cases:
        try:
            embedded_resolution(parse_poly(text))
        except exc:
            continue
        raise AssertionError(f"Expected {exc.__name__} for {text}")
    try:
        embedded_resolution(parse_poly("x^2 + y^3"), max_blowups=2)
    except ResourceError:
        pass
    else:
        raise AssertionError("Expected ResourceError for a tight blow-up budget")
    print("  [PASS] resolution errors")


if __name__ == "__main__":
    print("Running resolution tests...\n")
    test_blow_up_point()
    test_cusp_resolution()
    test_node_resolution()
    test_irrational_branch()
    test_d_series()
    test_acampo_matches_milnor()
    test_extra_blowups_keep_invariants()
    test_smooth_germ()
    test_strata_of_cusp()
    test_resolution_errors()
    print("\nAll tests passed.")
