#!/usr/bin/env python3
"""Tests for algebra files, report rendering and the shipped samples."""

import os
import sys
import tempfile
from fractions import Fraction

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from algebra.errors import InputError
from linfty import check_cyclic, check_jacobi
from linfty.samples import desk_cusp, kuranishi_example
from report import (
    Report,
    machine_value,
    parse_algebra,
    parse_algebra_text,
    parse_machine,
    render_json,
    render_text,
    write_algebra,
)

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

DESK = """\
dimension: 3
degrees:
  1: [a]
  2: [b]
mu:
  - arity: 2
    inputs: [a, a]
    output: {b: "2"}
kappa:
  - pair: [a, b]
    value: "1"
"""


def _expect_input_error(text: str, fragment: str):
    try:
        parse_algebra_text(text, "t.cla")
    except InputError as exc:
        assert fragment in str(exc), f"Expected {fragment!r} in {str(exc)!r}"
        assert str(exc).startswith("t.cla:"), f"Expected a file location, got {str(exc)!r}"
        return
    raise AssertionError(f"Expected InputError containing {fragment!r}")


def test_parse_desk():
    """The desk file parses to the desk sample."""
    S, ae = parse_algebra_text(DESK, "desk.cla")
    expected_S, expected_ae = desk_cusp()
    assert S == expected_S, f"Expected the desk structure, got {S!r}"
    assert ae.entries == expected_ae.entries, f"Expected κ(a, b) = 1, got {ae.entries}"
    print("  [PASS] parse desk file")


def test_unsorted_inputs_are_normalized():
    """Inputs out of basis order take the Koszul sign."""
    text = (
        "degrees:\n"
        "  1: [a, c]\n"
        "  2: [b, d]\n"
        "mu:\n"
        "  - arity: 2\n"
        "    inputs: [c, a]\n"
        "    output: {d: \"-3\"}\n"
    )
    S, _ = parse_algebra_text(text, "t.cla")
    assert S.table(2)[("a", "c")] == {"d": Fraction(-3)}, f"Expected μ_2(a, c) = -3d, got {S.table(2)}"
    print("  [PASS] unsorted inputs")


def test_parse_rejections():
    """Malformed files fail with a located diagnostic."""
    _expect_input_error(DESK.replace('{b: "2"}', "{b: 0.5}"), "malformed rational")
    _expect_input_error(DESK.replace("2: [b]", "2: [a]"), "duplicate basis name")
    _expect_input_error(DESK.replace("inputs: [a, a]", "inputs: [a, z]"), "unknown basis name")
    _expect_input_error(DESK.replace('{b: "2"}', '{a: "2"}'), "expected 2")
    _expect_input_error(DESK.replace("dimension: 3", "dimension: 4"), "must be 3")
    _expect_input_error(DESK + "extra: 1\n", "unknown key")
    _expect_input_error(DESK.replace("arity: 2", "arity: 3"), "arity 3 with 2 inputs")
    dup = DESK.replace("kappa:", "  - arity: 2\n    inputs: [a, a]\n    output: {b: \"1\"}\nkappa:")
    _expect_input_error(dup, "duplicate mu entry")
    even = "degrees:\n  0: [x]\nmu:\n  - arity: 2\n    inputs: [x, x]\n    output: {x: \"1\"}\n"
    _expect_input_error(even, "repeats an even element")
    _expect_input_error("dimension: 3\n", "needs a degrees section")
    try:
        parse_algebra_text("", "t.cla")
    except InputError as exc:
        assert "empty" in str(exc), f"Expected an empty-file diagnostic, got {exc}"
    else:
        raise AssertionError("Expected InputError for an empty file")
    print("  [PASS] parse rejections")


def test_zero_algebra():
    """An empty degrees section is the zero algebra."""
    S, ae = parse_algebra_text("degrees: {}\n", "zero.cla")
    assert S.space.dim == 0 and not ae.entries, f"Expected the zero algebra, got {S!r}"
    print("  [PASS] zero algebra")


def test_write_then_parse():
    """write_algebra output parses back to the same structure."""
    S, ae = kuranishi_example()
    with tempfile.TemporaryDirectory() as tmp:
        path = write_algebra(S, ae, os.path.join(tmp, "nested", "k.cla"), comment="kuranishi\nexample")
        with open(path, encoding="utf-8") as f:
            text = f.read()
        assert text.startswith("# kuranishi\n# example\n"), f"Expected a comment header, got {text[:40]!r}"
        S2, ae2 = parse_algebra(path)
    assert S2 == S and ae2.entries == ae.entries, "Expected the written file to parse back unchanged"
    print("  [PASS] write then parse")


def test_shipped_samples_validate():
    """Every file under data/ is a cyclic L∞ algebra."""
    for name in ("cusp.cla", "a3_kuranishi.cla", "d4.cla"):
        S, ae = parse_algebra(os.path.join(ROOT, "data", name))
        report = check_jacobi(S, 4).merge(check_cyclic(S, ae, 4))
        assert report.ok, f"Expected {name} to validate, got {[str(v) for v in report.violations]}"
    print("  [PASS] shipped samples validate")


def test_machine_values():
    """Booleans, rationals, None and lists."""
    cases = [(True, "true"), (Fraction(-1, 3), "-1/3"), (None, "none"), ([1, "a"], "1, a"), (7, "7")]
    for value, expected in cases:
        assert machine_value(value) == expected, f"Expected {expected!r}, got {machine_value(value)!r}"
    print("  [PASS] machine values")


def test_render_and_parse_back():
    """Text and JSON reports read back to the same machine block."""
    report = Report("demo", "demo report")
    report.put("nu", 2)
    report.put("f", "-1/3*a^3")
    report.put("agreement", True)
    report.section("Numbers", columns=("k", "value")).row(1, Fraction(1, 2)).row(2, "x")
    report.section("Fields").add("μ", 2)
    text = render_text(report)
    assert text.index("[machine]") > text.index("Numbers"), "Expected the machine block last"
    lines = text.split("[machine]\n", 1)[1].splitlines()
    assert lines == sorted(lines), f"Expected sorted machine keys, got {lines}"
    expected = {"nu": "2", "f": "-1/3*a^3", "agreement": "true"}
    assert parse_machine(text) == expected, f"Expected {expected}, got {parse_machine(text)}"
    assert parse_machine(render_json(report)) == expected, "Expected JSON to parse back the same"
    print("  [PASS] render and parse back")


if __name__ == "__main__":
    print("Running file and report tests...\n")
    test_parse_desk()
    test_unsorted_inputs_are_normalized()
    test_parse_rejections()
    test_zero_algebra()
    test_write_then_parse()
    test_shipped_samples_validate()
    test_machine_values()
    test_render_and_parse_back()
    print("\nAll tests passed.")
