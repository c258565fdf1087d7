#!/usr/bin/env python3
"""End-to-end tests of the cla command line through run_command."""

import io
import os
import sys
import tempfile

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from cla import load_config, load_thresholds, run_command
from report import parse_machine

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
CUSP = os.path.join(ROOT, "data", "cusp.cla")
A3 = os.path.join(ROOT, "data", "a3_kuranishi.cla")
D4 = os.path.join(ROOT, "data", "d4.cla")

BROKEN = """\
degrees:
  1: [a1, a2]
  2: [b1, b2]
mu:
  - arity: 2
    inputs: [a1, a1]
    output: {b2: "1"}
kappa:
  - pair: [a1, b1]
    value: "1"
  - pair: [a2, b2]
    value: "1"
"""


def _run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code, _ = run_command(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def _machine(*argv):
    code, out, err = _run(*argv)
    return code, parse_machine(out), err


def test_validate():
    """The desk algebra validates; a non-cyclic one exits with 2."""
    code, m, _ = _machine("validate", CUSP)
    assert code == 0, f"Expected exit 0, got {code}"
    assert m["ok"] == "true" and m["jacobi.ok"] == "true", f"Expected ok, got {m}"
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "broken.cla")
        with open(path, "w", encoding="utf-8") as f:
            f.write(BROKEN)
        code, m, _ = _machine("validate", path, "--max-arity", "2")
    assert code == 2, f"Expected exit 2, got {code}"
    assert m["cyclic.ok"] == "false" and m["jacobi.ok"] == "true", f"Expected a cyclic violation only, got {m}"
    print("  [PASS] validate")


def test_cohomology():
    """d(e) = c leaves H¹ = ⟨a⟩, H² = ⟨b⟩."""
    code, m, _ = _machine("cohomology", A3)
    assert code == 0, f"Expected exit 0, got {code}"
    assert (m["H1.dim"], m["H1.basis"], m["H2.basis"]) == ("1", "a", "b"), f"Expected a and b, got {m}"
    print("  [PASS] cohomology")


def test_transfer_writes_valid_algebra():
    """transfer -o writes a file that validates."""
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "out", "a3_h.cla")
        code, m, _ = _machine("transfer", A3, "--order", "4", "-o", path)
        assert code == 0, f"Expected exit 0, got {code}"
        assert m["nu[a,a,a]"] == "12*b", f"Expected ν(a, a, a) = 12*b, got {m.get('nu[a,a,a]')}"
        assert m["transfer.ok"] == "true" and m["minimal"] == "false", f"Expected a valid transfer, got {m}"
        assert m["output"] == path and os.path.exists(path), f"Expected {path} to be written"
        code, m, _ = _machine("validate", path)
        assert code == 0 and m["ok"] == "true", f"Expected the written file to validate, got {m}"
        code, m, _ = _machine("potential", path, "--order", "4")
        assert m["f"] == "1/2*a^4", f"Expected 1/2*a^4 from the written file, got {m['f']}"
    print("  [PASS] transfer round trip")


def test_config_paths_follow_config_file():
    """A relative output_dir and thresholds.yml are read next to the config file, not the working directory."""
    with tempfile.TemporaryDirectory() as tmp:
        os.makedirs(os.path.join(tmp, "config"))
        config = os.path.join(tmp, "config.yaml")
        with open(config, "w", encoding="utf-8") as f:
            f.write("settings:\n  output_dir: results\n")
        with open(os.path.join(tmp, "config", "thresholds.yml"), "w", encoding="utf-8") as f:
            f.write("max_blowups: 9\n")
        settings = load_config(config)
        expected_dir = os.path.join(os.path.realpath(tmp), "results")
        assert settings["output_dir"] == expected_dir, f"Expected {expected_dir}, got {settings['output_dir']}"
        assert load_thresholds(config)["max_blowups"] == 9, "Expected thresholds.yml beside the config file"
        code, m, _ = _machine("transfer", A3, "--order", "4", "-o", "a3_h.cla", "--config", config)
        expected = os.path.join(expected_dir, "a3_h.cla")
        assert code == 0 and m["output"] == expected, f"Expected {expected}, got {m.get('output')}"
        assert os.path.exists(expected), f"Expected {expected} to be written"
    defaults = load_config()
    assert defaults["output_dir"] == os.path.realpath(ROOT), f"Expected the project directory, got {defaults['output_dir']}"
    print("  [PASS] config paths follow the config file")


def test_potential():
    """a3_kuranishi gives 1/2*a^4 with df = F."""
    code, m, _ = _machine("potential", A3, "--order", "6")
    assert code == 0, f"Expected exit 0, got {code}"
    assert (m["f"], m["exact"], m["df_equals_F.ok"]) == ("1/2*a^4", "false", "true"), f"Expected f = 1/2*a^4, got {m}"
    print("  [PASS] potential")


def test_milnor():
    """Polynomials and algebra files."""
    code, m, _ = _machine("milnor", "x^3 + x*y^3")
    assert code == 0 and m["mu"] == "7", f"Expected μ = 7, got {m}"
    code, m, _ = _machine("milnor", CUSP)
    assert (m["mu"], m["certified"], m["basis"]) == ("2", "true", "1, a"), f"Expected μ = 2, got {m}"
    code, m, _ = _machine("milnor", "x^2*y^2")
    assert code == 0 and m["mu"] == "inf" and m["isolated"] == "false", f"Expected a non-isolated germ, got {m}"
    print("  [PASS] milnor")


def test_resolve_and_zeta():
    """Cusp resolution data and zeta function."""
    code, m, _ = _machine("resolve", "x^2 + y^3")
    assert code == 0, f"Expected exit 0, got {code}"
    assert m["E3.mpk"] == "6, 3, 4" and m["E1.self"] == "-3", f"Expected cusp data, got {m}"
    assert m["acampo_sum"] == "-1" and m["divisors"] == "3", f"Expected 3 divisors, got {m}"
    code, m, _ = _machine("zeta", "x^2 + y^3")
    assert m["zeta"] == "(1-t^2)^-1 (1-t^3)^-1 (1-t^6)^1", f"Expected the cusp zeta, got {m['zeta']}"
    assert m["zeta.degree"] == "1", f"Expected degree 1, got {m['zeta.degree']}"
    code, m, _ = _machine("motive", "x^2 + y^3")
    assert m["chi_top"] == "-1" and m["unweighted_euler"] == "5", f"Expected χ_top = -1, got {m}"
    print("  [PASS] resolve, zeta and motive")


def test_behrend():
    """Both routes on D4; the Milnor route on the desk algebra."""
    code, m, _ = _machine("behrend", D4)
    assert code == 0, f"Expected exit 0, got {code}"
    assert (m["nu"], m["mu"], m["route"], m["agreement"]) == ("4", "4", "auto", "true"), f"Expected ν = 4, got {m}"
    code, m, _ = _machine("behrend", CUSP)
    assert (m["nu"], m["chi_fiber"], m["route"]) == ("2", "3", "milnor"), f"Expected ν = 2, got {m}"
    code, m, _ = _machine("behrend", "x^2 + y^3", "--route", "resolution")
    assert m["nu"] == "2" and m["route"] == "resolution", f"Expected the resolution route, got {m}"
    print("  [PASS] behrend")


def test_pipeline_json():
    """The whole chain as JSON."""
    code, out, err = _run("pipeline", A3, "--json")
    assert code == 0, f"Expected exit 0, got {code}: {err}"
    assert out.lstrip().startswith("{"), "Expected JSON output"
    m = parse_machine(out)
    assert (m["f"], m["nu"], m["mu"]) == ("1/2*a^4", "3", "3"), f"Expected the A3 chain, got {m}"
    assert m["jacobi.ok"] == "true" and m["df_equals_F.ok"] == "true", f"Expected passing checks, got {m}"
    assert "🔍" in err and "🔍" not in out, "Expected progress lines on stderr only"
    print("  [PASS] pipeline")


def test_errors_and_exit_codes():
    """Input errors exit 1, resource caps exit 3."""
    cases = [
        (("behrend", "x^2*y^2"), 1),
        (("validate", os.path.join(ROOT, "data", "missing.cla")), 1),
        (("behrend", "x^2 + y^3", "--route", "fast"), 1),
        (("milnor", "x^^2"), 1),
        (("resolve", "x^2 + y^3", "--config", os.path.join(ROOT, "no_such_config.yaml")), 1),
    ]
    for argv, expected in cases:
        code, out, err = _run(*argv)
        assert code == expected, f"Expected exit {expected} for {argv}, got {code}"
        assert out == "" and "error:" in err, f"Expected a diagnostic on stderr for {argv}"
    with tempfile.TemporaryDirectory() as tmp:
        os.makedirs(os.path.join(tmp, "config"))
        config = os.path.join(tmp, "config.yaml")
        with open(config, "w", encoding="utf-8") as f:
            f.write("settings:\n  truncation_order: 6\n")
        with open(os.path.join(tmp, "config", "thresholds.yml"), "w", encoding="utf-8") as f:
            f.write("max_blowups: 2\n")
        code, _, err = _run("resolve", "x^2 + y^3", "--config", config)
    assert code == 3, f"Expected exit 3 for a tight blow-up budget, got {code}"
    print("  [PASS] errors and exit codes")


def test_deterministic_output():
    """Identical input gives identical bytes."""
    first = _run("pipeline", D4)[1]
    second = _run("pipeline", D4)[1]
    assert first == second, "Expected identical reports"
    assert "[machine]" in first, "Expected a machine block"
    print("  [PASS] deterministic output")


if __name__ == "__main__":
    print("Running command-line tests...\n")
    test_validate()
    test_cohomology()
    test_transfer_writes_valid_algebra()
    test_config_paths_follow_config_file()
    test_potential()
    test_milnor()
    test_resolve_and_zeta()
    test_behrend()
    test_pipeline_json()
    test_errors_and_exit_codes()
    test_deterministic_output()
    print("\nAll tests passed.")
