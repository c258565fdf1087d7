#!/usr/bin/env python3
"""
cla: cyclic L∞ algebras and the critical locus of their potential
===================================================================
Transfers a finite-dimensional cyclic L∞ algebra to its cohomology, builds
the superpotential and computes the invariants of its critical point:
Milnor number, embedded resolution, motivic Milnor fiber, monodromy zeta
function and Behrend value.

Usage:
    python cla.py validate data/cusp.cla
    python cla.py transfer data/a3_kuranishi.cla --order 6 -o out.cla
    python cla.py behrend "x^2 + y^3"
    python cla.py pipeline data/cusp.cla --json
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import TextIO

import yaml

from algebra.errors import InputError, ToolkitError
from algebra.parser import parse_poly, parse_variables
from algebra.poly import Poly, format_rational
from linfty.axioms import AxiomReport, check_cyclic, check_jacobi
from linfty.cohomology import cohomology
from linfty.graded import GradedSpace, Vector
from linfty.structure import CyclicPairing, LInftyStructure
from motive.behrend import ROUTES, behrend_value
from motive.grothendieck import euler_specialize, motivic_milnor_fiber, unweighted_euler
from motive.zeta import monodromy_zeta
from potential.superpotential import Potential, check_df_equals_F, mc_map, potential
from report.algebra_file import parse_algebra, write_algebra
from report.render import Report, render_json, render_text
from resolution.graph import ResolutionGraph, embedded_resolution
from resolution.strata import strata
from singularity.milnor import milnor_number
from transfer.contraction import build_contraction, verify_contraction
from transfer.trees import TransferredStructure, check_transfer, transfer

DEFAULT_CONFIG = Path(__file__).resolve().parent / "config.yaml"

DEFAULT_SETTINGS = {
    "truncation_order": 12,
    "truncation_step": 2,
    "truncation_cap": 24,
    "max_arity": 4,
    "output_dir": ".",
}

DEFAULT_THRESHOLDS = {
    "transfer_arity_budget": 24,
    "standard_basis_degree_cap": 64,
    "normal_form_step_cap": 20000,
    "max_blowups": 64,
}

MAX_LISTED_VIOLATIONS = 10


def _read_yaml(path: Path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
    except yaml.YAMLError as exc:
        raise InputError(f"cannot parse {path}: {exc}") from None
    if not isinstance(data, dict):
        raise InputError(f"{path} must hold a mapping")
    return data


def load_config(path: str | Path | None = DEFAULT_CONFIG) -> dict:
    """`settings:` block of config.yaml over the built-in defaults.

    A relative output_dir is taken from the directory holding the config file.
    """
    settings = dict(DEFAULT_SETTINGS)
    if path is None:
        return settings
    p = Path(path)
    if not p.exists():
        return settings
    settings.update(_read_yaml(p).get("settings", {}) or {})
    out = Path(str(settings["output_dir"]))
    if not out.is_absolute():
        settings["output_dir"] = str(p.resolve().parent / out)
    return settings


def load_thresholds(config_path: str | Path | None = DEFAULT_CONFIG) -> dict:
    """config/thresholds.yml next to config.yaml over the built-in caps."""
    thresholds = dict(DEFAULT_THRESHOLDS)
    base = Path(config_path).parent if config_path else Path(".")
    p = base / "config" / "thresholds.yml"
    if p.exists():
        thresholds.update(_read_yaml(p))
    return thresholds


class _Parser(argparse.ArgumentParser):
    """Usage errors become InputError (exit 1) instead of SystemExit(2)."""

    def error(self, message):
        raise InputError(message)


@dataclass
class Context:
    settings: dict
    thresholds: dict
    err: TextIO
    variables: tuple[str, ...] | None = None

    def say(self, line: str) -> None:
        print(line, file=self.err, flush=True)

    @property
    def degree_cap(self) -> int:
        return int(self.thresholds["standard_basis_degree_cap"])

    @property
    def max_steps(self) -> int:
        return int(self.thresholds["normal_form_step_cap"])

    @property
    def max_blowups(self) -> int:
        return int(self.thresholds["max_blowups"])

    @property
    def budget(self) -> int:
        return int(self.thresholds["transfer_arity_budget"])


# ── helpers ───────────────────────────────────────────────────


def format_vector(vec: Vector, space: GradedSpace) -> str:
    if not vec:
        return "0"
    out = ""
    for name in sorted(vec, key=space.index):
        c = vec[name]
        mag = abs(c)
        body = name if mag == 1 else f"{format_rational(mag)}*{name}"
        if not out:
            out = ("-" if c < 0 else "") + body
        else:
            out += (" - " if c < 0 else " + ") + body
    return out


def _is_file_argument(text: str) -> bool:
    return text.endswith(".cla") or Path(text).is_file()


def _load_algebra(path: str, ctx: Context) -> tuple[LInftyStructure, CyclicPairing]:
    ctx.say(f"🔍 Reading {path}...")
    S, ae = parse_algebra(path)
    dims = ", ".join(f"L^{d}: {len(ns)}" for d, ns in S.space.components.items()) or "zero algebra"
    ctx.say(f"  ✓ {dims}")
    return S, ae


def _poly_argument(text: str, ctx: Context) -> Poly:
    f = parse_poly(text, ctx.variables, location="argument")
    ctx.say(f"🔍 f = {f}  (variables {', '.join(f.variables) or 'none'})")
    return f


def _add_report(report: Report, prefix: str, checked: AxiomReport, section) -> None:
    report.put(f"{prefix}.ok", checked.ok)
    report.put(f"{prefix}.violations", len(checked.violations))
    section.add(f"{prefix} identities", "ok" if checked.ok else ", ".join(checked.identities()))
    for v in checked.violations[:MAX_LISTED_VIOLATIONS]:
        section.add("  violation", str(v))
    if len(checked.violations) > MAX_LISTED_VIOLATIONS:
        section.add("  …", f"{len(checked.violations) - MAX_LISTED_VIOLATIONS} more")


class AlgebraPipeline:
    """Contraction, transfer and potential of one algebra, cached per order."""

    def __init__(self, S: LInftyStructure, ae: CyclicPairing, ctx: Context):
        self.S, self.ae, self.ctx = S, ae, ctx
        self.contraction = build_contraction(S, ae)
        verify_contraction(self.contraction, ae)
        self.transferred = lru_cache(maxsize=None)(self._transfer)
        self.potential = lru_cache(maxsize=None)(self._potential)

    def _transfer(self, N: int) -> TransferredStructure:
        self.ctx.say(f"  → transferring to cohomology through arity {N}")
        return transfer(self.S, self.ae, self.contraction, N, budget=self.ctx.budget)

    def _potential(self, N: int) -> Potential:
        return potential(self.transferred(N), N)

    def milnor(self, N: int):
        s = self.ctx.settings
        return milnor_number(
            self.potential(N),
            refine=self.potential,
            cap=int(s["truncation_cap"]),
            step=int(s["truncation_step"]),
            degree_cap=self.ctx.degree_cap,
            max_steps=self.ctx.max_steps,
            progress=lambda line: self.ctx.say(f"  ⚠ {line}"),
        )


def _order(args, ctx: Context) -> int:
    return int(args.order or ctx.settings["truncation_order"])


# ── commands ──────────────────────────────────────────────────


def cmd_validate(args, ctx: Context) -> tuple[int, Report]:
    S, ae = _load_algebra(args.file, ctx)
    n_max = int(args.max_arity or ctx.settings["max_arity"])
    ctx.say(f"  → checking Jacobi and cyclic identities through arity {n_max}")
    jac = check_jacobi(S, n_max)
    cyc = check_cyclic(S, ae, n_max)
    report = Report("validate", f"validate · {args.file}")
    report.put("dim", S.space.dim)
    report.put("max_arity", n_max)
    report.put("ok", jac.ok and cyc.ok)
    sec = report.section("Axioms").add("dimension", S.space.dim).add("checked arities", f"1..{n_max}")
    _add_report(report, "jacobi", jac, sec)
    _add_report(report, "cyclic", cyc, sec)
    ctx.say("  ✓ all identities hold" if jac.ok and cyc.ok else "  ⚠ violations found")
    return (0 if jac.ok and cyc.ok else 2), report


def cmd_cohomology(args, ctx: Context) -> tuple[int, Report]:
    S, _ = _load_algebra(args.file, ctx)
    H, iota, _ = cohomology(S)
    report = Report("cohomology", f"cohomology · {args.file}")
    sec = report.section("Cohomology", columns=("degree", "dim", "representatives"))
    for deg in sorted(set(S.space.degrees) | set(H.degrees)):
        names = H.names_in(deg)
        reps = "; ".join(f"{h} = {format_vector(iota.image(h), S.space)}" for h in names)
        sec.row(deg, len(names), reps or "-")
        report.put(f"H{deg}.dim", len(names))
        if names:
            report.put(f"H{deg}.basis", list(names))
    return 0, report


def cmd_transfer(args, ctx: Context) -> tuple[int, Report]:
    S, ae = _load_algebra(args.file, ctx)
    N = _order(args, ctx)
    pipe = AlgebraPipeline(S, ae, ctx)
    T = pipe.transferred(N)
    n_check = min(N, int(ctx.settings["max_arity"]) + 1)
    ctx.say(f"  → checking the transferred structure through arity {n_check}")
    checked = check_transfer(T, n_check)
    M = T.structure.space
    report = Report("transfer", f"transfer · {args.file}")
    report.put("order", N)
    report.put("check_arity", n_check)
    report.put("minimal", T.minimal)
    report.put("entries", sum(len(t) for t in T.structure.maps.values()))
    sec = report.section("Transferred structure", columns=("arity", "inputs", "value"))
    for k, inputs, out in T.structure.entries():
        value = format_vector(out, M)
        sec.row(k, ", ".join(inputs), value)
        report.put(f"nu[{','.join(inputs)}]", value)
    for (h, g), v in sorted(T.pairing.entries.items()):
        report.put(f"kappa[{h},{g}]", v)
    checks = report.section("Checks")
    _add_report(report, "transfer", checked, checks)
    if args.output:
        out_path = Path(args.output)
        if not out_path.is_absolute():
            out_path = Path(ctx.settings.get("output_dir", ".")) / out_path
        try:
            written = write_algebra(T.structure, T.pairing, out_path, comment=f"transferred from {args.file} through arity {N}")
        except OSError as exc:
            raise InputError(f"cannot write {out_path}: {exc.strerror}") from None
        ctx.say(f"  💾 wrote {written}")
        report.put("output", str(written))
    return (0 if checked.ok else 2), report


def cmd_potential(args, ctx: Context) -> tuple[int, Report]:
    S, ae = _load_algebra(args.file, ctx)
    N = _order(args, ctx)
    pipe = AlgebraPipeline(S, ae, ctx)
    f = pipe.potential(N)
    F = mc_map(pipe.transferred(N), N)
    checked = check_df_equals_F(f, F)
    report = Report("potential", f"potential · {args.file}")
    report.put("f", f)
    report.put("order", N)
    report.put("exact", f.exact)
    report.put("variables", list(f.variables))
    sec = report.section("Potential").add("f", f).add("truncation order", N).add("exact", f.exact)
    for h in f.variables:
        sec.add(f"κ({h}, F)", F.dual(h))
    _add_report(report, "df_equals_F", checked, sec)
    return (0 if checked.ok else 2), report


def cmd_milnor(args, ctx: Context) -> tuple[int, Report]:
    if _is_file_argument(args.source):
        S, ae = _load_algebra(args.source, ctx)
        md = AlgebraPipeline(S, ae, ctx).milnor(_order(args, ctx))
    else:
        f = _poly_argument(args.source, ctx)
        md = milnor_number(f, degree_cap=ctx.degree_cap, max_steps=ctx.max_steps)
    report = Report("milnor", f"milnor · {args.source}")
    report.put("mu", "inf" if not md.isolated else md.mu)
    report.put("isolated", md.isolated)
    report.put("smooth_point", md.smooth_point)
    report.put("basis", md.basis_strings())
    report.put("determinacy", md.determinacy)
    report.put("certified", md.certified)
    if md.truncation_order is not None:
        report.put("truncation_order", md.truncation_order)
    report.section("Milnor algebra") \
        .add("μ", "∞" if not md.isolated else md.mu) \
        .add("monomial basis", ", ".join(md.basis_strings()) or "-") \
        .add("determinacy bound", md.determinacy) \
        .add("smooth point", md.smooth_point)
    return 0, report


def _resolve(args, ctx: Context) -> tuple[Poly, ResolutionGraph]:
    f = _poly_argument(args.poly, ctx)
    ctx.say("  → resolving")
    g = embedded_resolution(f, max_blowups=ctx.max_blowups, extra_blowups=args.extra_blowups)
    ctx.say(f"  ✓ {len(g.divisors)} exceptional divisor(s)")
    return f, g


def cmd_resolve(args, ctx: Context) -> tuple[int, Report]:
    f, g = _resolve(args, ctx)
    report = Report("resolve", f"resolve · {f}")
    report.put("smooth", g.smooth)
    report.put("divisors", len(g.divisors))
    report.put("edges", [f"E{a}-E{b}" for a, b in g.edges])
    report.put("strict_branches", [f"{b.label}@E{b.divisor}x{b.points}" for b in g.strict_branches])
    report.put("acampo_sum", g.acampo_sum())
    sec = report.section("Exceptional divisors", columns=("E", "m", "p", "n", "k", "E·E", "χ(E°)"))
    for d in g.divisors:
        sec.row(d.label, d.m, d.p, d.n, d.k, d.self_intersection, g.chi(d.id))
        report.put(f"{d.label}.mpk", [d.m, d.p, d.k])
        report.put(f"{d.label}.self", d.self_intersection)
        report.put(f"{d.label}.chi", g.chi(d.id))
    st = report.section("Strata", columns=("I", "χ(E_I°)", "m_I", "over 0"))
    for s in strata(g):
        st.row(s.name, s.chi, s.m, s.over_origin)
    report.section("Summary") \
        .add("dual graph edges", ", ".join(f"E{a}–E{b}" for a, b in g.edges) or "-") \
        .add("Σ m_i χ(E_i°)", g.acampo_sum())
    return 0, report


def cmd_motive(args, ctx: Context) -> tuple[int, Report]:
    f, g = _resolve(args, ctx)
    st = strata(g)
    M = motivic_milnor_fiber(st)
    chi = euler_specialize(M)
    plain = unweighted_euler(st)
    report = Report("motive", f"motive · {f}")
    report.put("motive", M)
    report.put("chi_top", chi)
    sec = report.section("Motivic Milnor fiber").add("MF_0", M).add("χ_top(MF_0)", chi)
    if plain != chi:
        report.put("unweighted_euler", plain)
        sec.add("Σ m_I χ(E_I°), all I", plain)
    return 0, report


def cmd_zeta(args, ctx: Context) -> tuple[int, Report]:
    f, g = _resolve(args, ctx)
    z = monodromy_zeta(g)
    rational = str(z.as_rational()).replace("**", "^")
    report = Report("zeta", f"zeta · {f}")
    report.put("zeta", z)
    report.put("zeta.rational", rational)
    report.put("zeta.degree", z.degree)
    report.section("Monodromy zeta function") \
        .add("ζ(t)", z).add("reduced", rational).add("degree", z.degree)
    return 0, report


def _behrend_section(report: Report, bv) -> None:
    report.put("m", bv.m)
    report.put("mu", bv.mu)
    report.put("chi_fiber", bv.chi_fiber)
    report.put("nu", bv.value)
    report.put("route", bv.route)
    for route, value in bv.values.items():
        report.put(f"nu.{route}", value)
    if bv.agreement is not None:
        report.put("agreement", bv.agreement)
    for i, note in enumerate(bv.notes):
        report.put(f"note.{i + 1}", note)
    sec = report.section("Behrend value") \
        .add("ambient dimension m", bv.m).add("μ", bv.mu).add("χ(F₀)", bv.chi_fiber).add("ν(0)", bv.value)
    for route, value in bv.values.items():
        sec.add(f"{route} route", value)
    if bv.agreement is not None:
        sec.add("agreement", bv.agreement)
    for note in bv.notes:
        sec.add("note", note)


def cmd_behrend(args, ctx: Context) -> tuple[int, Report]:
    s = ctx.settings
    if _is_file_argument(args.source):
        S, ae = _load_algebra(args.source, ctx)
        pipe = AlgebraPipeline(S, ae, ctx)
        N = _order(args, ctx)
        md = pipe.milnor(N)
        bv = behrend_value(
            pipe.potential(N), args.route, milnor=md, refine=pipe.potential,
            max_blowups=ctx.max_blowups, progress=ctx.say,
        )
    else:
        f = _poly_argument(args.source, ctx)
        bv = behrend_value(
            f, args.route, degree_cap=ctx.degree_cap, max_steps=ctx.max_steps,
            max_blowups=ctx.max_blowups, cap=int(s["truncation_cap"]), progress=ctx.say,
        )
    report = Report("behrend", f"behrend · {args.source}")
    _behrend_section(report, bv)
    ctx.say(f"  ✓ ν(0) = {bv.value}")
    return 0, report


def cmd_pipeline(args, ctx: Context) -> tuple[int, Report]:
    S, ae = _load_algebra(args.file, ctx)
    n_max = int(ctx.settings["max_arity"])
    report = Report("pipeline", f"pipeline · {args.file}")

    ctx.say(f"\n🧮 Checking axioms through arity {n_max}...")
    jac = check_jacobi(S, n_max)
    cyc = check_cyclic(S, ae, n_max)
    axioms = report.section("Axioms")
    _add_report(report, "jacobi", jac, axioms)
    _add_report(report, "cyclic", cyc, axioms)
    if not (jac.ok and cyc.ok):
        ctx.say("  ⚠ the input is not a cyclic L∞ algebra; stopping")
        return 2, report

    ctx.say("\n🔁 Transferring to cohomology...")
    pipe = AlgebraPipeline(S, ae, ctx)
    N = _order(args, ctx)
    md = pipe.milnor(N)
    order = md.truncation_order or N
    f = pipe.potential(order)
    F = mc_map(pipe.transferred(order), order)
    df = check_df_equals_F(f, F)
    report.put("order", order)
    report.put("f", f)
    report.put("exact", f.exact)
    pot = report.section("Potential").add("f", f).add("truncation order", order).add("exact", f.exact)
    _add_report(report, "df_equals_F", df, pot)
    if not df.ok:
        ctx.say("  ⚠ df ≠ F; stopping")
        return 2, report
    ctx.say(f"  ✓ f = {f}")

    ctx.say("\n📐 Critical locus...")
    bv = behrend_value(f, "auto", milnor=md, refine=pipe.potential, max_blowups=ctx.max_blowups, progress=ctx.say)
    report.put("milnor_basis", md.basis_strings())
    _behrend_section(report, bv)
    ctx.say(f"  ✓ μ = {bv.mu}, ν(0) = {bv.value}")
    return 0, report


# ── entry point ───────────────────────────────────────────────


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="Print the machine section as JSON")
    common.add_argument("--vars", type=str, default=None, help="Variable order for polynomial arguments, e.g. x,y")
    common.add_argument("--config", type=str, default=None, help="Path to config file (default: config.yaml)")

    parser = _Parser(prog="cla", description="Cyclic L∞ algebras, superpotentials and their critical locus")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name, help_text, handler):
        p = sub.add_parser(name, help=help_text, parents=[common])
        p.set_defaults(handler=handler)
        return p

    p = command("validate", "Check the Jacobi and cyclic identities", cmd_validate)
    p.add_argument("file")
    p.add_argument("--max-arity", type=int, default=0)

    p = command("cohomology", "Cohomology and representatives", cmd_cohomology)
    p.add_argument("file")

    p = command("transfer", "Transferred structure on cohomology", cmd_transfer)
    p.add_argument("file")
    p.add_argument("--order", type=int, default=0)
    p.add_argument("-o", "--output", type=str, default=None)

    p = command("potential", "Superpotential and the check df = F", cmd_potential)
    p.add_argument("file")
    p.add_argument("--order", type=int, default=0)

    p = command("milnor", "Milnor number of a polynomial or an algebra's potential", cmd_milnor)
    p.add_argument("source")
    p.add_argument("--order", type=int, default=0)

    for name, help_text, handler in (
        ("resolve", "Embedded resolution of a plane curve", cmd_resolve),
        ("motive", "Motivic Milnor fiber and its Euler characteristic", cmd_motive),
        ("zeta", "Monodromy zeta function", cmd_zeta),
    ):
        p = command(name, help_text, handler)
        p.add_argument("poly")
        p.add_argument("--extra-blowups", type=int, default=0)

    p = command("behrend", "Behrend value at the origin", cmd_behrend)
    p.add_argument("source")
    p.add_argument("--route", choices=ROUTES, default="auto")
    p.add_argument("--order", type=int, default=0)

    p = command("pipeline", "Algebra → transfer → potential → Behrend value", cmd_pipeline)
    p.add_argument("file")
    p.add_argument("--order", type=int, default=0)
    return parser


def run_command(argv, out: TextIO | None = None, err: TextIO | None = None) -> tuple[int, Report | None]:
    """Run one command; returns the exit status and the report (None on error)."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(list(argv))
        if args.config and not Path(args.config).exists():
            raise InputError(f"config file {args.config} not found")
        config_path = args.config or DEFAULT_CONFIG
        ctx = Context(
            settings=load_config(config_path),
            thresholds=load_thresholds(config_path),
            err=err,
            variables=parse_variables(args.vars),
        )
        code, report = args.handler(args, ctx)
    except ToolkitError as exc:
        print(f"error: {exc}", file=err)
        return exc.exit_code, None
    out.write(render_json(report) if args.json else render_text(report))
    return code, report


def main():
    code, _ = run_command(sys.argv[1:])
    sys.exit(code)


if __name__ == "__main__":
    main()
