"""
Command reports: human sections followed by a machine block.

The machine block is `key = value` lines sorted by key; `--json` prints the
same pairs as a JSON object. Values are strings, so rationals stay `p/q`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from algebra.poly import format_rational

BANNER = "=" * 60
MACHINE_HEADER = "[machine]"


def machine_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return format_rational(value)
    if value is None:
        return "none"
    if isinstance(value, (list, tuple)):
        return ", ".join(machine_value(v) for v in value)
    return str(value)


@dataclass
class Section:
    heading: str
    fields: list[tuple[str, str]] = field(default_factory=list)
    columns: tuple[str, ...] = ()
    rows: list[tuple[str, ...]] = field(default_factory=list)

    def add(self, label: str, value) -> "Section":
        self.fields.append((label, machine_value(value)))
        return self

    def row(self, *cells) -> "Section":
        self.rows.append(tuple(machine_value(c) for c in cells))
        return self


@dataclass
class Report:
    command: str
    title: str = ""
    machine: dict[str, str] = field(default_factory=dict)
    sections: list[Section] = field(default_factory=list)

    def put(self, key: str, value) -> None:
        self.machine[key] = machine_value(value)

    def section(self, heading: str, columns: tuple[str, ...] = ()) -> Section:
        s = Section(heading, columns=columns)
        self.sections.append(s)
        return s


def _table(s: Section) -> list[str]:
    widths = [len(c) for c in s.columns]
    for r in s.rows:
        for i, cell in enumerate(r):
            widths[i] = max(widths[i], len(cell))

    def fmt(cells):
        return "  " + "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()

    return [fmt(s.columns), "  " + "  ".join("-" * w for w in widths)] + [fmt(r) for r in s.rows]


def render_text(report: Report) -> str:
    lines = [BANNER, f"  {report.title or report.command}", BANNER]
    for s in report.sections:
        lines += ["", s.heading]
        if s.fields:
            width = max(len(label) for label, _ in s.fields)
            lines += [f"  {label.ljust(width)} : {value}" for label, value in s.fields]
        if s.columns:
            lines += _table(s)
    lines += ["", MACHINE_HEADER]
    lines += [f"{k} = {v}" for k, v in sorted(report.machine.items())]
    return "\n".join(lines) + "\n"


def render_json(report: Report) -> str:
    return json.dumps(dict(sorted(report.machine.items())), indent=2, ensure_ascii=False) + "\n"


def parse_machine(text: str) -> dict[str, str]:
    """Read back the machine block of a text report, or a JSON report."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return {str(k): str(v) for k, v in json.loads(stripped).items()}
    out: dict[str, str] = {}
    inside = False
    for line in text.splitlines():
        if line.strip() == MACHINE_HEADER:
            inside = True
            continue
        if inside and " = " in line:
            key, value = line.split(" = ", 1)
            out[key] = value
    return out
