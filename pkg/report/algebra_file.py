"""
AlgebraFile: a YAML document describing a cyclic L∞ algebra.

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

Rationals are integers or `p/q` strings; floats are rejected. Diagnostics
carry `file:line:col` taken from the YAML node marks.
"""

from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path

import yaml

from algebra.errors import InputError, StructuralError
from algebra.poly import format_rational
from linfty.graded import GradedSpace
from linfty.structure import CyclicPairing, LInftyStructure, canonical_order, repeats_even

TOP_KEYS = ("dimension", "degrees", "mu", "kappa")
MU_KEYS = ("arity", "inputs", "output")
KAPPA_KEYS = ("pair", "value")
RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


class _Doc:
    """Location helper bound to one file."""

    def __init__(self, name: str):
        self.name = name

    def where(self, node) -> str:
        mark = node.start_mark
        return f"{self.name}:{mark.line + 1}:{mark.column + 1}"

    def fail(self, node, message: str) -> InputError:
        return InputError(message, location=self.where(node))

    def mapping(self, node, allowed, what: str) -> dict[str, tuple]:
        if not isinstance(node, yaml.MappingNode):
            raise self.fail(node, f"{what} must be a mapping")
        out: dict[str, tuple] = {}
        for key, value in node.value:
            if not isinstance(key, yaml.ScalarNode):
                raise self.fail(key, f"{what} keys must be scalars")
            if allowed is not None and key.value not in allowed:
                raise self.fail(key, f"unknown key {key.value!r} in {what}; expected one of {', '.join(allowed)}")
            if key.value in out:
                raise self.fail(key, f"duplicate key {key.value!r} in {what}")
            out[key.value] = (key, value)
        return out

    def sequence(self, node, what: str) -> list:
        if not isinstance(node, yaml.SequenceNode):
            raise self.fail(node, f"{what} must be a list")
        return list(node.value)

    def scalar(self, node, what: str) -> str:
        if not isinstance(node, yaml.ScalarNode):
            raise self.fail(node, f"{what} must be a scalar")
        return node.value

    def integer(self, node, what: str) -> int:
        text = self.scalar(node, what)
        if not re.match(r"^[+-]?\d+$", text):
            raise self.fail(node, f"{what} must be an integer, got {text!r}")
        return int(text)

    def rational(self, node, what: str) -> Fraction:
        text = self.scalar(node, what).strip()
        if not RATIONAL.match(text):
            raise self.fail(node, f"malformed rational {text!r} in {what}; use an integer or p/q")
        try:
            return Fraction(text)
        except ZeroDivisionError:
            raise self.fail(node, f"zero denominator in {text!r}") from None


def _parse_degrees(doc: _Doc, node) -> GradedSpace:
    components: dict[int, list[str]] = {}
    seen: dict[str, str] = {}
    if isinstance(node, yaml.ScalarNode) and node.value in ("", "~", "null"):
        return GradedSpace({})
    for text, (key, value) in doc.mapping(node, None, "degrees").items():
        deg = doc.integer(key, "degree")
        names = []
        for item in doc.sequence(value, f"degree {deg}"):
            name = doc.scalar(item, "basis name")
            if name in seen:
                raise doc.fail(item, f"duplicate basis name {name!r} (first at {seen[name]})")
            seen[name] = doc.where(item)
            names.append(name)
        components[deg] = names
    return GradedSpace(components)


def _parse_mu(doc: _Doc, node, space: GradedSpace) -> LInftyStructure:
    entries = []
    keys_seen: dict[tuple[str, ...], str] = {}
    for item in doc.sequence(node, "mu"):
        fields = doc.mapping(item, MU_KEYS, "mu entry")
        missing = [k for k in MU_KEYS if k not in fields]
        if missing:
            raise doc.fail(item, f"mu entry is missing {', '.join(missing)}")
        k = doc.integer(fields["arity"][1], "arity")
        inputs_node = fields["inputs"][1]
        inputs = tuple(doc.scalar(n, "input") for n in doc.sequence(inputs_node, "inputs"))
        if len(inputs) != k or k < 1:
            raise doc.fail(inputs_node, f"arity {k} with {len(inputs)} inputs")
        for n, name in zip(inputs_node.value, inputs):
            if name not in space:
                raise doc.fail(n, f"unknown basis name {name!r}")
        key, _ = canonical_order(space, inputs)
        if key in keys_seen:
            raise doc.fail(inputs_node, f"duplicate mu entry for {key} (first at {keys_seen[key]})")
        keys_seen[key] = doc.where(inputs_node)
        expected = sum(space.degree(n) for n in inputs) + 2 - k
        output = {}
        for name, (key_node, value_node) in doc.mapping(fields["output"][1], None, "output").items():
            if name not in space:
                raise doc.fail(key_node, f"unknown basis name {name!r}")
            if space.degree(name) != expected:
                raise doc.fail(
                    key_node,
                    f"μ_{k}{inputs} output {name!r} has degree {space.degree(name)}, expected {expected}",
                )
            output[name] = doc.rational(value_node, f"output {name}")
        if any(output.values()) and repeats_even(space, inputs):
            raise doc.fail(inputs_node, f"μ_{k}{inputs} repeats an even element and must vanish")
        entries.append((inputs, output))
    try:
        return LInftyStructure.from_entries(space, entries)
    except StructuralError as exc:
        raise doc.fail(node, str(exc)) from None


def _parse_kappa(doc: _Doc, node, space: GradedSpace, dimension: int) -> CyclicPairing:
    entries = {}
    for item in doc.sequence(node, "kappa"):
        fields = doc.mapping(item, KAPPA_KEYS, "kappa entry")
        if "pair" not in fields or "value" not in fields:
            raise doc.fail(item, "kappa entry needs pair and value")
        pair_node = fields["pair"][1]
        pair = tuple(doc.scalar(n, "pair element") for n in doc.sequence(pair_node, "pair"))
        if len(pair) != 2:
            raise doc.fail(pair_node, f"pair must have 2 elements, got {len(pair)}")
        for n, name in zip(pair_node.value, pair):
            if name not in space:
                raise doc.fail(n, f"unknown basis name {name!r}")
        if pair in entries or pair[::-1] in entries:
            raise doc.fail(pair_node, f"duplicate kappa entry for {pair}")
        entries[pair] = doc.rational(fields["value"][1], "kappa value")
    return CyclicPairing(space, entries, dimension)


def parse_algebra_text(text: str, name: str = "<string>") -> tuple[LInftyStructure, CyclicPairing]:
    doc = _Doc(name)
    try:
        root = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f"{name}:{mark.line + 1}:{mark.column + 1}" if mark else name
        raise InputError(f"not a YAML document: {getattr(exc, 'problem', exc)}", location=where) from None
    if root is None:
        raise InputError("empty algebra file", location=name)
    fields = doc.mapping(root, TOP_KEYS, "algebra file")
    dimension = 3
    if "dimension" in fields:
        dimension = doc.integer(fields["dimension"][1], "dimension")
        if dimension != 3:
            raise doc.fail(fields["dimension"][1], f"pairing dimension must be 3, got {dimension}")
    if "degrees" not in fields:
        raise doc.fail(root, "algebra file needs a degrees section")
    space = _parse_degrees(doc, fields["degrees"][1])
    S = _parse_mu(doc, fields["mu"][1], space) if "mu" in fields else LInftyStructure(space, {})
    ae = _parse_kappa(doc, fields["kappa"][1], space, dimension) if "kappa" in fields else CyclicPairing(space, {}, dimension)
    return S, ae


def parse_algebra(path) -> tuple[LInftyStructure, CyclicPairing]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_algebra_text(text, str(path))


def algebra_document(S: LInftyStructure, ae: CyclicPairing) -> dict:
    space = S.space
    return {
        "dimension": ae.dimension,
        "degrees": {deg: list(names) for deg, names in space.components.items()},
        "mu": [
            {
                "arity": k,
                "inputs": list(inputs),
                "output": {n: format_rational(c) for n, c in sorted(out.items(), key=lambda kv: space.index(kv[0]))},
            }
            for k, inputs, out in S.entries()
        ],
        "kappa": [
            {"pair": [a, b], "value": format_rational(v)}
            for (a, b), v in sorted(ae.entries.items(), key=lambda kv: (space.index(kv[0][0]), space.index(kv[0][1])))
        ],
    }


def write_algebra(S: LInftyStructure, ae: CyclicPairing, path, comment: str | None = None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    body = yaml.safe_dump(algebra_document(S, ae), sort_keys=False, allow_unicode=True, default_flow_style=None)
    header = "".join(f"# {line}\n" for line in comment.splitlines()) if comment else ""
    path.write_text(header + body, encoding="utf-8")
    return path
