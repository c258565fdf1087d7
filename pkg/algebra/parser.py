"""
Text grammar for polynomials: `3/2*x^2*y - y^3`.

Parsing is delegated to sympy's expression parser with every identifier
bound to a plain Symbol, so names like `E` or `I` stay variables.
"""

from __future__ import annotations

import re
from typing import Sequence

import sympy as sp
from sympy.parsing.sympy_parser import parse_expr, standard_transformations

from .errors import InputError, StructuralError
from .poly import Poly

_ALLOWED = re.compile(r"[A-Za-z0-9_+\-*/^()\s]")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def parse_poly(text: str, variables: Sequence[str] | None = None, *, location: str | None = None) -> Poly:
    """Parse a polynomial with rational coefficients.

    Without `variables` the variable list is the sorted set of identifiers
    occurring in the text.
    """
    if text is None or not str(text).strip():
        raise InputError("empty polynomial", location)
    text = str(text)
    for ch in text:
        if not _ALLOWED.match(ch):
            raise InputError(f"unexpected character {ch!r} in polynomial {text!r}", location)

    names = sorted(set(_IDENT.findall(text)))
    if variables is None:
        variables = tuple(names)
    else:
        variables = tuple(variables)
        unknown = sorted(set(names) - set(variables))
        if unknown:
            raise InputError(f"unknown variable(s) {', '.join(unknown)} in {text!r}", location)

    local = {n: sp.Symbol(n) for n in set(names) | set(variables)}
    try:
        expr = parse_expr(
            text.replace("^", "**"),
            local_dict=local,
            transformations=standard_transformations,
            evaluate=True,
        )
    except Exception as exc:
        raise InputError(f"cannot parse polynomial {text!r}: {exc}", location) from exc

    if not isinstance(expr, sp.Expr) or expr.has(sp.Float) or expr.has(sp.zoo, sp.nan, sp.oo):
        raise InputError(f"{text!r} is not a polynomial with rational coefficients", location)
    try:
        return Poly.from_sympy(expr, variables)
    except StructuralError as exc:
        raise InputError(f"{text!r} is not a polynomial: {exc}", location) from exc


def parse_variables(text: str | None) -> tuple[str, ...] | None:
    """Comma-separated variable list, as given to `--vars`."""
    if not text:
        return None
    names = tuple(v.strip() for v in text.split(",") if v.strip())
    for name in names:
        if not _IDENT.fullmatch(name):
            raise InputError(f"invalid variable name {name!r}")
    if len(set(names)) != len(names):
        raise InputError(f"duplicate variable in {text!r}")
    return names
