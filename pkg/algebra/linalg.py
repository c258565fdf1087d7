"""
Exact linear algebra over ℚ.

Vectors are lists of Fractions; sympy matrices with Rational entries do
the elimination. Empty shapes are handled here because sympy's behaviour
on 0-row or 0-column matrices varies between releases.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import sympy as sp

from .errors import StructuralError
from .poly import to_fraction

Vec = list[Fraction]


def _rat(value) -> sp.Rational:
    value = Fraction(value)
    return sp.Rational(value.numerator, value.denominator)


def to_matrix(rows: Sequence[Sequence], ncols: int | None = None) -> sp.Matrix:
    nrows = len(rows)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if nrows == 0 or ncols == 0:
        return sp.zeros(nrows, ncols)
    return sp.Matrix(nrows, ncols, [_rat(v) for row in rows for v in row])


def unit_vectors(dim: int) -> list[Vec]:
    return [[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)]


def rank(vectors: Sequence[Sequence], dim: int) -> int:
    if not vectors or dim == 0:
        return 0
    return to_matrix(vectors, dim).rank()


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Vec]:
    """Basis of {v : rows·v = 0}, in sympy's first-pivot order."""
    if ncols == 0:
        return []
    if not rows:
        return unit_vectors(ncols)
    return [[to_fraction(v) for v in col] for col in to_matrix(rows, ncols).nullspace()]


def extend_basis(base: Sequence[Sequence], candidates: Sequence[Sequence], dim: int) -> list[Vec]:
    """Greedily pick candidates that raise the rank of `base`."""
    chosen: list[Vec] = []
    current = [list(v) for v in base]
    r = rank(current, dim)
    for c in candidates:
        trial = current + [list(c)]
        r2 = rank(trial, dim)
        if r2 > r:
            chosen.append([Fraction(x) for x in c])
            current, r = trial, r2
    return chosen


def independent_subset(vectors: Sequence[Sequence], dim: int) -> list[Vec]:
    return extend_basis([], vectors, dim)


def is_invertible(rows: Sequence[Sequence]) -> bool:
    n = len(rows)
    if any(len(r) != n for r in rows):
        return False
    return n == 0 or to_matrix(rows, n).rank() == n


def inverse(rows: Sequence[Sequence]) -> list[Vec]:
    n = len(rows)
    if n == 0:
        return []
    if not is_invertible(rows):
        raise StructuralError(f"{n}x{n} matrix is singular")
    inv = to_matrix(rows, n).inv()
    return [[to_fraction(inv[i, j]) for j in range(n)] for i in range(n)]


def columns_matrix(vectors: Sequence[Sequence]) -> list[Vec]:
    """Square matrix whose columns are `vectors`."""
    n = len(vectors)
    return [[Fraction(vectors[c][r]) for c in range(n)] for r in range(n)]


def solve_square(rows: Sequence[Sequence], rhs: Sequence) -> Vec:
    inv = inverse(rows)
    return [sum((a * Fraction(b) for a, b in zip(row, rhs)), Fraction(0)) for row in inv]


def solve(columns: Sequence[Sequence], target: Sequence, dim: int) -> Vec | None:
    """Coefficients c with Σ c_k·columns[k] = target, or None if inconsistent."""
    if not columns:
        return [] if all(Fraction(t) == 0 for t in target) else None
    A = to_matrix(columns, dim).T
    b = to_matrix([target], dim).T
    try:
        sol, params = A.gauss_jordan_solve(b)
    except ValueError:
        return None
    if params.shape[0]:
        sol = sol.subs({p: 0 for p in params})
    return [to_fraction(v) for v in sol]
