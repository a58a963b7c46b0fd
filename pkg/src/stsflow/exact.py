"""Exact rational linear algebra on lists of Fractions."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def to_fraction_rows(matrix) -> list[list[Fraction]]:
    return [[Fraction(int(x)) if not isinstance(x, Fraction) else x for x in row] for row in matrix]


def rref(matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    rows = to_fraction_rows(matrix)
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(matrix) -> int:
    return len(rref(matrix)[1])


def nullspace(matrix, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel, one vector per free column."""
    rows, pivots = rref(matrix)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -rows[r][f]
        basis.append(v)
    return basis


def matvec(matrix, v: Sequence) -> list:
    return [sum((a * x for a, x in zip(row, v) if a), Fraction(0)) for row in matrix]


def as_int_vector(v: Sequence) -> list[int] | None:
    """Integer copy of ``v`` or ``None`` if some entry is not integral."""
    out = []
    for x in v:
        x = Fraction(x)
        if x.denominator != 1:
            return None
        out.append(x.numerator)
    return out


def format_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(s: str | int) -> Fraction:
    return Fraction(s)
