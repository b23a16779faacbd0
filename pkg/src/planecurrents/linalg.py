"""Exact linear algebra over the rationals.

Rank uses fraction-free (Bareiss-style) elimination on integer-scaled rows,
which keeps intermediate entries as matrix minors instead of letting
numerators and denominators grow multiplicatively. Nullspace extraction
uses plain Gauss-Jordan over `Fraction`, which is simpler and only runs on
tiny matrices (at most six columns here).
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import SingularMatrix

Row = Sequence[Fraction | int]


def _integer_rows(rows: Sequence[Row]) -> list[list[int]]:
    scaled = []
    for row in rows:
        fracs = [Fraction(x) for x in row]
        denom = 1
        for f in fracs:
            denom = lcm(denom, f.denominator)
        scaled.append([int(f * denom) for f in fracs])
    return scaled


def rank(rows: Sequence[Row]) -> int:
    """Exact rank of a rational matrix (rows of equal length)."""
    m = _integer_rows(rows)
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    prev = 1
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        for i in range(r + 1, len(m)):
            for j in range(c + 1, ncols):
                # exact by the Sylvester identity: entries stay minors
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = m[r][c]
        r += 1
        if r == len(m):
            break
    return r


def rref(rows: Sequence[Row], ncols: int) -> tuple[list[int], list[list[Fraction]]]:
    """Reduced row echelon form; returns (pivot columns, reduced rows)."""
    m = [[Fraction(x) for x in row] for row in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return pivots, m[:r]


def nullspace(rows: Sequence[Row], ncols: int) -> list[tuple[Fraction, ...]]:
    """Basis of the right nullspace, one vector per free column (ascending)."""
    pivots, reduced = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for r, c in enumerate(pivots):
            vec[c] = -reduced[r][f]
        basis.append(tuple(vec))
    return basis


Mat3 = tuple[tuple[Fraction, ...], ...]


def as_mat3(rows) -> Mat3:
    m = tuple(tuple(Fraction(x) for x in row) for row in rows)
    if len(m) != 3 or any(len(r) != 3 for r in m):
        raise ValueError("expected a 3x3 matrix")
    return m


def det3(m: Mat3) -> Fraction:
    (a, b, c), (d, e, f), (g, h, i) = m
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def inv3(m: Mat3) -> Mat3:
    d = det3(m)
    if d == 0:
        raise SingularMatrix("matrix is not invertible")
    (a, b, c), (e, f, g), (h, i, j) = m
    cof = (
        (f * j - g * i, c * i - b * j, b * g - c * f),
        (g * h - e * j, a * j - c * h, c * e - a * g),
        (e * i - f * h, b * h - a * i, a * f - b * e),
    )
    return tuple(tuple(x / d for x in row) for row in cof)


def matmul3(a: Mat3, b: Mat3) -> Mat3:
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3))
        for i in range(3)
    )


def matvec3(m: Mat3, v: Sequence[Fraction]) -> tuple[Fraction, Fraction, Fraction]:
    return tuple(sum(m[i][k] * v[k] for k in range(3)) for i in range(3))


def transpose3(m: Mat3) -> Mat3:
    return tuple(tuple(m[j][i] for j in range(3)) for i in range(3))
