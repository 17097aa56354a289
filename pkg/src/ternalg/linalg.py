"""Exact Gaussian elimination over Q(zeta_24).

Matrices are lists of rows of :class:`CycNum`.  Pivoting takes the first
nonzero entry in the column, so results are deterministic.
"""

from __future__ import annotations

from typing import Sequence

from .scalar import ONE, ZERO, CycNum

Matrix = list[list[CycNum]]


class SingularError(ArithmeticError):
    """Raised when an inverse is requested for a singular matrix."""


def as_matrix(rows) -> Matrix:
    return [[CycNum.of(x) for x in row] for row in rows]


def rref(rows: Sequence[Sequence[CycNum]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = as_matrix(rows)
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(m)) if m[k][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c]:
                f = m[k][c]
                m[k] = [x - f * y for x, y in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def transpose(m: Sequence[Sequence[CycNum]]) -> Matrix:
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence[CycNum]], b: Sequence[Sequence[CycNum]]) -> Matrix:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), ZERO) for col in bt] for row in a]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def inverse(m: Sequence[Sequence[CycNum]]) -> Matrix:
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("inverse needs a square matrix")
    aug = [list(row) + idrow for row, idrow in zip(as_matrix(m), identity(n))]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise SingularError("matrix is singular")
    return [row[n:] for row in red]


def solve(a: Sequence[Sequence[CycNum]], b: Sequence[CycNum]) -> list[CycNum] | None:
    """One solution of a x = b, or None if the system is inconsistent."""
    ncols = len(a[0]) if a else 0
    aug = [list(row) + [CycNum.of(v)] for row, v in zip(a, b)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [ZERO] * ncols
    for row, c in zip(red, pivots):
        x[c] = row[ncols]
    return x


def nullspace(rows: Sequence[Sequence[CycNum]]) -> Matrix:
    """Basis of {x : rows @ x = 0}."""
    red, pivots = rref(rows)
    ncols = len(rows[0]) if rows else 0
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis
