"""Exact dense linear algebra over the Gaussian rationals.

Matrices are plain ``list[list[GQ]]`` (row-major); vectors are ``list[GQ]``.
Everything here is exact Gaussian elimination -- no floating point anywhere.
"""

from __future__ import annotations

from typing import List, Optional, Sequence

from .rationals import GQ, ONE, ZERO

Matrix = List[List[GQ]]
Vector = List[GQ]


def zeros(n: int, m: int) -> Matrix:
    """An n x m zero matrix."""
    return [[ZERO for _ in range(m)] for _ in range(n)]


def identity(n: int) -> Matrix:
    """The n x n identity matrix."""
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def mat_from_rows(rows: Sequence[Sequence[object]]) -> Matrix:
    """Build a matrix from rows of ints/Fractions/GQs."""
    return [[GQ.of(x) for x in row] for row in rows]  # type: ignore[arg-type]


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_neg(a: Matrix) -> Matrix:
    return [[-x for x in row] for row in a]


def mat_scale(s: GQ, a: Matrix) -> Matrix:
    return [[s * x for x in row] for row in a]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    """Matrix product a @ b."""
    if a and b and len(a[0]) != len(b):
        raise ValueError("dimension mismatch")
    bt = list(zip(*b))
    out: Matrix = []
    for row in a:
        out.append([sum((x * y for x, y in zip(row, col) if x and y), ZERO) for col in bt])
    return out


def mat_vec(a: Matrix, v: Vector) -> Vector:
    """Matrix-vector product a @ v."""
    if a and len(a[0]) != len(v):
        raise ValueError("dimension mismatch")
    return [sum((x * y for x, y in zip(row, v) if x and y), ZERO) for row in a]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def mat_eq(a: Matrix, b: Matrix) -> bool:
    return len(a) == len(b) and all(ra == rb for ra, rb in zip(a, b))


def _echelon(m: Matrix) -> tuple[Matrix, List[int]]:
    """Row-reduce a copy of m; return (reduced rows, pivot column list)."""
    a = [row[:] for row in m]
    n_rows = len(a)
    n_cols = len(a[0]) if a else 0
    pivots: List[int] = []
    r = 0
    for c in range(n_cols):
        pivot_row = next((i for i in range(r, n_rows) if a[i][c]), None)
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        inv = ONE / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(n_rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return a, pivots


def rank(m: Matrix) -> int:
    """Rank of m over the Gaussian rationals."""
    if not m:
        return 0
    return len(_echelon(m)[1])


def solve(a: Matrix, b: Vector) -> Optional[Vector]:
    """One exact solution x of a @ x = b, or None if the system is inconsistent."""
    n_rows = len(a)
    if len(b) != n_rows:
        raise ValueError("dimension mismatch")
    n_cols = len(a[0]) if a else 0
    aug = [row[:] + [b[i]] for i, row in enumerate(a)]
    red, pivots = _echelon(aug)
    if n_cols in pivots:
        return None
    x = [ZERO] * n_cols
    for r, c in enumerate(pivots):
        x[c] = red[r][n_cols]
    return x


def nullspace(a: Matrix) -> List[Vector]:
    """A basis of the right nullspace of a, one vector per free column."""
    if not a:
        return []
    n_cols = len(a[0])
    red, pivots = _echelon(a)
    pivot_set = set(pivots)
    basis: List[Vector] = []
    for free in range(n_cols):
        if free in pivot_set:
            continue
        v = [ZERO] * n_cols
        v[free] = ONE
        for r, c in enumerate(pivots):
            v[c] = -red[r][free]
        basis.append(v)
    return basis


def inverse(a: Matrix) -> Matrix:
    """Exact inverse of a square matrix; raises ValueError if singular."""
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix is not square")
    aug = [row[:] + identity(n)[i] for i, row in enumerate(a)]
    red, pivots = _echelon(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]
