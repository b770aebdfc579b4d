"""Exact Gaussian elimination over the rational and Gaussian-rational rings.

Matrices are plain lists of row lists; every routine works field-exactly and
never mutates its input.
"""

from __future__ import annotations

from fractions import Fraction


def _copy(matrix):
    return [list(row) for row in matrix]


def rref(matrix):
    """Reduced row-echelon form. Returns (rows, pivot_columns)."""
    m = _copy(matrix)
    if not m:
        return m, []
    n_rows, n_cols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(n_cols):
        pivot_row = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return m, pivots


def rank(matrix) -> int:
    return len(rref(matrix)[1])


def row_space_basis(matrix):
    """Nonzero rows of the RREF: a canonical basis of the row space."""
    rows, pivots = rref(matrix)
    return rows[: len(pivots)]


def solve(matrix, rhs):
    """One exact solution of matrix @ x = rhs (free variables set to 0),
    or None when the system is inconsistent."""
    if not matrix:
        return [] if all(b == 0 for b in rhs) else None
    n_cols = len(matrix[0])
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    red, pivots = rref(aug)
    if n_cols in pivots:
        return None
    x = [Fraction(0)] * n_cols
    for r, c in enumerate(pivots):
        x[c] = red[r][-1]
    return x


def nullspace(matrix):
    """Basis of the kernel of matrix (list of column vectors)."""
    if not matrix:
        return []
    n_cols = len(matrix[0])
    red, pivots = rref(matrix)
    pivot_set = set(pivots)
    basis = []
    for free in range(n_cols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * n_cols
        v[free] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -red[r][free]
        basis.append(v)
    return basis


def is_invertible(matrix) -> bool:
    return bool(matrix) and len(matrix) == len(matrix[0]) == rank(matrix)


def coordinates_in(basis_rows, vector):
    """Coordinates of vector in the span of basis_rows, or None if outside.

    basis_rows must be linearly independent.
    """
    if not basis_rows:
        return [] if all(x == 0 for x in vector) else None
    cols = [[row[j] for row in basis_rows] for j in range(len(basis_rows[0]))]
    return solve(cols, list(vector))
