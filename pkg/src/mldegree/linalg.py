"""Small exact linear algebra: field matrices and polynomial minors."""

from __future__ import annotations

from itertools import combinations

from .fields import Field
from .polynomial import Polynomial


def rref(rows, field: Field):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    m = [[field(x) for x in r] for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.inv(m[r][col])
        m[r] = [field(x * inv) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                c = m[i][col]
                m[i] = [field(a - c * b) for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, field: Field) -> int:
    return len(rref(rows, field)[1])


def nullspace(rows, field: Field, ncols: int | None = None):
    """Basis of {v : rows . v = 0}."""
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return [[field(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref(rows, field)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for fcol in free:
        v = [field(0)] * ncols
        v[fcol] = field(1)
        for r, pc in enumerate(pivots):
            v[pc] = field(-red[r][fcol])
        basis.append(v)
    return basis


def determinant(matrix, field: Field):
    m = [[field(x) for x in r] for r in matrix]
    n = len(m)
    det = field(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col]), None)
        if piv is None:
            return field(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = field(-det)
        det = field(det * m[col][col])
        inv = field.inv(m[col][col])
        for i in range(col + 1, n):
            if m[i][col]:
                c = field(m[i][col] * inv)
                m[i] = [field(a - c * b) for a, b in zip(m[i], m[col])]
    return det


def solve_affine(rows, rhs, field: Field):
    """Parametrize {x : rows . x = rhs} as (x0, basis); None if inconsistent."""
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, field)
    if ncols in pivots:
        return None
    x0 = [field(0)] * ncols
    for r, pc in enumerate(pivots):
        x0[pc] = red[r][ncols]
    basis = nullspace([r[:ncols] for r in red], field, ncols) if red else nullspace([], field, ncols)
    return x0, basis


def poly_minors(matrix: list[list[Polynomial]], k: int) -> list[Polynomial]:
    """All k x k minors of a matrix of polynomials (Laplace expansion, memoized)."""
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    if k == 0:
        return [matrix[0][0].ring.one()] if nrows else []
    if k > nrows or k > ncols:
        return []
    memo: dict = {}

    def minor(rows: tuple, cols: tuple) -> Polynomial:
        key = (rows, cols)
        if key in memo:
            return memo[key]
        if len(rows) == 1:
            val = matrix[rows[0]][cols[0]]
        else:
            r0, rest = rows[0], rows[1:]
            val = None
            for j, c in enumerate(cols):
                a = matrix[r0][c]
                if not a:
                    continue
                sub = minor(rest, cols[:j] + cols[j + 1:])
                if not sub:
                    continue
                term = a * sub
                if j % 2:
                    term = -term
                val = term if val is None else val + term
            if val is None:
                val = matrix[r0][cols[0]].ring.zero()
        memo[key] = val
        return val

    out = []
    for rows in combinations(range(nrows), k):
        for cols in combinations(range(ncols), k):
            out.append(minor(rows, cols))
    return out


def poly_det(matrix: list[list[Polynomial]]) -> Polynomial:
    return poly_minors(matrix, len(matrix))[0]
