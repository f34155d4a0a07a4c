"""Exact linear algebra over rational matrices.

Matrices are lists of lists of ``fractions.Fraction``; nothing here is
specific to dimension 3 except the closed-form determinant/adjugate
helpers.  Elimination uses a fixed pivot order (leftmost nonzero column,
then smallest row index) so every basis this module returns is canonical:
reduced row echelon form is unique for a given row space.
"""

from __future__ import annotations

from fractions import Fraction

Matrix = list


def zeros(rows: int, cols: int):
    return [[Fraction(0)] * cols for _ in range(rows)]


def identity(n: int):
    return [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]


def copy_matrix(a):
    return [list(row) for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    out = zeros(n, m)
    for i in range(n):
        for j in range(m):
            out[i][j] = sum((a[i][t] * b[t][j] for t in range(k)), Fraction(0))
    return out


def mat_vec(a, v):
    return [sum((row[j] * v[j] for j in range(len(v))), Fraction(0)) for row in a]


def scale(a, c):
    c = Fraction(c)
    return [[c * x for x in row] for row in a]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def is_symmetric(a) -> bool:
    n = len(a)
    return all(a[i][j] == a[j][i] for i in range(n) for j in range(i + 1, n))


def is_skew(a) -> bool:
    n = len(a)
    return all(a[i][j] == -a[j][i] for i in range(n) for j in range(i, n))


def det3(a) -> Fraction:
    return (
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    )


def adjugate3(a):
    """Classical adjugate: adj(a) @ a = det(a) * I."""
    cof = zeros(3, 3)
    for i in range(3):
        for j in range(3):
            r = [k for k in range(3) if k != i]
            c = [k for k in range(3) if k != j]
            minor = a[r[0]][c[0]] * a[r[1]][c[1]] - a[r[0]][c[1]] * a[r[1]][c[0]]
            cof[i][j] = (-1) ** (i + j) * minor
    return transpose(cof)


def invert(a):
    """Inverse via Gauss-Jordan; raises ZeroDivisionError on singular input."""
    n = len(a)
    m = [list(row) + ident_row for row, ident_row in zip(a, identity(n))]
    r, pivots = _rref_inplace(m)
    if pivots != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in m]


def _rref_inplace(m):
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot_row = None
        for i in range(r, rows):
            if m[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = Fraction(1) / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return r, pivots


def rref(a):
    """Reduced row echelon form; returns (matrix, pivot column indices)."""
    m = copy_matrix(a)
    _, pivots = _rref_inplace(m)
    return m, pivots


def rank(a) -> int:
    m = copy_matrix(a)
    r, _ = _rref_inplace(m)
    return r


def nullspace(a):
    """Canonical kernel basis (one vector per free column, ascending)."""
    m, pivots = rref(a)
    cols = len(a[0]) if a else 0
    pivot_set = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * cols
        v[free] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -m[i][free]
        basis.append(v)
    return basis


def row_space_basis(rows):
    """Canonical basis of the span of the given row vectors."""
    if not rows:
        return []
    m, pivots = rref(rows)
    return [m[i] for i in range(len(pivots))]


def reduce_vector(rref_rows, pivots, v):
    """Residual of v after elimination against reduced echelon rows."""
    v = list(v)
    for row, p in zip(rref_rows, pivots):
        f = v[p]
        if f != 0:
            v = [x - f * y for x, y in zip(v, row)]
    return v


def in_row_span(rref_rows, pivots, v) -> bool:
    return all(x == 0 for x in reduce_vector(rref_rows, pivots, v))


def solve_affine(a, b):
    """Solution set of a x = b as (particular, nullity), or None if empty."""
    aug = [list(row) + [bv] for row, bv in zip(a, b)]
    m, pivots = rref(aug)
    cols = len(a[0]) if a else 0
    if cols in pivots:
        return None
    particular = [Fraction(0)] * cols
    for i, p in enumerate(pivots):
        particular[p] = m[i][cols]
    return particular, cols - len(pivots)


def congruence_diagonalize(s):
    """Invertible P with P^T s P diagonal, for symmetric s (char != 2)."""
    n = len(s)
    m = copy_matrix(s)
    p = identity(n)

    def col_op(dst, src, f):
        # column dst += f * column src, mirrored on rows to keep symmetry
        for i in range(n):
            m[i][dst] += f * m[i][src]
        for j in range(n):
            m[dst][j] += f * m[src][j]
        for i in range(n):
            p[i][dst] += f * p[i][src]

    def col_swap(i, j):
        for r in range(n):
            m[r][i], m[r][j] = m[r][j], m[r][i]
        m[i], m[j] = m[j], m[i]
        for r in range(n):
            p[r][i], p[r][j] = p[r][j], p[r][i]

    for k in range(n):
        if m[k][k] == 0:
            swap_with = next((l for l in range(k + 1, n) if m[l][l] != 0), None)
            if swap_with is not None:
                col_swap(k, swap_with)
            else:
                mix_with = next((l for l in range(k + 1, n) if m[k][l] != 0), None)
                if mix_with is None:
                    continue
                col_op(k, mix_with, Fraction(1))
        for l in range(k + 1, n):
            if m[k][l] != 0:
                col_op(l, k, -m[k][l] / m[k][k])
    return p
