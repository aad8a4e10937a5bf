"""Dense exact linear algebra over an ExactField.

Vectors are sequences of scalars, matrices are lists of row lists.  Shapes
with zero rows or zero columns are legal everywhere; functions that cannot
infer the column count from the data take it explicitly.  All eliminations
pick pivots in fixed column order, so results are deterministic.
"""

from __future__ import annotations

from typing import Sequence

from .fields import ExactField, Scalar

Vector = Sequence[Scalar]
Matrix = Sequence[Vector]


def zeros_vector(field: ExactField, n: int) -> list[Scalar]:
    return [field.zero] * n


def identity(field: ExactField, n: int) -> list[list[Scalar]]:
    return [
        [field.one if i == j else field.zero for j in range(n)] for i in range(n)
    ]


def vadd(field: ExactField, u: Vector, v: Vector) -> list[Scalar]:
    return [field.add(a, b) for a, b in zip(u, v)]


def vsub(field: ExactField, u: Vector, v: Vector) -> list[Scalar]:
    return [field.sub(a, b) for a, b in zip(u, v)]


def vscale(field: ExactField, c: Scalar, v: Vector) -> list[Scalar]:
    return [field.mul(c, a) for a in v]


def is_zero_vector(field: ExactField, v: Vector) -> bool:
    return all(field.is_zero(a) for a in v)


def mat_vec(field: ExactField, a: Matrix, v: Vector) -> list[Scalar]:
    out = []
    for row in a:
        acc = field.zero
        for c, x in zip(row, v):
            if not field.is_zero(c) and not field.is_zero(x):
                acc = field.add(acc, field.mul(c, x))
        out.append(acc)
    return out


def matmul(field: ExactField, a: Matrix, b: Matrix) -> list[list[Scalar]]:
    if not a:
        return []
    inner = len(a[0])
    bcols = len(b[0]) if b else 0
    out = [[field.zero] * bcols for _ in range(len(a))]
    for i, row in enumerate(a):
        for k in range(inner):
            c = row[k]
            if field.is_zero(c):
                continue
            brow = b[k]
            orow = out[i]
            for j in range(bcols):
                if not field.is_zero(brow[j]):
                    orow[j] = field.add(orow[j], field.mul(c, brow[j]))
    return out


def rref(field: ExactField, rows: Matrix) -> tuple[list[list[Scalar]], list[int]]:
    """Reduced row echelon form.  Returns (new rows, pivot column indices)."""
    m = [list(r) for r in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    pivots: list[int] = []
    r = 0
    for col in range(nc):
        pivot_row = None
        for i in range(r, nr):
            if not field.is_zero(m[i][col]):
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = field.inv(m[r][col])
        m[r] = [field.mul(inv, x) for x in m[r]]
        for i in range(nr):
            if i != r and not field.is_zero(m[i][col]):
                c = m[i][col]
                m[i] = [field.sub(x, field.mul(c, y)) for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == nr:
            break
    return m, pivots


def rank(field: ExactField, rows: Matrix) -> int:
    return len(rref(field, rows)[1])


def nullspace(field: ExactField, rows: Matrix, ncols: int) -> list[list[Scalar]]:
    """Canonical kernel basis: one vector per free column, that entry set to 1."""
    red, pivots = rref(field, rows)
    pivot_set = set(pivots)
    free = [j for j in range(ncols) if j not in pivot_set]
    basis = []
    for f in free:
        v = zeros_vector(field, ncols)
        v[f] = field.one
        for r, p in enumerate(pivots):
            v[p] = field.neg(red[r][f])
        basis.append(v)
    return basis


def solve(field: ExactField, rows: Matrix, b: Vector, ncols: int) -> list[Scalar] | None:
    """One solution of A x = b with free variables set to 0, or None."""
    aug = [list(r) + [bi] for r, bi in zip(rows, b)]
    red, pivots = rref(field, aug)
    if ncols in pivots:
        return None
    x = zeros_vector(field, ncols)
    for r, p in enumerate(pivots):
        x[p] = red[r][ncols]
    return x


def echelon_basis(field: ExactField, vectors: Matrix) -> list[list[Scalar]]:
    """Canonical (reduced row echelon) basis of the span of the given vectors."""
    if not vectors:
        return []
    red, pivots = rref(field, vectors)
    return [red[i] for i in range(len(pivots))]


def coordinates_in_span(
    field: ExactField, basis: Matrix, v: Vector
) -> list[Scalar] | None:
    """Coordinates of v in the given (independent or not) spanning vectors."""
    if not basis:
        return [] if is_zero_vector(field, v) else None
    cols = [list(row) for row in zip(*basis)]
    return solve(field, cols, v, len(basis))


def span_contains(field: ExactField, basis: Matrix, v: Vector) -> bool:
    return coordinates_in_span(field, basis, v) is not None


def inverse(field: ExactField, a: Matrix) -> list[list[Scalar]] | None:
    """Inverse of a square matrix, or None if singular."""
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("matrix is not square")
    aug = [list(r) + ident_row for r, ident_row in zip(a, identity(field, n))]
    red, pivots = rref(field, aug)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in red[:n]]


def is_invertible(field: ExactField, a: Matrix) -> bool:
    n = len(a)
    if n == 0:
        return True
    if len(a[0]) != n:
        return False
    return rank(field, a) == n
