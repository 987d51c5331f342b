"""Exact linear algebra over the rationals.

Matrices are tuples of row tuples of Fractions; an (m, n) matrix is a linear
map from n-space to m-space acting on column vectors.  Everything is exact;
there is no floating point anywhere in the oracle.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Mat = tuple[tuple[Fraction, ...], ...]
Vec = tuple[Fraction, ...]


def mat(rows: Iterable[Iterable]) -> Mat:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def zeros(m: int, n: int) -> Mat:
    return tuple((Fraction(0),) * n for _ in range(m))


def ident(n: int) -> Mat:
    return tuple(
        tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)
    )


def shape(a: Mat) -> tuple[int, int]:
    return (len(a), len(a[0]) if a else 0)


def is_zero(a: Mat) -> bool:
    return all(x == 0 for row in a for x in row)


def add(a: Mat, b: Mat) -> Mat:
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))


def sub(a: Mat, b: Mat) -> Mat:
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a, b))


def scal(c, a: Mat) -> Mat:
    c = Fraction(c)
    return tuple(tuple(c * x for x in row) for row in a)


def mul(a: Mat, b: Mat) -> Mat:
    """Matrix product a @ b; the composite 'b first, then a'."""
    if len(a) == 0:
        return ()
    ra, ca = shape(a)
    rb, cb = shape(b)
    if ca != rb:
        raise ValueError(f"shape mismatch in product: {shape(a)} @ {shape(b)}")
    bt = transpose(b)
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mul_shaped(a: Mat, b: Mat, rows: int, cols: int) -> Mat:
    """Product with the result shape supplied by the caller.

    A matrix with zero rows is stored as the empty tuple and forgets its
    column count, so composites through zero-dimensional spaces need the
    target shape passed in explicitly.
    """
    if rows == 0 or cols == 0 or len(a) == 0 or len(b) == 0 or len(a[0]) == 0:
        return zeros(rows, cols)
    return mul(a, b)


def apply(a: Mat, v: Vec) -> Vec:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def transpose(a: Mat) -> Mat:
    m, n = shape(a)
    return tuple(tuple(a[i][j] for i in range(m)) for j in range(n))


def hcat(*mats: Mat) -> Mat:
    rows = len(mats[0])
    return tuple(
        tuple(x for a in mats for x in (a[i] if a else ())) for i in range(rows)
    )


def vcat(*mats: Mat) -> Mat:
    return tuple(row for a in mats for row in a)


def rref(a: Mat) -> tuple[Mat, tuple[int, ...]]:
    """Reduced row echelon form and the pivot column indices."""
    m, n = shape(a)
    rows = [list(row) for row in a]
    pivots: list[int] = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = Fraction(1) / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return tuple(tuple(row) for row in rows), tuple(pivots)


def rank(a: Mat) -> int:
    if not a or not a[0]:
        return 0
    return len(rref(a)[1])


def nullspace(a: Mat) -> list[Vec]:
    """Basis of {v : a v = 0}, one vector per free column."""
    m, n = shape(a)
    if n == 0:
        return []
    if m == 0:
        return [tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)]
    r, pivots = rref(a)
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for row_idx, pc in enumerate(pivots):
            v[pc] = -r[row_idx][free]
        basis.append(tuple(v))
    return basis


def solve(a: Mat, b: Vec) -> Vec | None:
    """One solution of a x = b, or None if inconsistent."""
    m, n = shape(a)
    aug = tuple(row + (bv,) for row, bv in zip(a, b)) if m else ()
    if m == 0:
        return (Fraction(0),) * n
    r, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row_idx, pc in enumerate(pivots):
        x[pc] = r[row_idx][n]
    return tuple(x)


def solve_matrix(a: Mat, b: Mat) -> Mat | None:
    """X with a X = b (columnwise solve), or None."""
    bt = transpose(b)
    cols = []
    for col in bt:
        x = solve(a, col)
        if x is None:
            return None
        cols.append(x)
    if not cols:
        return zeros(shape(a)[1], 0)
    return transpose(tuple(cols))


def inverse(a: Mat) -> Mat | None:
    m, n = shape(a)
    if m != n:
        return None
    x = solve_matrix(a, ident(n))
    if x is None or mul(a, x) != ident(n) or mul(x, a) != ident(n):
        return None
    return x


def express_in_span(basis: Sequence[Vec], v: Vec) -> Vec | None:
    """Coordinates of v in the given spanning vectors, or None if outside."""
    if not basis:
        return () if all(x == 0 for x in v) else None
    a = transpose(tuple(basis))
    return solve(a, v)


def column_space_projector(vectors: Sequence[Vec], dim: int) -> tuple[list[Vec], Mat]:
    """Quotient of dim-space by the span: (complement labels, projection).

    Returns the standard basis vectors indexing the quotient (the non-pivot
    coordinates) and the matrix of the projection in those coordinates.
    """
    if not vectors:
        return (
            [tuple(Fraction(1 if i == j else 0) for j in range(dim)) for i in range(dim)],
            ident(dim),
        )
    r, pivots = rref(tuple(vectors))  # rref of the row space of the span
    pivot_set = set(pivots)
    free = [j for j in range(dim) if j not in pivot_set]
    proj_rows = []
    for f in free:
        # coordinate along quotient basis vector e_f of the class of each e_i:
        # pivot coordinates reduce by their rref row, free ones are kept
        row = []
        for i in range(dim):
            if i == f:
                row.append(Fraction(1))
            elif i in pivot_set:
                row.append(-r[pivots.index(i)][f])
            else:
                row.append(Fraction(0))
        proj_rows.append(tuple(row))
    basis = [tuple(Fraction(1 if i == f else 0) for i in range(dim)) for f in free]
    return basis, tuple(proj_rows)
