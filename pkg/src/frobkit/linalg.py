"""Exact linear algebra over the rationals with fixed pivoting.

Matrices are lists of rows of Fractions. A linear map on a basis is stored
column-wise: ``M[i][j]`` is the coefficient of ``b_i`` in the image of ``b_j``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

Matrix = List[List[Fraction]]
Vector = List[Fraction]


def zeros(r: int, c: int) -> Matrix:
    return [[Fraction(0)] * c for _ in range(r)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = zeros(len(a), cols)
    for i, row in enumerate(a):
        orow = out[i]
        for k in range(inner):
            x = row[k]
            if x:
                brow = b[k]
                for j in range(cols):
                    if brow[j]:
                        orow[j] += x * brow[j]
    return out


def matvec(a: Matrix, v: Sequence[Fraction]) -> Vector:
    return [sum((x * y for x, y in zip(row, v) if x and y), Fraction(0)) for row in a]


def matadd(a: Matrix, b: Matrix, s: Fraction = Fraction(1)) -> Matrix:
    return [[x + s * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def is_zero_matrix(a: Matrix) -> bool:
    return all(x == 0 for row in a for x in row)


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


def rref(a: Matrix) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form, pivoting on the first nonzero entry of each column."""
    m = [list(row) for row in a]
    rows = len(m)
    cols = len(m[0]) if m else 0
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        p = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: Matrix) -> int:
    if not a or not a[0]:
        return 0
    return len(rref(a)[1])


def nullspace(a: Matrix, ncols: Optional[int] = None) -> List[Vector]:
    """Basis of {x : a x = 0}, one vector per free column with that entry 1."""
    n = ncols if ncols is not None else (len(a[0]) if a else 0)
    if not a:
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    r, piv = rref(a)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, pc in zip(r, piv):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def column_space(vectors: Sequence[Vector], dim: int) -> List[Vector]:
    """Echelon basis of the span of the given vectors."""
    vecs = [list(v) for v in vectors if any(v)]
    if not vecs:
        return []
    r, piv = rref(vecs)
    return [r[i] for i in range(len(piv))]


def image_basis(op: Matrix) -> List[Vector]:
    dim = len(op)
    return column_space(transpose(op), dim)


def kernel_basis(op: Matrix) -> List[Vector]:
    return nullspace(op, len(op[0]) if op else 0)


def intersect(u: Sequence[Vector], w: Sequence[Vector], dim: int) -> List[Vector]:
    """Basis of span(u) intersected with span(w)."""
    if not u or not w:
        return []
    # solve sum a_i u_i - sum b_j w_j = 0
    cols = [list(x) for x in u] + [[-y for y in x] for x in w]
    m = transpose(cols)
    null = nullspace(m, len(cols))
    out = []
    for v in null:
        vec = [Fraction(0)] * dim
        for a, x in zip(v[: len(u)], u):
            if a:
                vec = [p + a * q for p, q in zip(vec, x)]
        out.append(vec)
    return column_space(out, dim)


def in_span(v: Sequence[Fraction], basis: Sequence[Vector]) -> bool:
    if not any(v):
        return True
    if not basis:
        return False
    return rank([list(b) for b in basis] + [list(v)]) == rank([list(b) for b in basis])


def determinant(a: Matrix) -> Fraction:
    n = len(a)
    m = [list(r) for r in a]
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return det


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    r, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in r]


class LinearSolver:
    """Deterministic minimal-support solver for ``M x = b`` with fixed matrix M.

    Row reduction of [M | I] is done once; each solve applies the stored
    transform, checks consistency and sets free variables to zero.
    """

    def __init__(self, m: Matrix, ncols: Optional[int] = None):
        self.rows = len(m)
        self.cols = ncols if ncols is not None else (len(m[0]) if m else 0)
        aug = [list(row) + [Fraction(int(i == j)) for j in range(self.rows)] for i, row in enumerate(m)]
        if not aug:
            self.transform, self.pivots, self.rank = [], [], 0
            return
        r, piv = rref(aug)
        self.pivots = [p for p in piv if p < self.cols]
        self.rank = len(self.pivots)
        self.transform = [row[self.cols:] for row in r]

    def solve(self, b: Sequence[Fraction]) -> Optional[Vector]:
        c = matvec(self.transform, b) if self.transform else []
        if any(c[i] != 0 for i in range(self.rank, self.rows)):
            return None
        x = [Fraction(0)] * self.cols
        for i, p in enumerate(self.pivots):
            x[p] = c[i]
        return x
