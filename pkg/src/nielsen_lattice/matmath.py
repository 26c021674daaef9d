"""Small exact linear algebra over Z and Q.

Matrices are sequences of rows.  Integer results come back as tuples of
tuples so they can be hashed and shared; rational helpers use
``fractions.Fraction`` throughout.
"""

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = tuple[tuple[int, ...], ...]


def freeze(rows) -> tuple:
    return tuple(tuple(r) for r in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(m: int, n: int) -> Matrix:
    return tuple((0,) * n for _ in range(m))


def transpose(a: Sequence[Sequence]) -> tuple:
    return tuple(zip(*a)) if a else ()


def matmul(a, b) -> tuple:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(a, v) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def bilinear(gram, u, v):
    return dot(u, matvec(gram, v))


def congruence(gram, basis_rows) -> tuple:
    """Gram matrix ``B G B^T`` of the vectors given as rows of ``basis_rows``."""
    return matmul(matmul(basis_rows, gram), transpose(basis_rows))


def scale(a, c) -> tuple:
    return tuple(tuple(c * x for x in row) for row in a)


def add(a, b) -> tuple:
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))


def sub(a, b) -> tuple:
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a, b))


def block_diag(*blocks) -> Matrix:
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        k = len(b)
        for i in range(k):
            for j in range(k):
                out[off + i][off + j] = b[i][j]
        off += k
    return freeze(out)


def is_symmetric(a) -> bool:
    n = len(a)
    return all(a[i][j] == a[j][i] for i in range(n) for j in range(i + 1, n))


def to_int_matrix(a) -> Matrix:
    out = []
    for row in a:
        r = []
        for x in row:
            x = Fraction(x)
            if x.denominator != 1:
                raise ValueError(f"non-integral entry {x}")
            r.append(int(x))
        out.append(tuple(r))
    return tuple(out)


def det(a) -> int | Fraction:
    """Determinant by fraction-free Bareiss elimination (exact)."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    integral = all(isinstance(x, int) for row in m for x in row)
    if not integral:
        m = [[Fraction(x) for x in row] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num // prev if integral else num / prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def row_reduce(a):
    """Reduced row echelon form over Q.  Returns (rref rows, pivot columns)."""
    m = [[Fraction(x) for x in row] for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
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
        if r == rows:
            break
    return m, pivots


def rank(a) -> int:
    if not a:
        return 0
    return len(row_reduce(a)[1])


def nullspace(a, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of ``{x : A x = 0}`` over Q, one vector per free column."""
    if not a:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    ncols = len(a[0])
    m, pivots = row_reduce(a)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -m[i][f]
        basis.append(v)
    return basis


def inverse(a) -> tuple:
    """Inverse over Q; raises ZeroDivisionError if singular."""
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    m, pivots = row_reduce(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(row[n:]) for row in m)


def solve_left(basis_cols, targets_cols):
    """Coordinates X with ``B X = T`` for a full-column-rank B (exact solution required)."""
    b = [list(r) for r in basis_cols]
    k = len(b[0]) if b else 0
    t = [list(r) for r in targets_cols]
    aug = [row_b + row_t for row_b, row_t in zip(b, t)]
    m, pivots = row_reduce(aug)
    if pivots[:k] != list(range(k)):
        raise ValueError("basis is not of full column rank")
    for row in m[k:]:
        if any(x != 0 for x in row[k:]):
            raise ValueError("targets not in the column span")
    return [row[k:] for row in m[:k]]


def clear_denominators(v) -> tuple[int, ...]:
    """Smallest integer vector on the same ray as the rational vector ``v``."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints)


def vector_content(v) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g
