"""Smith normal form over Z with unimodular transforms, and what it buys us:
integer kernels, saturation and mod-p kernels."""

from itertools import combinations
from math import gcd

from . import matmath as mm


def smith_normal_form(a):
    """Return ``(S, P, Q)`` with ``S == P @ A @ Q``.

    ``P`` and ``Q`` are unimodular, ``S`` is diagonal with non-negative
    entries ``s_1 | s_2 | ...`` (zeros last).  Works for any shape.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    s = [list(row) for row in a]
    p = [list(r) for r in mm.identity(m)]
    q = [list(r) for r in mm.identity(n)]

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        p[i], p[j] = p[j], p[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in q:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        if c:
            s[dst] = [x + c * y for x, y in zip(s[dst], s[src])]
            p[dst] = [x + c * y for x, y in zip(p[dst], p[src])]

    def add_col(dst, src, c):
        if c:
            for row in s:
                row[dst] += c * row[src]
            for row in q:
                row[dst] += c * row[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if s[i][j] and (best is None or abs(s[i][j]) < abs(s[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            clean = True
            for i in range(t + 1, m):
                if s[i][t]:
                    add_row(i, t, -(s[i][t] // s[t][t]))
                    if s[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if s[t][j]:
                    add_col(j, t, -(s[t][j] // s[t][t]))
                    if s[t][j]:
                        clean = False
            if not clean:
                # bring the smallest leftover of the pivot row/column to the pivot
                i_best = min((i for i in range(t + 1, m) if s[i][t]), key=lambda i: abs(s[i][t]), default=None)
                j_best = min((j for j in range(t + 1, n) if s[t][j]), key=lambda j: abs(s[t][j]), default=None)
                if i_best is not None and abs(s[i_best][t]) < abs(s[t][t]):
                    swap_rows(t, i_best)
                elif j_best is not None and abs(s[t][j_best]) < abs(s[t][t]):
                    swap_cols(t, j_best)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if s[i][j] % s[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            p[t] = [-x for x in p[t]]
    return mm.freeze(s), mm.freeze(p), mm.freeze(q)


def invariant_factors(a) -> list[int]:
    s, _, _ = smith_normal_form(a)
    return [s[i][i] for i in range(min(len(s), len(s[0]) if s else 0)) if s[i][i]]


def invariant_factors_by_minors(a) -> list[int]:
    """Independent oracle: d_k = gcd of k x k minors, s_k = d_k / d_{k-1}.

    Exponential in the size; only for tests on small matrices.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    out = []
    prev = 1
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                g = gcd(g, int(mm.det([[a[i][j] for j in cols] for i in rows])))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def integer_kernel(a, ncols: int | None = None) -> tuple[tuple[int, ...], ...]:
    """Rows spanning ``{x in Z^n : A x = 0}``; the span is automatically saturated."""
    if not a:
        return mm.identity(ncols)
    n = len(a[0])
    s, _, q = smith_normal_form(a)
    r = sum(1 for i in range(min(len(s), n)) if s[i][i])
    return tuple(tuple(q[i][j] for i in range(n)) for j in range(r, n))


def saturate_rows(rows, n: int) -> tuple[tuple[int, ...], ...]:
    """Basis of ``span_Q(rows) ∩ Z^n``.

    With ``S = P B Q`` the first ``rank`` rows of ``Q^{-1}`` span the same
    rational space as ``B`` and form a primitive system.
    """
    rows = [r for r in rows]
    if not rows:
        return ()
    s, _, q = smith_normal_form(rows)
    r = sum(1 for i in range(min(len(s), n)) if s[i][i])
    qinv = mm.to_int_matrix(mm.inverse(q))
    return qinv[:r]


def kernel_mod_p(a, p: int, ncols: int) -> list[tuple[int, ...]]:
    """Basis (entries in [0, p)) of ``{x in F_p^n : A x = 0}`` for prime ``p``."""
    m = [[x % p for x in row] for row in a]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    basis = []
    for f in (c for c in range(ncols) if c not in pivots):
        v = [0] * ncols
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-m[i][f]) % p
        basis.append(tuple(v))
    return basis
