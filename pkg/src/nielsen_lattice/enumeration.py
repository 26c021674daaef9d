"""Exact vector enumeration in negative-definite lattices.

Everything is done on the sign-flipped (positive-definite) Gram matrix.
``lll_reduce`` is the Gram-matrix form of LLL with exact rational
Gram-Schmidt data; ``enumerate_norm`` runs Fincke-Pohst on the reduced Gram
and maps solutions back to the input basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import floor, isqrt

from . import matmath as mm
from .errors import NodeCapExceeded, NotDefinite
from .lattice import congruence_diagonalize

DEFAULT_DELTA = Fraction(3, 4)
DEFAULT_NODE_CAP = 10**8


@dataclass(frozen=True)
class DefiniteLattice:
    """A negative-definite integer Gram matrix (rank >= 1)."""

    gram: mm.Matrix
    reduction: mm.Matrix | None = field(default=None, compare=False)

    def __post_init__(self):
        g = mm.freeze(self.gram)
        object.__setattr__(self, "gram", tuple(tuple(int(x) for x in r) for r in g))
        if not self.gram or not mm.is_symmetric(self.gram):
            raise NotDefinite("Gram matrix must be square, symmetric and nonempty")
        _, d = congruence_diagonalize(self.gram)
        if not all(x < 0 for x in d):
            raise NotDefinite("Gram matrix is not negative definite")

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def positive_gram(self) -> mm.Matrix:
        return mm.scale(self.gram, -1)

    def norm(self, v) -> int:
        return mm.bilinear(self.gram, v, v)

    def reduced(self, delta: Fraction = DEFAULT_DELTA) -> "DefiniteLattice":
        if self.reduction is not None:
            return self
        return DefiniteLattice(self.gram, lll_reduce(self, delta))


@dataclass(frozen=True)
class NormShell:
    target_square: int
    vectors: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.vectors)


def _round(x: Fraction) -> int:
    return floor(x + Fraction(1, 2))


def lll_reduce(lat: DefiniteLattice, delta: Fraction = DEFAULT_DELTA) -> mm.Matrix:
    """Unimodular ``U`` (columns = new basis) with ``U^T A U`` LLL-reduced, A = -gram."""
    delta = Fraction(delta)
    if not Fraction(1, 4) < delta <= 1:
        raise ValueError("delta must lie in (1/4, 1]")
    n = lat.rank
    h = [list(r) for r in lat.positive_gram]  # Gram of the current basis
    u = [list(r) for r in mm.identity(n)]  # u[i] = coefficients of b_i
    mu = [[Fraction(0)] * n for _ in range(n)]
    bstar = [Fraction(0)] * n
    bstar[0] = Fraction(h[0][0])

    def red(k, l):
        if abs(mu[k][l]) <= Fraction(1, 2):
            return
        q = _round(mu[k][l])
        # b_k -= q b_l
        u[k] = [a - q * b for a, b in zip(u[k], u[l])]
        for j in range(n):
            h[k][j] -= q * h[l][j]
        for j in range(n):
            h[j][k] -= q * h[j][l]
        mu[k][l] -= q
        for i in range(l):
            mu[k][i] -= q * mu[l][i]

    def gso_row(k):
        for j in range(k):
            s = Fraction(h[k][j]) - sum(mu[j][i] * mu[k][i] * bstar[i] for i in range(j))
            mu[k][j] = s / bstar[j]
        bstar[k] = h[k][k] - sum(mu[k][j] ** 2 * bstar[j] for j in range(k))

    def swap(k):
        u[k], u[k - 1] = u[k - 1], u[k]
        h[k], h[k - 1] = h[k - 1], h[k]
        for row in h:
            row[k], row[k - 1] = row[k - 1], row[k]
        for j in range(k - 1):
            mu[k][j], mu[k - 1][j] = mu[k - 1][j], mu[k][j]
        m = mu[k][k - 1]
        b = bstar[k] + m * m * bstar[k - 1]
        mu[k][k - 1] = m * bstar[k - 1] / b
        bstar[k] = bstar[k - 1] * bstar[k] / b
        bstar[k - 1] = b
        for i in range(k + 1, kmax + 1):
            t = mu[i][k]
            mu[i][k] = mu[i][k - 1] - m * t
            mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k]

    k, kmax = 1, 0
    while k < n:
        if k > kmax:
            kmax = k
            gso_row(k)
        red(k, k - 1)
        if bstar[k] < (delta - mu[k][k - 1] ** 2) * bstar[k - 1]:
            swap(k)
            k = max(1, k - 1)
        else:
            for l in range(k - 2, -1, -1):
                red(k, l)
            k += 1
    return mm.transpose(u)


def _fp_coefficients(a):
    """Fincke-Pohst form: Q(x) = sum_i q[i][i] (x_i + sum_{j>i} q[i][j] x_j)^2."""
    n = len(a)
    q = [[Fraction(x) for x in row] for row in a]
    for i in range(n):
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return q


def _ball(a, bound: int, node_cap: int):
    """All integer x with x^T A x <= bound (A positive definite), and the node count."""
    n = len(a)
    q = _fp_coefficients(a)
    diag = [q[i][i] for i in range(n)]
    x = [0] * n
    out = []
    nodes = 0

    def walk(i, remaining):
        nonlocal nodes
        nodes += 1
        if nodes > node_cap:
            raise NodeCapExceeded(f"enumeration exceeded {node_cap} nodes")
        c = sum(q[i][j] * x[j] for j in range(i + 1, n))
        # integer x_i with diag[i] (x_i + c)^2 <= remaining; widen by one and filter exactly
        r = remaining / diag[i]
        s = isqrt(floor(r)) + 1
        lo = floor(-c) - s
        hi = floor(-c) + s + 1
        for xi in range(lo, hi + 1):
            t = xi + c
            used = diag[i] * t * t
            if used > remaining:
                continue
            x[i] = xi
            if i == 0:
                out.append(tuple(x))
            else:
                walk(i - 1, remaining - used)
        x[i] = 0

    walk(n - 1, Fraction(bound))
    return out, nodes


def enumerate_norm(lat: DefiniteLattice, t: int, node_cap: int = DEFAULT_NODE_CAP) -> NormShell:
    """Every vector of square ``t`` (< 0), in the input basis, ordered by reduced coordinates."""
    if t >= 0:
        raise ValueError("target square must be negative")
    red = lat.reduced()
    u = red.reduction
    a = mm.matmul(mm.matmul(mm.transpose(u), lat.positive_gram), u)
    ball, _ = _ball(a, -t, node_cap)
    hits = sorted(y for y in ball if mm.bilinear(a, y, y) == -t)
    vectors = tuple(mm.matvec(u, y) for y in hits)
    _check_shell(lat, t, vectors)
    return NormShell(t, vectors)


def _check_shell(lat, t, vectors):
    s = set(vectors)
    assert len(s) == len(vectors), "duplicate vectors in shell"
    assert all(tuple(-x for x in v) in s for v in vectors), "shell not closed under negation"
    assert all(lat.norm(v) == t for v in vectors), "shell vector with the wrong square"


def coordinate_bound(lat: DefiniteLattice, t: int) -> int:
    """Box radius that provably contains every v with |v^T G v| <= |t|.

    For a positive-definite A and x^T A x <= C, Cauchy-Schwarz in the A
    inner product gives x_i^2 <= C (A^{-1})_{ii}.
    """
    inv = mm.inverse(lat.positive_gram)
    return max(isqrt(floor(-t * inv[i][i])) for i in range(lat.rank))


def brute_force_oracle(lat: DefiniteLattice, t: int, box: int) -> NormShell:
    """Exhaustive scan of the box [-box, box]^rank in the input basis."""
    rng = range(-box, box + 1)
    hits = tuple(v for v in product(rng, repeat=lat.rank) if lat.norm(v) == t)
    return NormShell(t, hits)


def minimal_square(lat: DefiniteLattice, node_cap: int = DEFAULT_NODE_CAP) -> int:
    """Largest square of a nonzero vector, by increasing shells."""
    step = 2 if all(x % 2 == 0 for x in (lat.gram[i][i] for i in range(lat.rank))) else 1
    bound = max(lat.gram[i][i] for i in range(lat.rank))  # a basis vector realizes this
    t = -step
    while t >= bound:
        if len(enumerate_norm(lat, t, node_cap)):
            return t
        t -= step
    return bound
