"""Integer isometries of a fixed lattice."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import matmath as mm
from .errors import NotAnIsometry
from .lattice import (
    DiscriminantGroup,
    IntegerLattice,
    congruence_diagonalize,
    discriminant_group,
)

DEFAULT_ORDER_CAP = 10_000


@dataclass(frozen=True)
class Isometry:
    """An integer matrix acting on column coordinate vectors with ``A^T G A = G``.

    Build through :func:`verify_isometry`; the constructor itself does not check.
    """

    lattice: IntegerLattice
    matrix: mm.Matrix

    def __matmul__(self, other: "Isometry") -> "Isometry":
        return Isometry(self.lattice, mm.matmul(self.matrix, other.matrix))

    def __call__(self, coords):
        return mm.matvec(self.matrix, coords)

    def __neg__(self):
        return Isometry(self.lattice, mm.scale(self.matrix, -1))

    def inverse(self) -> "Isometry":
        # A^{-1} = G^{-1} A^T G, with G^{-1} = adj(G) / det(G)
        lat = self.lattice
        num = mm.matmul(mm.matmul(lat.adjugate, mm.transpose(self.matrix)), lat.gram)
        return Isometry(lat, tuple(tuple(x // lat.det for x in row) for row in num))

    def is_identity(self) -> bool:
        return self.matrix == mm.identity(self.lattice.rank)

    def to_json(self) -> dict:
        return {"lattice": self.lattice.label, "matrix": [list(r) for r in self.matrix]}


def identity_isometry(lat: IntegerLattice) -> Isometry:
    return Isometry(lat, mm.identity(lat.rank))


def verify_isometry(lat: IntegerLattice, a) -> Isometry:
    n = lat.rank
    a = mm.freeze(a)
    if len(a) != n or any(len(r) != n for r in a):
        raise NotAnIsometry(f"expected a {n}x{n} matrix")
    try:
        a = mm.to_int_matrix(a)
    except ValueError as exc:
        raise NotAnIsometry(str(exc)) from None
    pulled = mm.matmul(mm.matmul(mm.transpose(a), lat.gram), a)
    for i in range(n):
        for j in range(n):
            if pulled[i][j] != lat.gram[i][j]:
                raise NotAnIsometry(
                    f"form not preserved at ({i}, {j}): {pulled[i][j]} != {lat.gram[i][j]}",
                    witness=(i, j),
                )
    d = mm.det(a)
    assert d in (1, -1), d
    return Isometry(lat, a)


# ---------------------------------------------------------------- orientation


@dataclass(frozen=True)
class PositiveFrame:
    lattice: IntegerLattice
    basis: tuple[tuple[Fraction, ...], ...]


@lru_cache(maxsize=64)
def positive_frame(lat: IntegerLattice) -> PositiveFrame:
    """Mutually orthogonal positive vectors from the congruence diagonalization."""
    t, d = congruence_diagonalize(lat.gram)
    cols = [tuple(t[r][c] for r in range(lat.rank)) for c in range(lat.rank) if d[c] > 0]
    return PositiveFrame(lat, tuple(cols))


def orientation_sign(g: Isometry) -> int:
    """Sign of the determinant of ``g`` compressed to the positive frame.

    The frame is orthogonal, so the projection of ``g f_i`` onto it has
    coefficients ``<g f_i, f_j> / <f_j, f_j>``.  That compression is
    invertible for every isometry, which makes the sign well defined.
    """
    frame = positive_frame(g.lattice).basis
    gram = g.lattice.gram
    norms = [mm.bilinear(gram, f, f) for f in frame]
    proj = [
        [Fraction(mm.bilinear(gram, g(fi), fj)) / nj for fj, nj in zip(frame, norms)]
        for fi in frame
    ]
    d = mm.det(proj)
    assert d != 0
    return 1 if d > 0 else -1


def is_orientation_preserving(g: Isometry) -> bool:
    return orientation_sign(g) == 1


def is_two_congruence(g: Isometry) -> bool:
    n = g.lattice.rank
    return all((g.matrix[i][j] - (i == j)) % 2 == 0 for i in range(n) for j in range(n))


def in_gamma2_plus(g: Isometry) -> bool:
    return is_two_congruence(g) and is_orientation_preserving(g)


# ---------------------------------------------------------------- discriminant


@lru_cache(maxsize=64)
def _disc(lat: IntegerLattice) -> DiscriminantGroup:
    return discriminant_group(lat)


def discriminant_action(g: Isometry) -> tuple[tuple[int, ...], ...]:
    """Matrix of the induced automorphism of Λ^∨/Λ.

    Column ``j`` holds the generator-basis coordinates of ``g`` applied to
    generator ``j``; row ``i`` is reduced modulo the ``i``-th invariant factor.
    """
    disc = _disc(g.lattice)
    cols = [disc.coordinates(g(gen)) for gen in disc.generators]
    return mm.transpose(cols) if cols else ()


def compose_discriminant_actions(lat: IntegerLattice, a, b):
    """Product of two discriminant actions with rows reduced mod the factors."""
    factors = _disc(lat).invariant_factors
    prod = mm.matmul(a, b)
    return tuple(tuple(x % s for x in row) for row, s in zip(prod, factors))


def is_pm1_on_discriminant(g: Isometry) -> bool:
    disc = _disc(g.lattice)
    act = discriminant_action(g)
    k = len(disc.invariant_factors)
    for sign in (1, -1):
        target = tuple(
            tuple((sign * (i == j)) % disc.invariant_factors[i] for j in range(k)) for i in range(k)
        )
        if act == target:
            return True
    return False


# ---------------------------------------------------------------- order


def order(g: Isometry, cap: int = DEFAULT_ORDER_CAP) -> int | float:
    """Smallest k <= cap with g^k = 1, else ``math.inf``."""
    ident = mm.identity(g.lattice.rank)
    power = g.matrix
    for k in range(1, cap + 1):
        if power == ident:
            return k
        power = mm.matmul(power, g.matrix)
    return math.inf


def reflection(lat: IntegerLattice, v) -> Isometry:
    """Reflection ``x -> x - 2<x,v>/<v,v> v``; must be integral on ``lat``."""
    v = tuple(v)
    q = lat.form(v, v)
    if q == 0:
        raise ValueError("cannot reflect in an isotropic vector")
    gv = mm.matvec(lat.gram, v)
    n = lat.rank
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            x = Fraction(int(i == j)) - Fraction(2 * v[i] * gv[j], q)
            row.append(x)
        rows.append(row)
    try:
        return verify_isometry(lat, mm.to_int_matrix(rows))
    except ValueError:
        raise NotAnIsometry(f"reflection in {v} is not integral") from None
