"""Even integer lattices and their basic invariants.

A lattice is stored as a Gram matrix in a fixed basis; vectors are integer
coordinate tuples in that basis.  Everything is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Sequence

from . import matmath as mm
from .errors import (
    AmbientMismatch,
    DegenerateLattice,
    NotEvenLattice,
    OddRank1Parameter,
    ZeroScale,
    ZeroVector,
)
from .snf import integer_kernel, saturate_rows, smith_normal_form

# Cartan matrix of E8, Bourbaki node order 1..8 with the branch node 4
# attached to 2, 3, 5.  E8(-1) is its negative.
E8_CARTAN = (
    (2, 0, -1, 0, 0, 0, 0, 0),
    (0, 2, 0, -1, 0, 0, 0, 0),
    (-1, 0, 2, -1, 0, 0, 0, 0),
    (0, -1, -1, 2, -1, 0, 0, 0),
    (0, 0, 0, -1, 2, -1, 0, 0),
    (0, 0, 0, 0, -1, 2, -1, 0),
    (0, 0, 0, 0, 0, -1, 2, -1),
    (0, 0, 0, 0, 0, 0, -1, 2),
)

U_GRAM = ((0, 1), (1, 0))


@dataclass(frozen=True)
class Signature:
    positive: int
    negative: int

    def __iter__(self):
        return iter((self.positive, self.negative))

    def __add__(self, other: "Signature") -> "Signature":
        return Signature(self.positive + other.positive, self.negative + other.negative)


@dataclass(frozen=True, eq=False)
class IntegerLattice:
    gram: tuple[tuple[int, ...], ...]
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "gram", tuple(tuple(int(x) for x in row) for row in self.gram))
        n = len(self.gram)
        if n == 0:
            raise DegenerateLattice("lattice of rank 0")
        if any(len(row) != n for row in self.gram):
            raise ValueError("Gram matrix must be square")
        if not mm.is_symmetric(self.gram):
            raise ValueError("Gram matrix must be symmetric")
        if any(self.gram[i][i] % 2 for i in range(n)):
            raise NotEvenLattice(f"{self.label or 'lattice'} has an odd diagonal entry")
        if self.det == 0:
            raise DegenerateLattice(f"{self.label or 'lattice'} is degenerate")

    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def det(self) -> int:
        return int(mm.det(self.gram))

    @cached_property
    def adjugate(self) -> tuple[tuple[int, ...], ...]:
        """``det * gram^{-1}``, an integer matrix."""
        inv = mm.inverse(self.gram)
        return mm.to_int_matrix(mm.scale(inv, self.det))

    def __eq__(self, other):
        return isinstance(other, IntegerLattice) and self.gram == other.gram

    def __hash__(self):
        return hash(self.gram)

    def __repr__(self):
        return f"IntegerLattice(label={self.label!r}, rank={self.rank})"

    def vector(self, coords: Sequence[int]) -> "LatticeVector":
        return LatticeVector(tuple(int(c) for c in coords), self)

    def basis_vector(self, i: int) -> "LatticeVector":
        return self.vector(tuple(int(i == j) for j in range(self.rank)))

    def form(self, u, v) -> int:
        return mm.bilinear(self.gram, u, v)

    def to_json(self) -> dict:
        return {"rank": self.rank, "gram": [list(r) for r in self.gram], "label": self.label}

    @classmethod
    def from_json(cls, data: dict) -> "IntegerLattice":
        lat = cls(mm.freeze(data["gram"]), data.get("label", ""))
        if "rank" in data and data["rank"] != lat.rank:
            raise ValueError("rank field does not match the Gram matrix")
        return lat


@dataclass(frozen=True)
class LatticeVector:
    coords: tuple[int, ...]
    ambient: IntegerLattice

    def __post_init__(self):
        if len(self.coords) != self.ambient.rank:
            raise AmbientMismatch(
                f"vector of length {len(self.coords)} in lattice of rank {self.ambient.rank}"
            )

    def __neg__(self):
        return LatticeVector(tuple(-c for c in self.coords), self.ambient)

    def __mul__(self, k: int):
        return LatticeVector(tuple(k * c for c in self.coords), self.ambient)

    __rmul__ = __mul__

    def __add__(self, other: "LatticeVector"):
        _same_ambient(self, other)
        return LatticeVector(tuple(a + b for a, b in zip(self.coords, other.coords)), self.ambient)

    def __sub__(self, other: "LatticeVector"):
        return self + (-other)

    def is_zero(self) -> bool:
        return not any(self.coords)

    @property
    def square(self) -> int:
        return inner(self, self)


def _same_ambient(v: LatticeVector, w: LatticeVector):
    if v.ambient is not w.ambient and v.ambient != w.ambient:
        raise AmbientMismatch("vectors live in different lattices")


# ---------------------------------------------------------------- builders


def hyperbolic_plane() -> IntegerLattice:
    return IntegerLattice(U_GRAM, "U")


def e8_negative() -> IntegerLattice:
    return IntegerLattice(mm.scale(E8_CARTAN, -1), "E8(-1)")


def rank_one(k: int) -> IntegerLattice:
    if k % 2:
        raise OddRank1Parameter(f"[{k}] is not even")
    if k == 0:
        raise DegenerateLattice("[0] is degenerate")
    return IntegerLattice(((k,),), f"[{k}]")


def rescale(lat: IntegerLattice, m: int) -> IntegerLattice:
    if m == 0:
        raise ZeroScale("cannot rescale by 0")
    return IntegerLattice(mm.scale(lat.gram, m), f"{lat.label}({m})")


def direct_sum(*lattices: IntegerLattice, label: str | None = None) -> IntegerLattice:
    if label is None:
        label = "+".join(lat.label for lat in lattices)
    return IntegerLattice(mm.block_diag(*(lat.gram for lat in lattices)), label)


def make_standard(kind: str, *args) -> IntegerLattice:
    """Named constructors: ``U``, ``E8neg``, ``rank1 k``, ``rescale L m``, ``direct_sum L1 L2 ...``."""
    builders = {
        "U": hyperbolic_plane,
        "E8neg": e8_negative,
        "rank1": rank_one,
        "rescale": rescale,
        "direct_sum": direct_sum,
    }
    try:
        return builders[kind](*args)
    except KeyError:
        raise ValueError(f"unknown lattice kind {kind!r}") from None


# ---------------------------------------------------------------- form


def inner(v: LatticeVector, w: LatticeVector) -> int:
    _same_ambient(v, w)
    return v.ambient.form(v.coords, w.coords)


def congruence_diagonalize(gram):
    """Return ``(T, d)`` with ``T^T G T = diag(d)`` over Q.

    Columns of ``T`` are the new basis.  Pivoting is deterministic: use the
    current diagonal entry; if it is zero take the first later nonzero
    diagonal entry (swap); if the whole remaining diagonal vanishes add the
    first partner column with a nonzero off-diagonal entry.  Zero rows are
    left as zero diagonal entries.
    """
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    t = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]

    def swap(i, j):
        a[i], a[j] = a[j], a[i]
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in t:
            row[i], row[j] = row[j], row[i]

    def add_to(i, j, c):
        # basis vector i += c * basis vector j
        for k in range(n):
            a[k][i] += c * a[k][j]
        for k in range(n):
            a[i][k] += c * a[j][k]
        for row in t:
            row[i] += c * row[j]

    for i in range(n):
        if a[i][i] == 0:
            j = next((j for j in range(i + 1, n) if a[j][j] != 0), None)
            if j is not None:
                swap(i, j)
            else:
                j = next((j for j in range(i + 1, n) if a[i][j] != 0), None)
                if j is None:
                    continue
                add_to(i, j, Fraction(1))
        piv = a[i][i]
        for j in range(i + 1, n):
            if a[j][i] != 0:
                add_to(j, i, -a[j][i] / piv)
    return t, [a[i][i] for i in range(n)]


def signature_of_gram(gram) -> Signature:
    if not gram:
        return Signature(0, 0)
    _, d = congruence_diagonalize(gram)
    return Signature(sum(1 for x in d if x > 0), sum(1 for x in d if x < 0))


def signature(lat: IntegerLattice) -> Signature:
    # nondegeneracy is enforced at construction
    return signature_of_gram(lat.gram)


# ---------------------------------------------------------------- discriminant


@dataclass(frozen=True)
class DiscriminantGroup:
    invariant_factors: tuple[int, ...]
    generators: tuple[tuple[Fraction, ...], ...]
    q_values: tuple[Fraction, ...]
    # Q from the Smith form of the Gram matrix; coordinates of x in the
    # generator basis are read off from Q^{-1} x.
    _qinv: tuple = field(repr=False, compare=False, default=())
    _offset: int = field(repr=False, compare=False, default=0)

    @property
    def order(self) -> int:
        out = 1
        for s in self.invariant_factors:
            out *= s
        return out

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def coordinates(self, x) -> tuple[int, ...]:
        """Coordinates of a dual vector ``x`` (rational, ambient basis) in the
        generator basis, each reduced modulo its invariant factor."""
        y = mm.matvec(self._qinv, x)
        out = []
        for k, s in enumerate(self.invariant_factors):
            c = y[self._offset + k] * s
            if Fraction(c).denominator != 1:
                raise ValueError("vector is not in the dual lattice")
            out.append(int(c) % s)
        return tuple(out)

    def bilinear_values(self, gram) -> tuple[tuple[Fraction, ...], ...]:
        """b(g_i, g_j) modulo Z."""
        return tuple(
            tuple(Fraction(mm.bilinear(gram, gi, gj)) % 1 for gj in self.generators)
            for gi in self.generators
        )


def discriminant_group(lat: IntegerLattice) -> DiscriminantGroup:
    """Λ^∨/Λ from the Smith form ``S = P G Q``: generators are ``Q e_i / s_i``."""
    s, _, q = smith_normal_form(lat.gram)
    n = lat.rank
    factors = [s[i][i] for i in range(n)]
    offset = sum(1 for f in factors if f == 1)
    gens = []
    qvals = []
    for i in range(offset, n):
        g = tuple(Fraction(q[r][i], factors[i]) for r in range(n))
        gens.append(g)
        qvals.append(Fraction(mm.bilinear(lat.gram, g, g)) % 2)
    return DiscriminantGroup(
        tuple(factors[offset:]),
        tuple(gens),
        tuple(qvals),
        _qinv=mm.inverse(q),
        _offset=offset,
    )


# ---------------------------------------------------------------- vectors


def divisibility(v: LatticeVector) -> int:
    if v.is_zero():
        raise ZeroVector("divisibility of the zero vector")
    g = 0
    for x in mm.matvec(v.ambient.gram, v.coords):
        g = gcd(g, x)
    return g


def primitive_part(v: LatticeVector) -> tuple[LatticeVector, int]:
    if v.is_zero():
        raise ZeroVector("primitive part of the zero vector")
    c = mm.vector_content(v.coords)
    return LatticeVector(tuple(x // c for x in v.coords), v.ambient), c


# ---------------------------------------------------------------- sublattices


@dataclass(frozen=True)
class Sublattice:
    ambient: IntegerLattice
    basis: tuple[tuple[int, ...], ...]
    saturated: bool = False

    def __post_init__(self):
        basis = tuple(tuple(int(x) for x in b) for b in self.basis)
        object.__setattr__(self, "basis", basis)
        if any(len(b) != self.ambient.rank for b in basis):
            raise AmbientMismatch("basis vector of the wrong length")
        if basis and mm.rank(basis) != len(basis):
            raise ValueError("sublattice basis is not linearly independent")

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def gram(self):
        return mm.congruence(self.ambient.gram, self.basis) if self.basis else ()

    def vectors(self) -> list[LatticeVector]:
        return [self.ambient.vector(b) for b in self.basis]

    def embed(self, coeffs) -> tuple[int, ...]:
        """Ambient coordinates of the vector with the given basis coefficients."""
        n = self.ambient.rank
        return tuple(sum(c * b[i] for c, b in zip(coeffs, self.basis)) for i in range(n))

    def contains(self, coords) -> bool:
        if not any(coords):
            return True
        if not self.basis:
            return False
        try:
            x = mm.solve_left(mm.transpose(self.basis), [[c] for c in coords])
        except ValueError:
            return False
        return all(Fraction(r[0]).denominator == 1 for r in x)

    def same_span(self, other: "Sublattice") -> bool:
        return (
            self.rank == other.rank
            and all(self.contains(b) for b in other.basis)
            and all(other.contains(b) for b in self.basis)
        )

    def as_lattice(self, label: str = "") -> IntegerLattice:
        return IntegerLattice(self.gram, label)


def saturate(sub: Sublattice) -> Sublattice:
    if sub.saturated:
        return sub
    return Sublattice(sub.ambient, saturate_rows(sub.basis, sub.ambient.rank), True)


def is_saturated(sub: Sublattice) -> bool:
    """Smith form check: all invariant factors of the coordinate matrix equal 1."""
    if not sub.basis:
        return True
    s, _, _ = smith_normal_form(sub.basis)
    return all(s[i][i] == 1 for i in range(sub.rank))


def orthogonal_complement(sub: Sublattice) -> Sublattice:
    lat = sub.ambient
    if not sub.basis:
        return Sublattice(lat, mm.identity(lat.rank), True)
    constraints = mm.matmul(sub.basis, lat.gram)
    return Sublattice(lat, integer_kernel(constraints), True)


def full_lattice(lat: IntegerLattice) -> Sublattice:
    return Sublattice(lat, mm.identity(lat.rank), True)


def zero_sublattice(lat: IntegerLattice) -> Sublattice:
    return Sublattice(lat, (), True)
