"""Finite groups of isometries and the real-isotypic split of Λ⊗Q.

Isotypic components are found as the joint primary components of the class
sums of the group acting on Λ⊗Q.  Class sums span the centre of Q[G], so
their joint primary decomposition is the decomposition by rational
characters.  When every element order m has φ(m) <= 2 (m in 1, 2, 3, 4, 6)
each real irreducible character is rational-valued, and the rational and
real isotypic decompositions agree.  Outside that regime we refuse unless
the invariant lattice already carries the whole positive part.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from sympy import QQ, Poly, Symbol, factor_list
from sympy.polys.matrices import DomainMatrix

from . import matmath as mm
from .errors import CapExceeded, UnsupportedGroupExponent
from .isometry import Isometry, identity_isometry, order, verify_isometry
from .lattice import (
    IntegerLattice,
    Signature,
    Sublattice,
    orthogonal_complement,
    signature,
    signature_of_gram,
)
from .snf import integer_kernel

DEFAULT_GROUP_CAP = 10_000
SUPPORTED_ORDERS = frozenset({1, 2, 3, 4, 6})


@dataclass(frozen=True, eq=False)
class MatrixGroup:
    lattice: IntegerLattice
    generators: tuple[Isometry, ...]
    elements: tuple[Isometry, ...]

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g: Isometry) -> bool:
        return g.matrix in self._index

    @property
    def _index(self):
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {e.matrix for e in self.elements}
            object.__setattr__(self, "_idx", idx)
        return idx

    def is_closed(self) -> bool:
        return all((a @ b).matrix in self._index for a in self.elements for b in self.elements)


def generate(lat: IntegerLattice, gens, cap: int = DEFAULT_GROUP_CAP) -> MatrixGroup:
    """Breadth-first closure of ``gens`` under right multiplication."""
    checked = []
    for g in gens:
        if isinstance(g, Isometry):
            g = verify_isometry(lat, g.matrix)
        else:
            g = verify_isometry(lat, g)
        checked.append(g)
    ident = identity_isometry(lat)
    seen = {ident.matrix: ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in checked:
            y = x @ g
            if y.matrix not in seen:
                if len(seen) >= cap:
                    raise CapExceeded(f"group has more than {cap} elements")
                seen[y.matrix] = y
                queue.append(y)
    elements = tuple(seen[k] for k in sorted(seen))
    return MatrixGroup(lat, tuple(checked), elements)


def invariant_lattice(group: MatrixGroup) -> Sublattice:
    lat = group.lattice
    n = lat.rank
    ident = mm.identity(n)
    rows = []
    for g in group.generators:
        rows.extend(mm.sub(g.matrix, ident))
    if not rows:
        return Sublattice(lat, ident, True)
    return Sublattice(lat, integer_kernel(rows), True)


def centralizes(g: Isometry, group: MatrixGroup) -> bool:
    return all((g @ h).matrix == (h @ g).matrix for h in group.generators)


# ---------------------------------------------------------------- isotypic split


@dataclass(frozen=True)
class IsotypicComponent:
    """A G-stable subspace of Λ⊗Q; basis vectors are scaled to primitive integer vectors."""

    basis: tuple[tuple[int, ...], ...]
    signature: Signature
    is_trivial_type: bool

    @property
    def dim(self) -> int:
        return len(self.basis)


def conjugacy_classes(group: MatrixGroup) -> list[list[Isometry]]:
    remaining = {e.matrix: e for e in group.elements}
    inverses = {e.matrix: e.inverse() for e in group.elements}
    classes = []
    for e in group.elements:
        if e.matrix not in remaining:
            continue
        cls = {}
        for h in group.elements:
            c = h @ e @ inverses[h.matrix]
            cls[c.matrix] = c
        for k in cls:
            remaining.pop(k, None)
        classes.append([cls[k] for k in sorted(cls)])
    return classes


def _dm(rows):
    """Integer rows as a DomainMatrix over QQ."""
    rows = [list(r) for r in rows]
    return DomainMatrix([[QQ(int(x)) for x in r] for r in rows], (len(rows), len(rows[0])), QQ)


def _restrict(op: DomainMatrix, basis: DomainMatrix) -> DomainMatrix:
    """Matrix X of ``op`` on the invariant span of the columns of ``basis`` (op B = B X)."""
    bt = basis.transpose()
    x = (bt * basis).inv() * (bt * (op * basis))
    if basis * x != op * basis:
        raise ValueError("subspace is not invariant")
    return x


def _charpoly_factors(local: DomainMatrix):
    coeffs = local.charpoly()
    x = Symbol("x")
    poly = Poly([QQ.to_sympy(c) for c in coeffs], x)
    _, factors = factor_list(poly)
    return [[QQ.from_sympy(c) for c in f.all_coeffs()] for f, _ in factors]


def _poly_eval(coeffs, mat: DomainMatrix) -> DomainMatrix:
    k = mat.shape[0]
    ident = DomainMatrix.eye(k, QQ)
    acc = DomainMatrix.zeros((k, k), QQ)
    for c in coeffs:
        acc = acc * mat + ident * c
    return acc


def _split(op: DomainMatrix, subspaces):
    """Refine each subspace (columns of a DomainMatrix) by the primary split of ``op``."""
    out = []
    for basis in subspaces:
        local = _restrict(op, basis)
        factors = _charpoly_factors(local)
        if len(factors) == 1:
            out.append(basis)
            continue
        total = 0
        for f in factors:
            ker = _poly_eval(f, local).nullspace()  # rows span the kernel
            total += ker.shape[0]
            out.append(basis * ker.transpose())
        assert total == basis.shape[1], "class sum did not act semisimply"
    return out


def _integral_columns(basis: DomainMatrix):
    cols = basis.transpose().to_list()
    return tuple(mm.clear_denominators([Fraction(int(x.numerator), int(x.denominator)) for x in c]) for c in cols)


def _check_regime(group: MatrixGroup) -> bool:
    return all(order(g) in SUPPORTED_ORDERS for g in group.elements)


def isotypic_decomposition(group: MatrixGroup, *, allow_any_exponent: bool = False) -> list[IsotypicComponent]:
    """Decompose Λ⊗Q into mutually orthogonal isotypic components.

    Components come back with the trivial type first, then in order of
    their first basis vector.
    """
    lat = group.lattice
    n = lat.rank
    if not allow_any_exponent and not _check_regime(group):
        raise UnsupportedGroupExponent(
            "element orders outside {1,2,3,4,6}: real and rational isotypic types may differ"
        )
    subspaces = [DomainMatrix.eye(n, QQ)]
    for cls in conjugacy_classes(group):
        if len(cls) == 1 and cls[0].is_identity():
            continue
        op = cls[0].matrix
        for c in cls[1:]:
            op = mm.add(op, c.matrix)
        subspaces = _split(_dm(op), subspaces)

    comps = []
    for sub in subspaces:
        basis = _integral_columns(sub)
        trivial = all(g(v) == v for g in group.generators for v in basis)
        gram = mm.congruence(lat.gram, basis)
        comps.append(IsotypicComponent(basis, signature_of_gram(gram), trivial))
    comps.sort(key=lambda c: (not c.is_trivial_type, tuple(-x for x in c.basis[0])))
    _assert_decomposition(lat, comps, group)
    return comps


def _assert_decomposition(lat, comps, group):
    assert sum(c.dim for c in comps) == lat.rank
    total = Signature(0, 0)
    for c in comps:
        total = total + c.signature
    assert total == signature(lat)
    for i, a in enumerate(comps):
        ga = mm.matmul(a.basis, lat.gram)
        for b in comps[i + 1 :]:
            assert not any(any(r) for r in mm.matmul(ga, mm.transpose(b.basis))), "components not orthogonal"
    for c in comps:
        span = _dm(mm.transpose(c.basis))
        for g in group.generators:
            _restrict(_dm(g.matrix), span)  # raises if the span is not invariant


@dataclass(frozen=True)
class IGResult:
    """The rational span I_G with its signature and how it was obtained."""

    basis: tuple[tuple[int, ...], ...]
    signature: Signature
    fast_path: bool
    components: tuple[IsotypicComponent, ...] = ()

    @property
    def dim(self) -> int:
        return len(self.basis)


def _fast_path(group: MatrixGroup) -> IGResult | None:
    inv = invariant_lattice(group)
    sig = signature_of_gram(inv.gram) if inv.basis else Signature(0, 0)
    if sig.positive == signature(group.lattice).positive:
        return IGResult(inv.basis, sig, True)
    return None


def compute_IG(group: MatrixGroup, *, prefer_fast_path: bool = True) -> IGResult:
    """Sum of the isotypic components that meet the positive directions.

    A G-invariant maximal positive subspace P splits along the components,
    and counting dimensions forces ``dim(P ∩ V_χ) = positive index of V_χ``;
    so the types occurring in P are exactly the components with a positive
    direction, whichever P is chosen.
    """
    if prefer_fast_path:
        fast = _fast_path(group)
        if fast is not None:
            return fast
    comps = isotypic_decomposition(group)
    chosen = [c for c in comps if c.signature.positive > 0]
    basis = tuple(v for c in chosen for v in c.basis)
    sig = Signature(0, 0)
    for c in chosen:
        sig = sig + c.signature
    return IGResult(basis, sig, False, tuple(comps))


@dataclass(frozen=True)
class LGResult:
    sublattice: Sublattice
    gram: tuple
    embedding: tuple  # rows: basis vectors in ambient coordinates

    @property
    def rank(self) -> int:
        return self.sublattice.rank


def compute_LG(group: MatrixGroup, ig: IGResult | None = None) -> LGResult:
    """Saturated orthogonal complement of I_G inside Λ (negative definite)."""
    if ig is None:
        ig = compute_IG(group)
    lat = group.lattice
    rows = [mm.clear_denominators(v) for v in ig.basis]
    comp = orthogonal_complement(Sublattice(lat, rows)) if rows else Sublattice(lat, mm.identity(lat.rank), True)
    gram = comp.gram
    if comp.rank:
        sig = signature_of_gram(gram)
        assert sig.positive == 0 and sig.negative == comp.rank, "L_G is not negative definite"
        for g in group.generators:
            for b in comp.basis:
                assert comp.contains(g(b)), "L_G is not G-invariant"
    return LGResult(comp, gram, comp.basis)


def trivial_rep_in_IG(group: MatrixGroup) -> bool:
    """Whether the trivial type meets the positive directions."""
    inv = invariant_lattice(group)
    if not inv.basis:
        return False
    return signature_of_gram(inv.gram).positive > 0
