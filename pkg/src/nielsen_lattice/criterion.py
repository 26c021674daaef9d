"""The realizability test for finite groups of mapping classes of an Enriques
manifold, decided on H^2 of the hyper-Kähler cover.

Pipeline for a group G on Λ_Y (or already lifted to Λ_X):

1. lift to Λ_X and adjoin the deck group D;
2. the lift must act by ±1 on the discriminant group (K3^[n] type);
3. the trivial representation must meet the positive directions;
4. L_G must avoid wall classes: no (-2)-vector of divisibility 1, and no
   indivisible class of divisibility != 1.  The second condition is decided
   prime by prime through K_p = {v in L_G : <v, Λ> ⊆ pZ}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from sympy import primefactors

from . import matmath as mm
from .enriques import (
    K3N,
    EnriquesSetup,
    extend_from_lambda_y,
    is_wall_class,
    nikulin_extend,
)
from .enumeration import DEFAULT_NODE_CAP, DefiniteLattice, enumerate_norm, minimal_square
from .errors import NotCentralizing, NotDividing, NotOrientationPreserving, UnsupportedFamily
from .groups import (
    DEFAULT_GROUP_CAP,
    MatrixGroup,
    compute_IG,
    compute_LG,
    generate,
    invariant_lattice,
    trivial_rep_in_IG,
)
from .isometry import Isometry, discriminant_action, is_orientation_preserving, is_pm1_on_discriminant, verify_isometry
from .lattice import discriminant_group, divisibility, primitive_part, signature_of_gram
from .snf import kernel_mod_p

MODES = ("direct", "gamma2m", "lambday")
KAEHLER_EINSTEIN = "Kähler–Einstein"


@dataclass(frozen=True)
class GroupSpec:
    mode: str
    generators: tuple[mm.Matrix, ...] = ()
    cap: int = DEFAULT_GROUP_CAP

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        object.__setattr__(self, "generators", tuple(mm.freeze(g) for g in self.generators))

    @classmethod
    def from_json(cls, data: dict) -> "GroupSpec":
        return cls(data["mode"], tuple(data.get("generators", ())), int(data.get("cap", DEFAULT_GROUP_CAP)))

    def to_json(self) -> dict:
        return {"mode": self.mode, "generators": [[list(r) for r in g] for g in self.generators], "cap": self.cap}


# ---------------------------------------------------------------- certificates


@dataclass(frozen=True)
class WallWitness:
    vector: tuple[int, ...]
    square: int
    divisibility: int
    source: str  # "(-2)-shell", "K_p", or "shell"

    def to_json(self):
        return {
            "kind": "WallWitness",
            "coords": list(self.vector),
            "square": self.square,
            "divisibility": self.divisibility,
            "found_by": self.source,
        }


@dataclass(frozen=True)
class NoTrivialRep:
    invariant_rank: int
    invariant_signature: tuple[int, int]

    def to_json(self):
        return {
            "kind": "NoTrivialRep",
            "invariant_rank": self.invariant_rank,
            "invariant_signature": list(self.invariant_signature),
        }


@dataclass(frozen=True)
class ComponentObstruction:
    element_index: int
    element: mm.Matrix
    discriminant_action: mm.Matrix

    def to_json(self):
        return {
            "kind": "ComponentObstruction",
            "element_index": self.element_index,
            "element": [list(r) for r in self.element],
            "discriminant_action": [list(r) for r in self.discriminant_action],
        }


@dataclass(frozen=True)
class Realized:
    ig_basis: tuple[tuple[int, ...], ...]
    ig_signature: tuple[int, int]
    ig_fast_path: bool
    lg_gram: mm.Matrix
    lg_basis: tuple[tuple[int, ...], ...]
    lg_minimal_square: int | None
    shells_checked: dict = field(default_factory=dict)  # square -> number of vectors
    kp_contained: dict = field(default_factory=dict)  # prime -> K_p ⊆ pΛ
    note: str = KAEHLER_EINSTEIN

    @property
    def lg_rank(self) -> int:
        return len(self.lg_basis)

    def to_json(self):
        return {
            "kind": "Realized",
            "I_G": {
                "dim": len(self.ig_basis),
                "signature": list(self.ig_signature),
                "fast_path": self.ig_fast_path,
                "basis": [list(v) for v in self.ig_basis],
            },
            "L_G": {
                "rank": self.lg_rank,
                "gram": [list(r) for r in self.lg_gram],
                "basis": [list(v) for v in self.lg_basis],
                "minimal_square": self.lg_minimal_square,
            },
            "shells_checked": {str(k): v for k, v in sorted(self.shells_checked.items())},
            "K_p_in_pLambda": {str(k): v for k, v in sorted(self.kp_contained.items())},
            "note": self.note,
        }


@dataclass(frozen=True)
class Verdict:
    realizable: bool
    certificate: WallWitness | NoTrivialRep | ComponentObstruction | Realized
    conditional: bool
    group_order: int

    @property
    def witness(self) -> WallWitness | None:
        return self.certificate if isinstance(self.certificate, WallWitness) else None

    def to_json(self) -> dict:
        w = self.witness
        return {
            "realizable": self.realizable,
            "conditional": self.conditional,
            "group_order": self.group_order,
            "certificate": self.certificate.to_json(),
            "witness": None
            if w is None
            else {"coords": list(w.vector), "square": w.square, "divisibility": w.divisibility},
        }


# ---------------------------------------------------------------- pipeline


def lift_group(setup: EnriquesSetup, spec: GroupSpec) -> MatrixGroup:
    lx = setup.lambda_x
    lifted: list[Isometry] = []
    for g in spec.generators:
        if spec.mode == "direct":
            lifted.append(verify_isometry(lx, g))
        elif spec.mode == "gamma2m":
            if setup.family != K3N:
                raise ValueError("gamma2m generators need a K3^[n] setup")
            lifted.append(nikulin_extend(setup, verify_isometry(setup.M, g)))
        else:
            lifted.append(extend_from_lambda_y(setup, verify_isometry(setup.lambda_y, g)))
    group = generate(lx, lifted + list(setup.D_action.generators), spec.cap)
    for i, e in enumerate(group.elements):
        for h in setup.D_action.generators:
            if (e @ h).matrix != (h @ e).matrix:
                raise NotCentralizing(f"element {i} does not commute with the deck group")
        if not is_orientation_preserving(e):
            raise NotOrientationPreserving(f"element {i} reverses the orientation of positive 3-spaces")
    return group


def _component_obstruction(group: MatrixGroup) -> ComponentObstruction | None:
    for i, e in enumerate(group.elements):
        if not is_pm1_on_discriminant(e):
            return ComponentObstruction(i, e.matrix, discriminant_action(e))
    return None


def fixes_component(setup: EnriquesSetup, group: MatrixGroup) -> bool:
    """Monodromy test: every element acts by ±1 on Λ_X^∨/Λ_X."""
    if setup.family != K3N:
        raise UnsupportedFamily("no monodromy criterion is available for Kum_n type")
    return _component_obstruction(group) is None


def prime_factors(m: int) -> list[int]:
    return primefactors(m)


def high_divisibility_witness(setup: EnriquesSetup, lg_basis, p: int):
    """An indivisible v in L_G with p | div(v), or None when K_p ⊆ pΛ_X.

    With L_G saturated, v = sum c_i b_i lies in pΛ_X iff c ≡ 0 (mod p), so
    K_p ⊄ pΛ_X exactly when the mod-p kernel below is nonzero.
    """
    if not lg_basis:
        return None
    lx = setup.lambda_x
    pair = mm.transpose(mm.matmul(lg_basis, lx.gram))  # rank_X x rank_L: <b_i, e_j>
    ker = kernel_mod_p(pair, p, len(lg_basis))
    if not ker:
        return None
    v = tuple(sum(c * b[r] for c, b in zip(ker[0], lg_basis)) for r in range(lx.rank))
    w, _ = primitive_part(lx.vector(v))
    return w.coords


def check_realizability(
    setup: EnriquesSetup,
    spec: GroupSpec,
    node_cap: int = DEFAULT_NODE_CAP,
) -> Verdict:
    lx = setup.lambda_x
    group = lift_group(setup, spec)
    conditional = setup.walls.conditional or setup.family != K3N

    if setup.family == K3N:
        obstruction = _component_obstruction(group)
        if obstruction is not None:
            return Verdict(False, obstruction, conditional, len(group))

    if not trivial_rep_in_IG(group):
        inv = invariant_lattice(group)
        sig = signature_of_gram(inv.gram) if inv.basis else None
        return Verdict(
            False,
            NoTrivialRep(inv.rank, tuple(sig) if sig else (0, 0)),
            conditional,
            len(group),
        )

    ig = compute_IG(group)
    lg = compute_LG(group, ig)
    basis = lg.embedding
    shells: dict[int, int] = {}
    kp: dict[int, bool] = {}
    witness = None
    definite = DefiniteLattice(lg.gram) if basis else None

    def to_ambient(c):
        return tuple(sum(x * b[r] for x, b in zip(c, basis)) for r in range(lx.rank))

    walls = setup.walls
    if walls.kind == "k3n":
        if definite is not None:
            shell = enumerate_norm(definite, -2, node_cap)
            shells[-2] = len(shell)
            for c in shell.vectors:
                v = to_ambient(c)
                if divisibility(lx.vector(v)) == 1:
                    witness = WallWitness(v, -2, 1, "(-2)-shell")
                    break
        if witness is None:
            for p in prime_factors(discriminant_group(lx).exponent):
                w = high_divisibility_witness(setup, basis, p)
                kp[p] = w is None
                if w is not None:
                    witness = WallWitness(w, lx.form(w, w), divisibility(lx.vector(w)), f"K_{p}")
                    break
    elif walls.kind == "user" and definite is not None:
        for square, div in walls.pairs:
            if square >= 0:
                continue
            shell = enumerate_norm(definite, square, node_cap)
            shells[square] = len(shell)
            for c in shell.vectors:
                v = to_ambient(c)
                if is_wall_class(setup, v):
                    witness = WallWitness(v, square, divisibility(lx.vector(v)), "shell")
                    break
            if witness is not None:
                break

    if witness is not None:
        assert is_wall_class(setup, witness.vector), "witness is not a wall class"
        assert lg.sublattice.contains(witness.vector), "witness is not in L_G"
        return Verdict(False, witness, conditional, len(group))

    if walls.kind == "k3n":
        assert shells.get(-2, 0) == 0 or definite is None
        assert all(kp.values())
    min_sq = minimal_square(definite, node_cap) if definite is not None else None
    cert = Realized(
        ig.basis,
        tuple(ig.signature),
        ig.fast_path,
        lg.gram,
        basis,
        min_sq,
        shells,
        kp,
    )
    return Verdict(True, cert, conditional, len(group))


def cyclic_extension_splits(k: int, d: int) -> bool:
    """Whether 0 -> Z/k -> Z/d -> Z/(d/k) -> 0 splits, i.e. gcd(k, d/k) = 1."""
    if k < 1 or d < 1 or d % k:
        raise NotDividing(f"{k} does not divide {d}")
    return gcd(k, d // k) == 1
