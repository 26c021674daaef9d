"""Lattice data of the known Enriques manifolds and their covers.

Basis order (normative for all I/O):

* K3^[n] type, rank 23: U1 (0-1), U2 (2-3), U3 (4-5), E8 copy 1 (6-13),
  E8 copy 2 (14-21), delta (22).  Λ_Y, rank 11: U (0-1), E8 (2-9), eta (10)
  where eta generates [-(n-1)].  M = U + E8(-1) is the first 10 coordinates.
* Kum_n type, rank 7: U1, U2, U3, delta.  The U-summands are the wedge
  squares of H^1 of the abelian surface in the basis
  (e12, e34), (e13, e42), (e14, e23).  Λ_Y, rank 3: U (0-1), eta (2).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import matmath as mm
from .errors import (
    BadIndex,
    BadSpheres,
    EvenChi,
    EvenN,
    IntegralityFailure,
    NegativeMukaiSquare,
    NotTwoCongruence,
    NTooSmall,
    ZeroVector,
)
from .groups import MatrixGroup, generate
from .isometry import (
    Isometry,
    discriminant_action,
    identity_isometry,
    in_gamma2_plus,
    is_two_congruence,
    verify_isometry,
)
from .lattice import (
    IntegerLattice,
    LatticeVector,
    Sublattice,
    direct_sum,
    divisibility,
    e8_negative,
    hyperbolic_plane,
    inner,
    orthogonal_complement,
    primitive_part,
    rank_one,
)

K3N = "k3n"
KUMN = "kumn"


@dataclass(frozen=True)
class WallPredicate:
    """Which classes count as walls.

    ``kind`` is ``"k3n"`` (square -2 & div 1, or div != 1 & negative square),
    ``"user"`` (explicit (square, divisibility) pairs) or ``"vacuous"``.
    """

    kind: str
    pairs: tuple[tuple[int, int], ...] = ()

    @property
    def conditional(self) -> bool:
        return self.kind != "k3n"


K3N_WALLS = WallPredicate("k3n")
VACUOUS = WallPredicate("vacuous")


@dataclass(frozen=True, eq=False)
class EnriquesSetup:
    family: str
    n: int
    d: int
    lambda_x: IntegerLattice
    lambda_y: IntegerLattice
    M: IntegerLattice | None
    D_action: MatrixGroup
    pullback: mm.Matrix  # rank_X x rank_Y, columns = images of the Λ_Y basis
    pushforward: mm.Matrix  # rank_Y x rank_X
    walls: WallPredicate = field(default=K3N_WALLS)

    @property
    def deck(self) -> Isometry:
        return self.D_action.generators[0]

    def to_json(self) -> dict:
        out = {"family": self.family, "n": self.n}
        if self.family == KUMN:
            out["d"] = self.d
        return out


def _check_covering(setup: EnriquesSetup):
    d = setup.d
    ry = setup.lambda_y.rank
    comp = mm.matmul(setup.pushforward, setup.pullback)
    assert comp == mm.scale(mm.identity(ry), d), "p_! p^* != d"
    pulled = mm.matmul(mm.matmul(mm.transpose(setup.pullback), setup.lambda_x.gram), setup.pullback)
    assert pulled == mm.scale(setup.lambda_y.gram, d), "p^* does not scale the form by d"
    for g in setup.D_action.elements:
        assert mm.matmul(g.matrix, setup.pullback) == setup.pullback, "deck group moves p^* image"
    assert len(setup.D_action) == d


# ---------------------------------------------------------------- K3^[n]


def _k3n_lattices(n: int):
    u = hyperbolic_plane()
    e8 = e8_negative()
    lx = direct_sum(u, u, u, e8, e8, rank_one(-2 * (n - 1)), label=f"Lambda_X(K3^[{n}])")
    ly = direct_sum(u, e8, rank_one(-(n - 1)), label=f"Lambda_Y(K3^[{n}])")
    m = direct_sum(u, e8, label="M")
    return lx, ly, m


def _k3n_deck(n: int):
    # rho(a, b, c, x, y, delta) = (-a, c, b, y, x, delta)
    perm = {}
    rho = [[0] * 23 for _ in range(23)]
    for i in range(2):
        rho[i][i] = -1
        perm[2 + i] = 4 + i
        perm[4 + i] = 2 + i
    for i in range(8):
        perm[6 + i] = 14 + i
        perm[14 + i] = 6 + i
    perm[22] = 22
    for src, dst in perm.items():
        rho[dst][src] = 1
    return mm.freeze(rho)


def build_k3n_setup(n: int) -> EnriquesSetup:
    if n % 2 == 0:
        raise EvenN(f"n = {n} must be odd")
    if n < 3:
        raise NTooSmall(f"n = {n} must be at least 3 (n = 1 gives a degenerate delta summand)")
    lx, ly, m = _k3n_lattices(n)
    rho = verify_isometry(lx, _k3n_deck(n))
    D = generate(lx, [rho])
    # p^*(u, x, k) = (0, u, u, x, x, k delta)
    pull = [[0] * 11 for _ in range(23)]
    for i in range(2):
        pull[2 + i][i] = 1
        pull[4 + i][i] = 1
    for i in range(8):
        pull[6 + i][2 + i] = 1
        pull[14 + i][2 + i] = 1
    pull[22][10] = 1
    # transfer: p_!(a, b, c, x, y, k) = (b + c, x + y, 2k)
    push = [[0] * 23 for _ in range(11)]
    for i in range(2):
        push[i][2 + i] = 1
        push[i][4 + i] = 1
    for i in range(8):
        push[2 + i][6 + i] = 1
        push[2 + i][14 + i] = 1
    push[10][22] = 2
    setup = EnriquesSetup(K3N, n, 2, lx, ly, m, D, mm.freeze(pull), mm.freeze(push), K3N_WALLS)
    _check_covering(setup)
    return setup


# ---------------------------------------------------------------- Kum_n

_WEDGE_BASIS = ((0, 1), (2, 3), (0, 2), (3, 1), (0, 3), (1, 2))


def _h1_action(d: int):
    """Linear part of psi(x, y) = (xi_d x + 1/d, y + 1/d) on H^1(E x E) = Z^4."""
    if d == 2:
        c = ((-1, 0), (0, -1))
    elif d == 3:
        c = ((0, -1), (1, -1))  # companion of x^2 + x + 1
    else:
        c = ((0, -1), (1, 0))  # companion of x^2 + 1
    return mm.block_diag(c, mm.identity(2))


def _wedge_coords(i: int, j: int, coeff: int, out: list):
    """Add ``coeff * e_i ^ e_j`` into ``out`` (coordinates in _WEDGE_BASIS)."""
    if i == j or coeff == 0:
        return
    for k, (a, b) in enumerate(_WEDGE_BASIS):
        if (a, b) == (i, j):
            out[k] += coeff
            return
        if (a, b) == (j, i):
            out[k] -= coeff
            return
    raise AssertionError((i, j))


def exterior_square(g) -> mm.Matrix:
    """Matrix of Λ^2 g on H^2 of the abelian surface in _WEDGE_BASIS."""
    cols = []
    for a, b in _WEDGE_BASIS:
        out = [0] * 6
        for i in range(4):
            for j in range(4):
                _wedge_coords(i, j, g[i][a] * g[j][b], out)
        cols.append(out)
    return mm.transpose(cols)


def build_kumn_setup(n: int, d: int, walls: WallPredicate = VACUOUS) -> EnriquesSetup:
    if d not in (2, 3, 4) or (n + 1) % d:
        raise BadIndex(f"need d in {{2, 3, 4}} dividing n + 1 (got n={n}, d={d})")
    if n < 2:
        raise NTooSmall("Kum_n needs n >= 2")
    u = hyperbolic_plane()
    lx = direct_sum(u, u, u, rank_one(-2 * (n + 1)), label=f"Lambda_X(Kum_{n})")
    ly = direct_sum(u, rank_one(-2 * (n + 1) // d), label=f"Lambda_Y(Kum_{n}, d={d})")
    psi = mm.block_diag(exterior_square(_h1_action(d)), ((1,),))
    D = generate(lx, [verify_isometry(lx, psi)])
    # p^*(a, b, k) = d a e12 + b e34 + k delta;  p_!(v) = (v_12, d v_34, d k)
    pull = [[0] * 3 for _ in range(7)]
    pull[0][0] = d
    pull[1][1] = 1
    pull[6][2] = 1
    push = [[0] * 7 for _ in range(3)]
    push[0][0] = 1
    push[1][1] = d
    push[2][6] = d
    setup = EnriquesSetup(KUMN, n, d, lx, ly, None, D, mm.freeze(pull), mm.freeze(push), walls)
    _check_covering(setup)
    return setup


def build_setup(data: dict) -> EnriquesSetup:
    """From the JSON form ``{"family": "k3n", "n": 3}`` or ``{"family": "kumn", "n": 3, "d": 2}``."""
    family = data.get("family")
    if family == K3N:
        return build_k3n_setup(int(data["n"]))
    if family == KUMN:
        walls = VACUOUS
        if data.get("walls"):
            walls = WallPredicate("user", tuple((int(s), int(q)) for s, q in data["walls"]))
        return build_kumn_setup(int(data["n"]), int(data["d"]), walls)
    raise ValueError(f"unknown family {family!r}")


# ---------------------------------------------------------------- extensions


def extend_from_lambda_y(setup: EnriquesSetup, g) -> Isometry:
    """Lift an isometry of Λ_Y: act through p^* on the image, identity on its complement.

    With ``pi = p^* p_! / d`` the projection onto the D-invariant part, the
    lift is ``1 + p^* (g - 1) p_! / d``.
    """
    g = verify_isometry(setup.lambda_y, g.matrix if isinstance(g, Isometry) else g)
    ry = setup.lambda_y.rank
    delta = mm.sub(g.matrix, mm.identity(ry))
    num = mm.matmul(mm.matmul(setup.pullback, delta), setup.pushforward)
    rx = setup.lambda_x.rank
    rows = []
    for i in range(rx):
        row = []
        for j in range(rx):
            x = Fraction(num[i][j], setup.d) + (i == j)
            if x.denominator != 1:
                raise IntegralityFailure(f"lift of the Λ_Y isometry is not integral at ({i}, {j})")
            row.append(int(x))
        rows.append(row)
    return verify_isometry(setup.lambda_x, rows)


def embed_m_isometry(setup: EnriquesSetup, g) -> mm.Matrix:
    """Extend an isometry of M to Λ_Y by the identity on the [-(n-1)] summand."""
    return mm.block_diag(g.matrix if isinstance(g, Isometry) else g, ((1,),))


def nikulin_extend(setup: EnriquesSetup, g) -> Isometry:
    """The isometry of Λ_X that is ``g`` on M(2) = p^*(M) and the identity on M(2)^⊥.

    Built over Q on the finite-index sublattice M(2) ⊕ M(2)^⊥ and then
    checked to be integral on the Λ_X basis.
    """
    if setup.family != K3N:
        raise ValueError("Nikulin extension is defined for K3^[n] setups")
    if not isinstance(g, Isometry):
        g = verify_isometry(setup.M, g)
    if not is_two_congruence(g):
        raise NotTwoCongruence("input is not congruent to the identity mod 2")
    if not in_gamma2_plus(g):
        raise NotTwoCongruence("input is a 2-congruence but does not preserve orientation")
    lx = setup.lambda_x
    m_rank = setup.M.rank
    m_images = [tuple(setup.pullback[r][c] for r in range(lx.rank)) for c in range(m_rank)]
    perp = orthogonal_complement(Sublattice(lx, m_images)).basis
    basis = m_images + list(perp)  # rows
    bcols = mm.transpose(basis)
    # images of the basis: g on the M part, identity on the complement
    imgs = []
    for c in range(m_rank):
        col = mm.matvec(mm.transpose(m_images), [g.matrix[r][c] for r in range(m_rank)])
        imgs.append(col)
    imgs.extend(perp)
    mat = mm.matmul(mm.transpose(imgs), mm.inverse(bcols))
    try:
        mat = mm.to_int_matrix(mat)
    except ValueError:
        raise IntegralityFailure("Nikulin extension is not integral") from None
    ext = verify_isometry(lx, mat)
    assert (ext @ setup.deck).matrix == (setup.deck @ ext).matrix, "extension does not commute with D"
    assert discriminant_action(ext) == discriminant_action(identity_isometry(lx))
    return ext


def restrict_to_m(setup: EnriquesSetup, ext: Isometry) -> mm.Matrix:
    """Read back the action of a Λ_X isometry on the embedded M(2)."""
    m_rank = setup.M.rank
    lx = setup.lambda_x
    m_images = mm.transpose([tuple(setup.pullback[r][c] for r in range(lx.rank)) for c in range(m_rank)])
    moved = mm.matmul(ext.matrix, m_images)
    coords = mm.solve_left(m_images, moved)
    return mm.to_int_matrix(coords)


def simultaneous_reflection(setup: EnriquesSetup, v1, v2) -> Isometry:
    """s_{v1} s_{v2} for orthogonal (-2)-classes swapped by the deck involution."""
    lx = setup.lambda_x
    v1 = tuple(v1.coords if isinstance(v1, LatticeVector) else v1)
    v2 = tuple(v2.coords if isinstance(v2, LatticeVector) else v2)
    if lx.form(v1, v1) != -2 or lx.form(v2, v2) != -2:
        raise BadSpheres("both classes must have square -2")
    if lx.form(v1, v2) != 0:
        raise BadSpheres("classes must be orthogonal")
    if setup.deck(v1) != v2 or setup.deck(v2) != v1:
        raise BadSpheres("deck involution must swap the classes")
    n = lx.rank
    g1 = mm.matvec(lx.gram, v1)
    g2 = mm.matvec(lx.gram, v2)
    # s_v(x) = x + <x, v> v for v^2 = -2
    mat = [[int(i == j) + v1[i] * g1[j] + v2[i] * g2[j] for j in range(n)] for i in range(n)]
    refl = verify_isometry(lx, mat)
    assert (refl @ refl).is_identity()
    assert (refl @ setup.deck).matrix == (setup.deck @ refl).matrix
    return refl


def e8_root_pair(setup: EnriquesSetup, root=None):
    """Default spheres for the twist example: (x, 0) and (0, x) for an E8 root x."""
    if root is None:
        root = (1, 0, 0, 0, 0, 0, 0, 0)
    v1 = (0,) * 6 + tuple(root) + (0,) * 8 + (0,)
    v2 = (0,) * 6 + (0,) * 8 + tuple(root) + (0,)
    return v1, v2


def delta_vector(setup: EnriquesSetup) -> tuple[int, ...]:
    r = setup.lambda_x.rank
    return tuple(int(i == r - 1) for i in range(r))


# ---------------------------------------------------------------- bookkeeping


def mukai_dimension(r: int, l_square: int, chi: int) -> tuple[int, int, int]:
    if chi % 2 == 0:
        raise EvenChi(f"chi = {chi} must be odd")
    v2 = l_square - 2 * r * (r - chi)
    if v2 < 0:
        raise NegativeMukaiSquare(f"v^2 = {v2} < 0")
    dim = v2 + 2
    return v2, dim, dim // 2


def is_wall_class(setup: EnriquesSetup, v) -> bool:
    if not isinstance(v, LatticeVector):
        v = setup.lambda_x.vector(v)
    if v.is_zero():
        raise ZeroVector("zero is not a wall class")
    walls = setup.walls
    if walls.kind == "vacuous":
        return False
    _, content = primitive_part(v)
    if content != 1:
        return False
    q = inner(v, v)
    div = divisibility(v)
    if walls.kind == "k3n":
        return (q == -2 and div == 1) or (div != 1 and q < 0)
    return (q, div) in walls.pairs
