import random

import pytest

from nielsen_lattice import matmath as mm
from nielsen_lattice.enriques import (
    VACUOUS,
    WallPredicate,
    build_k3n_setup,
    build_kumn_setup,
    build_setup,
    delta_vector,
    e8_root_pair,
    extend_from_lambda_y,
    is_wall_class,
    mukai_dimension,
    nikulin_extend,
    restrict_to_m,
    simultaneous_reflection,
)
from nielsen_lattice.errors import (
    BadIndex,
    BadSpheres,
    EvenChi,
    EvenN,
    NegativeMukaiSquare,
    NotTwoCongruence,
    NTooSmall,
    ZeroVector,
)
from nielsen_lattice.groups import invariant_lattice
from nielsen_lattice.isometry import (
    discriminant_action,
    identity_isometry,
    is_orientation_preserving,
    is_pm1_on_discriminant,
    is_two_congruence,
    order,
    verify_isometry,
)
from nielsen_lattice.lattice import Sublattice, direct_sum, discriminant_group, signature

from .helpers import random_gamma2_plus_m

KUM_CASES = [(n, d) for n in range(2, 12) for d in (2, 3, 4) if (n + 1) % d == 0]


def pullback_image(setup):
    rx, ry = setup.lambda_x.rank, setup.lambda_y.rank
    return [tuple(setup.pullback[r][c] for r in range(rx)) for c in range(ry)]


# ---------------------------------------------------------------- K3^[n]


@pytest.mark.parametrize("n", [3, 5, 7])
def test_k3n_lattices(n):
    s = build_k3n_setup(n)
    assert s.lambda_x.rank == 23 and tuple(signature(s.lambda_x)) == (3, 20)
    assert s.lambda_y.rank == 11 and tuple(signature(s.lambda_y)) == (1, 10)
    assert abs(s.lambda_x.det) == 2 * (n - 1) and abs(s.lambda_y.det) == n - 1
    disc = discriminant_group(s.lambda_x)
    assert disc.invariant_factors == (2 * (n - 1),)
    assert s.M.rank == 10 and abs(s.M.det) == 1


def test_k3n_errors():
    with pytest.raises(EvenN):
        build_k3n_setup(4)
    with pytest.raises(NTooSmall):
        build_k3n_setup(1)


@pytest.mark.parametrize("n", [3, 5, 7])
def test_k3n_covering_maps(n):
    s = build_k3n_setup(n)
    assert mm.matmul(s.pushforward, s.pullback) == mm.scale(mm.identity(11), 2)
    img = pullback_image(s)
    assert mm.congruence(s.lambda_x.gram, img) == mm.scale(s.lambda_y.gram, 2)
    inv = invariant_lattice(s.D_action)
    assert inv.same_span(Sublattice(s.lambda_x, img))
    rho = s.deck
    assert order(rho) == 2
    assert is_orientation_preserving(rho)
    assert discriminant_action(rho) == ((1,),)


# ---------------------------------------------------------------- Kum_n


def test_kumn_example():
    s = build_kumn_setup(3, 2)
    assert s.lambda_x.rank == 7
    assert s.lambda_y.gram == ((0, 1, 0), (1, 0, 0), (0, 0, -4))
    assert tuple(signature(s.lambda_x)) == (3, 4)


@pytest.mark.parametrize("n,d", KUM_CASES)
def test_kumn_covering(n, d):
    s = build_kumn_setup(n, d)
    assert len(s.D_action) == d
    assert order(s.deck) == d
    assert mm.matmul(s.pushforward, s.pullback) == mm.scale(mm.identity(3), d)
    img = pullback_image(s)
    assert mm.congruence(s.lambda_x.gram, img) == mm.scale(s.lambda_y.gram, d)
    inv = invariant_lattice(s.D_action)
    assert all(inv.contains(v) for v in img) and inv.rank == len(img)
    assert all(is_orientation_preserving(g) for g in s.D_action.elements)
    for g in s.D_action.elements:
        assert all(g(v) == v for v in img)


def test_kumn_errors():
    with pytest.raises(BadIndex):
        build_kumn_setup(3, 5)
    with pytest.raises(BadIndex):
        build_kumn_setup(4, 2)


def test_build_setup_json():
    assert build_setup({"family": "k3n", "n": 5}).n == 5
    s = build_setup({"family": "kumn", "n": 3, "d": 4, "walls": [[-2, 1]]})
    assert s.d == 4 and s.walls.kind == "user" and s.walls.conditional
    with pytest.raises(ValueError):
        build_setup({"family": "other"})


# ---------------------------------------------------------------- Nikulin extension


def test_nikulin_identity(k3n3):
    ext = nikulin_extend(k3n3, identity_isometry(k3n3.M))
    assert ext.is_identity()


def test_nikulin_e8_negation(k3n3):
    g = mm.block_diag(mm.identity(2), mm.scale(mm.identity(8), -1))
    ext = nikulin_extend(k3n3, g)
    rng = random.Random(0)
    for _ in range(5):
        x = [rng.randint(-3, 3) for _ in range(8)]
        y = [rng.randint(-3, 3) for _ in range(8)]
        head = [rng.randint(-3, 3) for _ in range(6)]
        v = tuple(head + x + y + [rng.randint(-3, 3)])
        w = ext(v)
        assert w == tuple(head) + tuple(-a for a in y) + tuple(-a for a in x) + (v[22],)
    assert is_pm1_on_discriminant(ext)


def test_nikulin_rejects_non_congruence(k3n3):
    swap = mm.block_diag(((0, 1), (1, 0)), mm.identity(8))
    with pytest.raises(NotTwoCongruence):
        nikulin_extend(k3n3, swap)


@pytest.mark.parametrize("n", [3, 5])
def test_nikulin_sampled_gamma2(n):
    s = build_k3n_setup(n)
    rng = random.Random(100 + n)
    samples = [random_gamma2_plus_m(s.M, rng) for _ in range(20)]
    exts = [nikulin_extend(s, g) for g in samples]
    for g, e in zip(samples, exts):
        assert restrict_to_m(s, e) == g.matrix
        assert (e @ s.deck).matrix == (s.deck @ e).matrix
        assert discriminant_action(e) == ((1,),)
    for i in range(len(samples) - 1):
        g, h = samples[i], samples[i + 1]
        assert nikulin_extend(s, g @ h).matrix == (exts[i] @ exts[i + 1]).matrix


def test_nikulin_matches_lambda_y_extension(k3n3):
    rng = random.Random(5)
    for _ in range(5):
        g = random_gamma2_plus_m(k3n3.M, rng)
        gy = mm.block_diag(g.matrix, ((1,),))
        assert nikulin_extend(k3n3, g).matrix == extend_from_lambda_y(k3n3, gy).matrix


def test_lambda_y_delta_negation(k3n3):
    g = [list(r) for r in mm.identity(11)]
    g[10][10] = -1
    ext = extend_from_lambda_y(k3n3, g)
    assert ext.matrix == mm.block_diag(mm.identity(22), ((-1,),))
    assert discriminant_action(ext) == ((3,),)


# ---------------------------------------------------------------- twists


def test_simultaneous_reflection(k3n3):
    v1, v2 = e8_root_pair(k3n3)
    s = simultaneous_reflection(k3n3, v1, v2)
    assert order(s) == 2
    assert s(v1) == tuple(-x for x in v1) and s(v2) == tuple(-x for x in v2)
    delta = delta_vector(k3n3)
    assert s(delta) == delta
    assert discriminant_action(s) == ((1,),)
    assert is_orientation_preserving(s)
    with pytest.raises(BadSpheres):
        simultaneous_reflection(k3n3, v1, v1)


def test_simultaneous_reflection_is_identity_on_complement(k3n3):
    v1, v2 = e8_root_pair(k3n3)
    s = simultaneous_reflection(k3n3, v1, v2)
    from nielsen_lattice.lattice import orthogonal_complement

    perp = orthogonal_complement(Sublattice(k3n3.lambda_x, [v1, v2]))
    assert all(s(b) == b for b in perp.basis)


def test_twist_not_two_congruence_on_lambda_y():
    # the reflection of Λ_Y along a (-2)-root of E8 is not ≡ 1 mod 2
    s = build_k3n_setup(3)
    v = (0, 0, 1) + (0,) * 8
    from nielsen_lattice.isometry import reflection

    r = reflection(s.lambda_y, v)
    assert not is_two_congruence(r)


# ---------------------------------------------------------------- bookkeeping


def test_mukai():
    assert mukai_dimension(1, 4, 3) == (8, 10, 5)
    assert mukai_dimension(1, 0, 1) == (0, 2, 1)
    with pytest.raises(EvenChi):
        mukai_dimension(1, 0, 2)
    with pytest.raises(NegativeMukaiSquare):
        mukai_dimension(2, 0, 1)


def test_wall_classes(k3n3):
    delta = delta_vector(k3n3)
    assert is_wall_class(k3n3, delta)
    v1, _ = e8_root_pair(k3n3)
    assert is_wall_class(k3n3, v1)
    assert not is_wall_class(k3n3, tuple(2 * x for x in delta))
    assert not is_wall_class(k3n3, (1, 0) + (0,) * 21)  # isotropic
    with pytest.raises(ZeroVector):
        is_wall_class(k3n3, (0,) * 23)


def test_wall_predicates_kum():
    s = build_kumn_setup(3, 2)
    v = (1, -1, 0, 0, 0, 0, 0)
    assert s.walls == VACUOUS and not is_wall_class(s, v)
    s2 = build_kumn_setup(3, 2, WallPredicate("user", ((-2, 1),)))
    assert is_wall_class(s2, v)
    assert not is_wall_class(s2, (2, -2, 0, 0, 0, 0, 0))
