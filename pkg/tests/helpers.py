"""Random isometry builders shared by the tests."""

import random

from nielsen_lattice import matmath as mm
from nielsen_lattice.isometry import verify_isometry
from nielsen_lattice.lattice import IntegerLattice


def root_with_square(lat: IntegerLattice, rest, target):
    """A vector (1, b, rest) of the given even square; lat must start with a U summand."""
    tail = (0, 0) + tuple(rest)
    q = lat.form(tail, tail)
    b = (target - q) // 2
    return (1, b) + tuple(rest)


def reflection_matrix(lat: IntegerLattice, v):
    """x -> x - 2<x,v>/<v,v> v for <v,v> = ±2."""
    q = lat.form(v, v)
    assert q in (2, -2)
    gv = mm.matvec(lat.gram, v)
    s = 2 // q
    n = lat.rank
    return mm.freeze([[int(i == j) - s * v[i] * gv[j] for j in range(n)] for i in range(n)])


def random_reflection(lat, rng: random.Random, sign=None, spread=2):
    if sign is None:
        sign = rng.choice((1, -1))
    rest = [rng.randint(-spread, spread) for _ in range(lat.rank - 2)]
    v = root_with_square(lat, rest, 2 * sign)
    return verify_isometry(lat, reflection_matrix(lat, v)), v


def eichler(lat: IntegerLattice, e, f):
    """Eichler transvection x -> x + <x,e> f - <x,f> e - 1/2 <f,f> <x,e> e (e isotropic, e ⊥ f)."""
    assert lat.form(e, e) == 0 and lat.form(e, f) == 0
    ge = mm.matvec(lat.gram, e)
    gf = mm.matvec(lat.gram, f)
    half = lat.form(f, f) // 2
    n = lat.rank
    rows = [
        [int(i == j) + ge[j] * f[i] - gf[j] * e[i] - half * ge[j] * e[i] for j in range(n)]
        for i in range(n)
    ]
    return verify_isometry(lat, rows)


def random_gamma2_plus_m(m: IntegerLattice, rng: random.Random, length=3):
    """Random product of Eichler transvections E_{e, 2f'} (e in the U summand) and -id on E8."""
    n = m.rank
    g = verify_isometry(m, mm.identity(n))
    neg_e8 = verify_isometry(m, mm.block_diag(mm.identity(2), mm.scale(mm.identity(n - 2), -1)))
    for _ in range(length):
        if rng.random() < 0.25:
            g = g @ neg_e8
            continue
        e = (1, 0) + (0,) * (n - 2) if rng.random() < 0.5 else (0, 1) + (0,) * (n - 2)
        fp = (0, 0) + tuple(rng.randint(-1, 1) for _ in range(n - 2))
        f = tuple(2 * x for x in fp)
        t = eichler(m, e, f)
        g = g @ (t if rng.random() < 0.5 else t.inverse())
    return g
