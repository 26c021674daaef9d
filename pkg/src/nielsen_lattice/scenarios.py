"""Fixed regression scenarios: a setup plus a group spec for each case id."""

from __future__ import annotations

from . import matmath as mm
from .criterion import GroupSpec
from .enriques import build_k3n_setup, build_kumn_setup, e8_root_pair, simultaneous_reflection

CASES = ("nonreal-delta", "nonreal-twist", "congruence-e8", "kum-translation", "central-extension")
EXPECTED = {
    "nonreal-delta": False,
    "nonreal-twist": False,
    "congruence-e8": True,
    "kum-translation": True,
}


def delta_negation(n: int):
    """Λ_Y isometry that is -1 on the [-(n-1)] generator and the identity elsewhere."""
    setup = build_k3n_setup(n)
    g = [list(r) for r in mm.identity(setup.lambda_y.rank)]
    g[-1][-1] = -1
    return setup, GroupSpec("lambday", (mm.freeze(g),))


def twist(n: int, root=None):
    setup = build_k3n_setup(n)
    v1, v2 = e8_root_pair(setup, root)
    refl = simultaneous_reflection(setup, v1, v2)
    return setup, GroupSpec("direct", (refl.matrix,))


def congruence_e8(n: int):
    """g = (id_U, -id_E8) on M = U + E8(-1)."""
    setup = build_k3n_setup(n)
    g = mm.block_diag(mm.identity(2), mm.scale(mm.identity(8), -1))
    return setup, GroupSpec("gamma2m", (g,))


def kum_translation(n: int, d: int):
    """A translation acts trivially on H^2(Y), so the lift is the deck group itself."""
    setup = build_kumn_setup(n, d)
    return setup, GroupSpec("lambday", (mm.identity(setup.lambda_y.rank),))
