"""Command-line interface: JSON on stdout, stable exit codes.

Exit codes: 0 realizable / success, 1 not realizable, 2 input error,
3 cap or unsupported-regime error.  ``reproduce`` exits 0 when the verdict
matches the recorded outcome of the case and 1 when it does not.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from . import scenarios
from .criterion import GroupSpec, check_realizability, cyclic_extension_splits
from .enriques import build_k3n_setup, build_kumn_setup, build_setup
from .enumeration import DEFAULT_NODE_CAP, DefiniteLattice, enumerate_norm
from .errors import InputError, ResourceError
from .lattice import IntegerLattice, direct_sum, discriminant_group, e8_negative, hyperbolic_plane, rank_one, signature

EXIT_OK = 0
EXIT_NOT_REALIZABLE = 1
EXIT_INPUT = 2
EXIT_RESOURCE = 3

LATTICE_NAMES = """lattice names, joined with '+' for direct sums:
  U             hyperbolic plane
  E8neg         E8(-1)
  rank1:K       [K] for even K
  k3n-x:N       H^2 lattice of K3^[N] type
  k3n-y:N       H^2 lattice of the Enriques quotient (K3^[N] type)
  kumn-x:N      H^2 lattice of Kum_N type
  kumn-y:N:D    H^2 lattice of the index-D quotient (Kum_N type)
"""


def parse_lattice_name(name: str) -> IntegerLattice:
    parts = []
    for token in name.split("+"):
        kind, *args = token.strip().split(":")
        try:
            nums = [int(a) for a in args]
        except ValueError:
            raise InputError(f"bad lattice token {token!r}") from None
        if kind == "U" and not nums:
            parts.append(hyperbolic_plane())
        elif kind == "E8neg" and not nums:
            parts.append(e8_negative())
        elif kind == "rank1" and len(nums) == 1:
            parts.append(rank_one(nums[0]))
        elif kind == "k3n-x" and len(nums) == 1:
            parts.append(build_k3n_setup(nums[0]).lambda_x)
        elif kind == "k3n-y" and len(nums) == 1:
            parts.append(build_k3n_setup(nums[0]).lambda_y)
        elif kind == "kumn-x" and len(nums) == 1:
            n = nums[0]
            d = next((d for d in (2, 3, 4) if (n + 1) % d == 0), None)
            if d is None:
                u = hyperbolic_plane()
                parts.append(direct_sum(u, u, u, rank_one(-2 * (n + 1)), label=f"Lambda_X(Kum_{n})"))
            else:
                parts.append(build_kumn_setup(n, d).lambda_x)
        elif kind == "kumn-y" and len(nums) == 2:
            parts.append(build_kumn_setup(*nums).lambda_y)
        else:
            raise InputError(f"unknown lattice {token!r}")
    if len(parts) == 1:
        return parts[0]
    return direct_sum(*parts, label=name)


def _load_json(path: str):
    try:
        with open(path) as f:
            return json.load(f)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _load_lattice(args) -> IntegerLattice:
    if args.file:
        return IntegerLattice.from_json(_load_json(args.file))
    if not args.name:
        raise InputError("give a lattice name or --file")
    return parse_lattice_name(args.name)


def _fraction(x) -> str:
    return str(x)


def cmd_lattice(args) -> int:
    lat = _load_lattice(args)
    disc = discriminant_group(lat)
    sig = signature(lat)
    out = {
        "label": lat.label,
        "rank": lat.rank,
        "det": lat.det,
        "signature": [sig.positive, sig.negative],
        "discriminant": {
            "invariant_factors": list(disc.invariant_factors),
            "order": disc.order,
            "q_values": [_fraction(q) for q in disc.q_values],
        },
    }
    if args.gram:
        out["gram"] = [list(r) for r in lat.gram]
    _emit(out)
    return EXIT_OK


def cmd_shell(args) -> int:
    lat = _load_lattice(args)
    shell = enumerate_norm(DefiniteLattice(lat.gram), args.target, args.node_cap)
    out = {"label": lat.label, "target": args.target, "count": len(shell)}
    if not args.count_only:
        out["vectors"] = [list(v) for v in shell.vectors]
    _emit(out)
    return EXIT_OK


def _verdict_exit(verdict) -> int:
    _emit(verdict.to_json())
    return EXIT_OK if verdict.realizable else EXIT_NOT_REALIZABLE


def cmd_check(args) -> int:
    setup_data = _load_json(args.setup)
    group_data = _load_json(args.group)
    try:
        setup = build_setup(setup_data)
        spec = GroupSpec.from_json(group_data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed input: {exc}") from None
    return _verdict_exit(check_realizability(setup, spec, args.node_cap))


def cmd_reproduce(args) -> int:
    case = args.case
    if case == "central-extension":
        split = cyclic_extension_splits(args.k, args.d)
        _emit({"case": case, "k": args.k, "d": args.d, "splits": split, "result": "split" if split else "no section"})
        return EXIT_OK
    if case == "nonreal-delta":
        setup, spec = scenarios.delta_negation(args.n)
    elif case == "nonreal-twist":
        setup, spec = scenarios.twist(args.n)
    elif case == "congruence-e8":
        setup, spec = scenarios.congruence_e8(args.n)
    else:
        setup, spec = scenarios.kum_translation(args.n, args.d)
    verdict = check_realizability(setup, spec, args.node_cap)
    expected = scenarios.EXPECTED[case]
    out = {"case": case, "setup": setup.to_json(), "group": spec.to_json(), "expected_realizable": expected}
    out.update(verdict.to_json())
    _emit(out)
    # exit 1 flags a regression: the verdict differs from the recorded outcome
    return EXIT_OK if verdict.realizable == expected else EXIT_NOT_REALIZABLE


def cmd_version(args) -> int:
    _emit({"version": __version__})
    return EXIT_OK


def _emit(obj):
    json.dump(obj, sys.stdout, indent=2, sort_keys=True, ensure_ascii=False)
    sys.stdout.write("\n")


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentDefaultsHelpFormatter
    parser = argparse.ArgumentParser(
        prog="nielsen-lattice",
        description="Exact lattice computations for realizing mapping classes of Enriques manifolds.",
        formatter_class=fmt,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def lattice_args(p):
        p.add_argument("name", nargs="?", default=None, help="named lattice (see epilog)")
        p.add_argument("--file", default=None, help='JSON file {"gram": [[...]], "label": ...}')

    p = sub.add_parser("lattice", help="invariants of a lattice", formatter_class=argparse.RawDescriptionHelpFormatter,
                       epilog=LATTICE_NAMES)
    lattice_args(p)
    p.add_argument("--gram", action="store_true", default=False, help="include the Gram matrix (default: False)")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("shell", help="vectors of a given square in a negative-definite lattice",
                       formatter_class=argparse.RawDescriptionHelpFormatter, epilog=LATTICE_NAMES)
    lattice_args(p)
    p.add_argument("--target", type=int, default=-2, help="target square (default: -2)")
    p.add_argument("--node-cap", type=int, default=DEFAULT_NODE_CAP, help=f"enumeration node cap (default: {DEFAULT_NODE_CAP})")
    p.add_argument("--count-only", action="store_true", default=False, help="omit the vectors (default: False)")
    p.set_defaults(func=cmd_shell)

    p = sub.add_parser("check", help="run the realizability test", formatter_class=fmt)
    p.add_argument("setup", help='setup JSON, e.g. {"family": "k3n", "n": 3}')
    p.add_argument("group", help='group JSON {"mode": "direct|gamma2m|lambday", "generators": [...], "cap": N}')
    p.add_argument("--node-cap", type=int, default=DEFAULT_NODE_CAP, help="enumeration node cap")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("reproduce", help="run a fixed regression scenario", formatter_class=fmt)
    p.add_argument("case", choices=scenarios.CASES)
    p.add_argument("--n", type=int, default=3, help="n of the hyper-Kähler type")
    p.add_argument("--d", type=int, default=None, help="index d (kum-translation: 2, central-extension: 4)")
    p.add_argument("--k", type=int, default=2, help="kernel order for central-extension")
    p.add_argument("--node-cap", type=int, default=DEFAULT_NODE_CAP, help="enumeration node cap")
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("version", help="print the package version", formatter_class=fmt)
    p.set_defaults(func=cmd_version)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, which matches the input-error code
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    if getattr(args, "case", None) is not None and args.d is None:
        args.d = 4 if args.case == "central-extension" else 2
    try:
        return args.func(args)
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
