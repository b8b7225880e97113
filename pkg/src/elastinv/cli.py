"""Command-line front end: ``elastinv <command> ...``, JSON on stdout.

Exit codes: 0 success (or equivalent for ``compare``), 1 not equivalent,
2 malformed input or failed operation (diagnostic on stderr).
"""

import argparse
import json
import os
import sys

from . import __version__
from .basis import catalog251, catalog_counts, evaluate_fingerprint, find_descriptor
from .exceptions import ElastinvError
from .harmonic import decompose
from .intermediates import compute_j
from .io import read_tensor
from .orbit import DEFAULT_TOL, same_orbit
from .reconstruct import DEFAULT_TIE_TOL, reconstruct
from .relations import certify_table1_degree, find_relation

SEED_ENV = "ELASTINV_SEED"


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw.strip() == "":
        return 0
    try:
        return int(raw)
    except ValueError:
        raise ElastinvError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _cmd_decompose(args):
    return decompose(read_tensor(args.file)).to_dict(), 0


def _cmd_invariants(args):
    e = read_tensor(args.file)
    out = evaluate_fingerprint(e).to_dict()
    j = compute_j(decompose(e).a)
    out["j"] = {f"J{k}": float(getattr(j, f"j{k}")) for k in range(2, 11)}
    if args.names:
        out["names"] = [d.name for d in catalog251()]
    return out, 0


def _cmd_compare(args):
    verdict = same_orbit(read_tensor(args.file1), read_tensor(args.file2), args.tol)
    return verdict.to_dict(), 0 if verdict.equivalent else 1


def _cmd_reconstruct(args):
    rep = reconstruct(read_tensor(args.file), args.tie_tol, seed=_seed(args))
    return rep.to_dict(), 0


def _cmd_relations(args):
    seed = _seed(args)
    if args.target is not None:
        report = find_relation(find_descriptor(args.target), args.samples,
                               max_joints=args.max_joints, seed=seed)
        return report.to_dict(), 0
    if args.degree is None:
        raise ElastinvError("relations needs --degree or --target")
    reports = certify_table1_degree(args.degree, args.samples, args.max_joints, seed=seed)
    return {"degree": args.degree, "reports": [r.to_dict() for r in reports]}, 0


def _cmd_catalog(args):
    if args.counts:
        return catalog_counts(), 0
    return [d.to_dict() for d in catalog251()], 0


def _positive_float(text):
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _non_negative_int(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="elastinv",
        description="Harmonic decomposition, invariants and orbit tools for 3D elasticity tensors. "
                    "Tensor files are Voigt JSON ({\"voigt\": 6x6}) or 6-row CSV (.csv) "
                    "with raw components C_IJ = E_ijkl.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("decompose", help="harmonic parts (lambda, mu, d1, d2, a)")
    p.add_argument("file", help="tensor file")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("invariants", help="251-slot fingerprint plus J2..J10")
    p.add_argument("file", help="tensor file")
    p.add_argument("--names", action="store_true", help="include the slot names")
    p.set_defaults(func=_cmd_invariants)

    p = sub.add_parser("compare", help="orbit equivalence; exit 0 if equivalent, 1 if not")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL,
                   help=f"per-slot relative tolerance (default {DEFAULT_TOL})")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("reconstruct", help="canonical orbit representative and branch trace")
    p.add_argument("file")
    p.add_argument("--tie-tol", type=_positive_float, default=DEFAULT_TIE_TOL,
                   help=f"relative dead zone for ties and guards (default {DEFAULT_TIE_TOL})")
    p.add_argument("--seed", type=_non_negative_int, default=None,
                   help=f"seed for numeric search starts (fallback: ${SEED_ENV}, then 0)")
    p.set_defaults(func=_cmd_reconstruct)

    p = sub.add_parser("relations", help="exact-rational polynomial relation search")
    p.add_argument("--degree", type=int, help="certify every published entry listed under this degree")
    p.add_argument("--target", help='single invariant, e.g. "tr B" or "J2"')
    p.add_argument("--samples", type=_non_negative_int, default=50,
                   help="number of rational sample points (default 50)")
    p.add_argument("--max-joints", type=_non_negative_int, default=None,
                   help="cap on enumerated joints; truncation is reported")
    p.add_argument("--seed", type=_non_negative_int, default=None,
                   help=f"first sample seed (fallback: ${SEED_ENV}, then 0)")
    p.set_defaults(func=_cmd_relations)

    p = sub.add_parser("catalog", help="the 251 invariant descriptors")
    p.add_argument("--counts", action="store_true", help="per-degree counts only")
    p.set_defaults(func=_cmd_catalog)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result, code = args.func(args)
    except (ElastinvError, ValueError, OSError) as exc:
        print(f"elastinv {args.command}: error: {exc}", file=sys.stderr)
        return 2
    json.dump(result, sys.stdout, ensure_ascii=False)
    sys.stdout.write("\n")
    return code


def main() -> None:
    sys.exit(run())
