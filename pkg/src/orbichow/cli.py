"""Command-line surface: batch computation and verification suites.

Exit codes: 0 success, 1 invalid input, 2 verification failure, 3 internal
cross-check failure.  Output is deterministic for fixed inputs; it goes to
stdout unless --out is given.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .deformed import orbifold_chow
from .fibration import jacobian_algebra_zero_fiber
from .lattice import InternalCheckError, Q, WeightVector
from .presentation import affine_embedding, chain_presentation, is_chain_weights
from .properties import DEFAULT_SEED, run_property_suites
from .rescale import chow_invariance
from .semigroup import s_generators, t_generators, verify_lemma31
from .serialize import dumps, export, frac_str, rerender, vec_strs

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_INTERNAL = 3


def _parse_int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError as exc:
        raise ValueError(f"expected a comma-separated integer list, got {text!r}") from exc


def _parse_cap(text: str) -> Fraction:
    return Q(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbichow",
        description="Exact orbifold Chow rings of weighted projective root stacks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp, need_p=True):
        if need_p:
            sp.add_argument("--p", required=True, help="weights, e.g. 2,3,5")
        sp.add_argument("--w", default=None, help="root multiplicities (default all ones)")
        sp.add_argument("--out", default=None, help="output path (default stdout)")

    sp = sub.add_parser("chow", help="graded Chow quotient")
    add_common(sp)
    sp.add_argument("--degree-cap", default=None, help="rational degree cap (default n+1)")
    sp.add_argument("--format", default="json", choices=["json", "latex"])

    sp = sub.add_parser("fibration", help="affine presentation of the fibration")
    add_common(sp)
    sp.add_argument("--bound", type=int, default=4, help="relation discovery degree bound")
    sp.add_argument(
        "--format", default="json", choices=["json", "singular", "macaulay2", "latex"]
    )

    sp = sub.add_parser("semigroup", help="exponent semigroup generators")
    add_common(sp)
    sp.add_argument("--format", default="json", choices=["json"])

    sp = sub.add_parser("verify", help="verification suites")
    sp.add_argument("--suite", required=True, choices=["lemma31", "properties", "rescale"])
    sp.add_argument("--p", default=None, help="weights, e.g. 2,3,5")
    sp.add_argument("--w", default=None)
    sp.add_argument("--a", type=int, default=None, help="rescale factor")
    sp.add_argument("--bound", type=int, default=None, help="box / case count")
    sp.add_argument("--degree-cap", default=None)
    sp.add_argument("--out", default=None)

    sp = sub.add_parser("export", help="re-render stored JSON output")
    sp.add_argument("input", nargs="?", default=None, help="JSON file (default stdin)")
    sp.add_argument(
        "--format", default="json", choices=["json", "singular", "macaulay2", "latex"]
    )
    sp.add_argument("--out", default=None)
    return parser


def _weights_from_args(args) -> tuple[WeightVector, WeightVector]:
    p = WeightVector.p(_parse_int_list(args.p))
    if getattr(args, "w", None):
        w = WeightVector.w(_parse_int_list(args.w))
        if len(w) != len(p):
            raise ValueError("--w must have the same length as --p")
    else:
        w = WeightVector.w((1,) * len(p))
    return p, w


def _emit(text: str, out_path: Optional[str]) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_chow(args) -> int:
    p, w = _weights_from_args(args)
    cap = _parse_cap(args.degree_cap) if args.degree_cap else None
    quot = orbifold_chow(p, w, cap)
    _emit(export(quot, args.format), args.out)
    return EXIT_OK


def _cmd_fibration(args) -> int:
    p, _ = _weights_from_args(args)
    if is_chain_weights(p):
        pres = chain_presentation(p)
    else:
        pres = affine_embedding(p, args.bound)
    _emit(export(pres, args.format), args.out)
    return EXIT_OK


def _cmd_semigroup(args) -> int:
    p, _ = _weights_from_args(args)
    sg = s_generators(p)
    tg = t_generators(p) if p.n >= 1 else None
    payload = {
        "schema": "semigroup@1",
        "p": list(p.entries),
        "unit_vectors": [vec_strs(u) for u in sg.unit_vectors],
        "fractional": [[vec_strs(g) for g in gens] for gens in sg.fractional],
        "fractional_pruned": [
            {"z_exp": vec_strs(g), "index": i, "multiplier": k}
            for g, i, k in sg.pruned_fractional()
        ],
        "t_generators": [frac_str(v) for v in tg.generators] if tg else [],
        "ell": frac_str(tg.ell) if tg else None,
    }
    _emit(dumps(payload), args.out)
    return EXIT_OK


def _cmd_verify(args) -> int:
    if args.suite == "lemma31":
        if not args.p:
            raise ValueError("--p is required for the lemma31 suite")
        p = WeightVector.p(_parse_int_list(args.p))
        report = verify_lemma31(p, args.bound if args.bound else 4)
        _emit(dumps(report.to_json()), args.out)
        return EXIT_OK if report.ok else EXIT_VERIFY
    if args.suite == "properties":
        cases = args.bound if args.bound else 500
        report = run_property_suites(cases=cases, seed=DEFAULT_SEED)
        _emit(dumps(report.to_json()), args.out)
        return EXIT_OK if report.ok else EXIT_VERIFY
    if args.suite == "rescale":
        if not args.p or args.a is None:
            raise ValueError("--p and --a are required for the rescale suite")
        p = WeightVector.p(_parse_int_list(args.p))
        w = (
            WeightVector.w(_parse_int_list(args.w))
            if args.w
            else WeightVector.w((1,) * len(p))
        )
        cap = _parse_cap(args.degree_cap) if args.degree_cap else None
        report = chow_invariance(w, p, args.a, cap)
        _emit(dumps(report.to_json()), args.out)
        return EXIT_OK if report.ok else EXIT_VERIFY
    raise ValueError(f"unknown suite {args.suite!r}")


def _cmd_export(args) -> int:
    if args.input:
        with open(args.input, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
    else:
        payload = json.load(sys.stdin)
    _emit(rerender(payload, args.format), args.out)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "chow": _cmd_chow,
        "fibration": _cmd_fibration,
        "semigroup": _cmd_semigroup,
        "verify": _cmd_verify,
        "export": _cmd_export,
    }
    try:
        return handlers[args.command](args)
    except InternalCheckError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
