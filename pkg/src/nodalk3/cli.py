"""Command-line front end.

Subcommands: classify, search, walls, pell, descent.  All structured output
is key-sorted JSON; the walls subcommand additionally writes a deterministic
SVG.  Exit codes: 0 for any successful run (either classification outcome),
2 for invalid input, 3 for an internal invariant breach.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .lattice import (
    LatticeError,
    NSLattice,
    ProblemInstance,
    is_minimal_pell_pair,
    pell_solutions,
)
from .report import ReportError, render_walls
from .search import (
    Candidate,
    InternalInvariantError,
    Verdict,
    classify_with_search,
    default_bounds,
    search_all,
)
from .splitting import SplittingError, SplittingType, descends, hom_criterion_agrees, hom_dim_on_l

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_INVARIANT = 3


class InputError(ValueError):
    """Invalid command-line input (exit code 2)."""


def _instance_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--h2", type=int, required=True, help="self-intersection H^2")
    sub.add_argument("--r", type=int, required=True, help="rank")
    sub.add_argument("--d", type=int, required=True, help="c1 = d*H")
    sub.add_argument("--a", type=int, required=True, help="degree component")
    sub.add_argument(
        "--cl-ne-pic",
        action="store_true",
        help="class group strictly contains the Picard group",
    )


def _build_instance(args: argparse.Namespace) -> ProblemInstance:
    lattice = NSLattice(args.h2, class_group_nontrivial=args.cl_ne_pic)
    return ProblemInstance(lattice, args.r, args.d, args.a)


def _instance_doc(inst: ProblemInstance) -> dict:
    return {
        "h2": inst.lattice.h_squared,
        "cl_ne_pic": inst.lattice.class_group_nontrivial,
        "r": inst.r,
        "d": inst.d,
        "a": inst.a,
    }


def _parse_rational(text: str, name: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{name}: expected a rational like 1/100, got {text!r}") from exc
    return value


def _candidate_doc(cand: Candidate, verdict: Verdict) -> dict:
    return {
        "k1": cand.k1,
        "e1": cand.e1,
        "m": str(cand.m),
        "kind": cand.kind.value,
        "passed": verdict.passed,
        "failures": list(verdict.failures),
    }


def _emit(doc: dict, out: str | None) -> None:
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_classify(args: argparse.Namespace) -> int:
    inst = _build_instance(args)
    classification, search = classify_with_search(inst)
    h2 = inst.lattice.h_squared
    if inst.lattice.class_group_nontrivial:
        mod8_note = f"H^2 = {h2} = 2 (mod 8), so Cl != Pic is admissible"
    else:
        mod8_note = f"H^2 = {h2}; Cl = Pic, no half-integral classes"
    doc = {
        "instance": _instance_doc(inst),
        "spherical_check": True,
        "gcd_check": True,
        "outcome": classification.outcome.value,
        "reason": classification.reason,
        "mod8_note": mod8_note,
        "survivors": [_candidate_doc(c, v) for c, v in search.survivors],
    }
    _emit(doc, args.out)
    return EXIT_OK


def cmd_search(args: argparse.Namespace) -> int:
    inst = _build_instance(args)
    bk, be = default_bounds(inst)
    bound_k1 = args.k1_max if args.k1_max is not None else bk
    bound_e1 = args.e1_max if args.e1_max is not None else be
    if bound_k1 < 1 or bound_e1 < 1:
        raise InputError("search bounds must be positive")
    result = search_all(inst, bound_k1, bound_e1, audit=args.audit)
    doc = {
        "instance": _instance_doc(inst),
        "bounds": {"k1_max": bound_k1, "e1_max": bound_e1},
        "survivors": [_candidate_doc(c, v) for c, v in result.survivors],
        "for_u_survivors": [_candidate_doc(c, v) for c, v in result.for_u_survivors],
        "for_t_survivors": [_candidate_doc(c, v) for c, v in result.for_t_survivors],
        "rank_zero": [
            {"m": m, "passed": v.passed, "failures": list(v.failures)}
            for m, v in result.rank_zero
        ],
    }
    if args.audit:
        doc["audit"] = [_candidate_doc(c, v) for c, v in result.audit]
    _emit(doc, args.out)
    return EXIT_OK


def cmd_walls(args: argparse.Namespace) -> int:
    inst = _build_instance(args)
    if not args.out:
        raise InputError("walls requires --out (SVG is only written to a file)")
    eps = _parse_rational(args.eps, "--eps")
    epsp = _parse_rational(args.epsp, "--epsp")
    if not (eps > epsp > 0):
        raise InputError("need eps > epsp > 0")
    if args.m_min > args.m_max:
        m_values: list[int] = []
    else:
        m_values = list(range(args.m_min, args.m_max + 1))
    svg, sidecar = render_walls(inst, m_values, eps, epsp)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(svg)
    with open(args.out + ".json", "w", encoding="utf-8") as fh:
        fh.write(json.dumps(sidecar, sort_keys=True, indent=2) + "\n")
    return EXIT_OK


def cmd_pell(args: argparse.Namespace) -> int:
    if args.r < 1:
        raise InputError(f"r must be positive, got {args.r}")
    if args.bound < 1:
        raise InputError(f"bound must be positive, got {args.bound}")
    doc = {
        "r": args.r,
        "bound": args.bound,
        "equation": f"x^2 - {args.r}*x*y + y^2 = 1",
        "solutions": [list(pair) for pair in pell_solutions(args.r, args.bound)],
        "minimal": is_minimal_pell_pair(args.r),
    }
    _emit(doc, args.out)
    return EXIT_OK


def cmd_descent(args: argparse.Namespace) -> int:
    try:
        parts = [int(p) for p in args.splitting.split(",")]
    except ValueError as exc:
        raise InputError(f"--splitting: expected comma-separated integers, got {args.splitting!r}") from exc
    s = SplittingType(parts)
    zero_sum = s.is_zero_sum()
    if args.require_zero_sum and not zero_sum:
        raise InputError("criterion requires c_1.L = 0")
    doc = {
        "splitting": list(s.parts),
        "sum": sum(s.parts),
        "descends": descends(s) if zero_sum else None,
        "hom_dim_twist_minus2": hom_dim_on_l(s, -2),
        "criterion_agrees": hom_criterion_agrees(s) if zero_sum else None,
    }
    _emit(doc, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nodalk3",
        description="Stable spherical sheaves on nodal K3 surfaces: "
        "classification, wall search, diagrams, Pell and descent queries.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("classify", help="decide emptiness of the moduli space")
    _instance_args(p)
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.set_defaults(func=cmd_classify)

    p = subs.add_parser("search", help="exhaustive destabilizer candidate sweep")
    _instance_args(p)
    p.add_argument("--k1-max", type=int, help="bound on |k1| (default 12)")
    p.add_argument("--e1-max", type=int, help="bound on |e1| (default 4r+4)")
    p.add_argument("--audit", action="store_true", help="list every candidate with its verdict")
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.set_defaults(func=cmd_search)

    p = subs.add_parser("walls", help="render the wall diagram as SVG")
    _instance_args(p)
    p.add_argument("--eps", required=True, help='rational eps, e.g. "1/100"')
    p.add_argument("--epsp", required=True, help='rational epsp, e.g. "1/1000000"')
    p.add_argument("--m-min", type=int, default=-3, help="smallest m for W_m (default -3)")
    p.add_argument("--m-max", type=int, default=3, help="largest m for W_m (default 3)")
    p.add_argument("--out", required=True, help="SVG output path; sidecar goes to <out>.json")
    p.set_defaults(func=cmd_walls)

    p = subs.add_parser("pell", help="solutions of x^2 - r*x*y + y^2 = 1")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--bound", type=int, default=10, help="search window on |x|, |y|")
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.set_defaults(func=cmd_pell)

    p = subs.add_parser("descent", help="splitting-type descent criterion")
    p.add_argument("--splitting", required=True, help="comma list a1,a2,...")
    p.add_argument(
        "--require-zero-sum",
        action="store_true",
        help="reject splittings with nonzero total degree",
    )
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.set_defaults(func=cmd_descent)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, LatticeError, SplittingError, ReportError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except InternalInvariantError as exc:
        print(f"internal invariant breach: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
