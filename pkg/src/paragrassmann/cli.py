"""Command-line surface.

    pg <command> [--l N] [--q MODE] [--weights SPEC] [--format FMT] [args]

Commands: mul, star, integrate, inner, norm2, kernel, gram, sbt,
witness-negative-norm, report.  Expression arguments accept '-' to read
from stdin.  Exit codes: 0 success, 2 parse/usage error, 3 domain error.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from .algebra import PGAlgebra
from .coherent import sb_transform
from .errors import ParseError, PGError
from .inner import (
    inner_closed,
    negative_norm_witness,
    norm_squared,
    weight_element,
)
from .kernels import gram_matrix, kernel_ah, kernel_bh, kernel_pg
from .parsing import SessionConfig, eval_expression, parse_gaussian
from .printing import print_text, render, scalar_text
from .scalars import GaussianRational


def _common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--l", type=int, default=2, help="nilpotency order (>= 2)")
    sub.add_argument(
        "--q",
        default="symbolic",
        help="q mode: symbolic | real | a nonzero literal like 1/2 or i",
    )
    sub.add_argument(
        "--weights",
        default="symbolic",
        help="weights: symbolic | comma list like 1,1,2 | preset:ones|factorial|qfactorial",
    )
    sub.add_argument(
        "--format",
        dest="fmt",
        choices=("text", "latex", "json"),
        default=None,
        help="output format (default: $PG_FORMAT or text)",
    )


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="pg", description="exact paragrassmann algebra calculator"
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mul", help="product of two expressions")
    _common(p)
    p.add_argument("f")
    p.add_argument("g")

    p = sub.add_parser("star", help="conjugation of an expression")
    _common(p)
    p.add_argument("f")

    p = sub.add_parser("integrate", help="Berezin integral of an expression")
    _common(p)
    p.add_argument("f")

    p = sub.add_parser("inner", help="weighted inner product of two expressions")
    _common(p)
    p.add_argument("f")
    p.add_argument("g")

    p = sub.add_parser("norm2", help="square norm of an expression")
    _common(p)
    p.add_argument("f")

    p = sub.add_parser("kernel", help="reproducing kernel of a space")
    _common(p)
    p.add_argument("--space", choices=("bh", "ah", "pg"), default="bh")

    p = sub.add_parser("gram", help="Gram matrix of the anti-Wick basis")
    _common(p)
    p.add_argument("--det", action="store_true", help="print the determinant only")
    p.add_argument(
        "--dense-oracle",
        action="store_true",
        help="also run the dense elimination and check it agrees",
    )

    p = sub.add_parser("sbt", help="Segal-Bargmann transform of a coordinate vector")
    _common(p)
    p.add_argument("--psi", required=True, help="comma-separated coordinates")

    p = sub.add_parser(
        "witness-negative-norm", help="an element of negative square norm"
    )
    _common(p)

    p = sub.add_parser(
        "report",
        help="write determinant-sign table, Gram CSV and a block-structure figure",
    )
    _common(p)
    p.add_argument("--out-dir", default="pg-report")
    p.add_argument("--lmax", type=int, default=6, help="largest order in the sign table")

    return ap


def _read_expr(text: str) -> str:
    if text == "-":
        return sys.stdin.read()
    return text


def _session(args) -> SessionConfig:
    fmt = args.fmt or os.environ.get("PG_FORMAT", "text")
    return SessionConfig(l=args.l, q=args.q, weights=args.weights, fmt=fmt)


def _run(args) -> int:
    cfg = _session(args)
    cmd = args.command

    if cmd == "mul":
        f = eval_expression(_read_expr(args.f), cfg)
        g = eval_expression(_read_expr(args.g), cfg)
        print(render(f * g, cfg.fmt))
        return 0

    if cmd == "star":
        f = eval_expression(_read_expr(args.f), cfg)
        print(render(f.star(), cfg.fmt))
        return 0

    if cmd == "integrate":
        f = eval_expression(_read_expr(args.f), cfg)
        print(render(f.berezin(), cfg.fmt))
        return 0

    if cmd == "inner":
        f = eval_expression(_read_expr(args.f), cfg)
        g = eval_expression(_read_expr(args.g), cfg)
        print(render(inner_closed(f, g, cfg.weight_spec), cfg.fmt))
        return 0

    if cmd == "norm2":
        f = eval_expression(_read_expr(args.f), cfg)
        print(render(norm_squared(f, cfg.weight_spec), cfg.fmt))
        return 0

    if cmd == "kernel":
        spec = cfg.weight_spec
        if args.space == "bh":
            k = kernel_bh(spec, cfg.ring)
        elif args.space == "ah":
            k = kernel_ah(spec, cfg.ring)
        else:
            k = kernel_pg(spec, cfg.ring)
        print(render(k, cfg.fmt))
        return 0

    if cmd == "gram":
        g = gram_matrix(cfg.weight_spec, cfg.ring)
        if args.det:
            det = g.det("block")
            if args.dense_oracle:
                dense = g.det("dense")
                if det != dense:
                    raise PGError("block and dense determinants disagree")
            sign = g.det_sign()
            body = scalar_text(-det if sign < 0 else det)
            print(("+" if sign > 0 else "-") + body)
            return 0
        if args.dense_oracle and g.inverse("block") != g.inverse("dense"):
            raise PGError("block and dense inverses disagree")
        print(render(g, cfg.fmt))
        return 0

    if cmd == "sbt":
        coords = [parse_gaussian(p.strip()) for p in args.psi.split(",")]
        out = sb_transform(coords, cfg.weight_spec, cfg.algebra)
        print(render(out, cfg.fmt))
        return 0

    if cmd == "witness-negative-norm":
        w = negative_norm_witness(cfg.weight_spec, cfg.algebra)
        n2 = norm_squared(w, cfg.weight_spec)
        print(render(w, cfg.fmt))
        print("norm2 = " + scalar_text(n2))
        return 0

    if cmd == "report":
        from .report import write_report

        paths = write_report(cfg, args.out_dir, args.lmax)
        for p in paths:
            print(p)
        return 0

    raise PGError(f"unknown command {cmd!r}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except PGError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
