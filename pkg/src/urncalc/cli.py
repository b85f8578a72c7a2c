"""``urncalc`` command-line front end."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Sequence

from .bivariate import bihg, emit_plot_data
from .channels import SignedDist, hypergeometric, multinomial, polya
from .dualbasis import dual_basis
from .errors import IdentityViolation, UrnError
from .multiset import Multiset, parse_multiset
from .render import common_denominator, render
from .signedmodels import ddir_density, dual_multinomial, signed_hypergeometric
from .simplexpoly import poly_to_json, render_poly, simplex_grid
from .verify import SUITES, Sweep, run_suite

DEFAULT_MAX_OVERDRAW = 6


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; that code is reserved for failed identities
    def error(self, message: str):
        raise UsageError(message)


def parse_omega(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(part.strip()) for part in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise UrnError(f"cannot parse point {text!r}: {exc}") from None


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def _output_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=["ket", "json", "csv"], default="ket")
    p.add_argument("--common-denominator", nargs="?", type=_nonneg, const=0, default=None,
                   metavar="N",
                   help="write every weight over N (no value: the least common denominator)")
    return p


def _urn_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--urn", required=True, help='multiset such as "1|0>+1|1>+1|2>" or [1,1,1]')
    p.add_argument("--n", type=_nonneg, default=None,
                   help="number of colours (default: inferred from the urn)")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="urncalc", description="Exact signed urn draws and dual bases.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    out = _output_parent()

    p = sub.add_parser("draw", parents=[out], help="hypergeometric, multinomial or Polya draw")
    p.add_argument("--mode", choices=["hyp", "mn", "polya"], required=True)
    p.add_argument("--urn")
    p.add_argument("--omega", help="point on the simplex, e.g. 1/2,1/6,1/3 (for --mode mn)")
    p.add_argument("--n", type=_nonneg, default=None)
    p.add_argument("--K", type=_nonneg, required=True)

    p = sub.add_parser("sgnhyp", parents=[out, _urn_parent()], help="signed hypergeometric draw")
    p.add_argument("--K", type=_nonneg, required=True)
    p.add_argument("--max-overdraw", type=_nonneg, default=DEFAULT_MAX_OVERDRAW,
                   help=f"largest allowed K - |urn| (default {DEFAULT_MAX_OVERDRAW})")

    p = sub.add_parser("ddir", parents=[_urn_parent()], help="dual Dirichlet density")
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("dmn", parents=[out], help="dual multinomial distribution")
    p.add_argument("--omega", required=True)
    p.add_argument("--K", type=_nonneg, required=True)

    p = sub.add_parser("dualbasis", help="dual basis polynomials")
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--K", type=_nonneg, required=True)
    p.add_argument("--psi", help="print only this member")
    p.add_argument("--format", choices=["text", "json", "csv-grid"], default="text")
    p.add_argument("--grid", type=_nonneg, default=10, help="grid resolution for csv-grid")

    p = sub.add_parser("bihg", parents=[out], help="two-colour signed hypergeometric")
    p.add_argument("--L", type=_nonneg, required=True)
    p.add_argument("--K", type=_nonneg, required=True)
    p.add_argument("--j", type=_nonneg, required=True)

    p = sub.add_parser("bernstein", help="Bernstein basis or its dual as CSV plot data")
    p.add_argument("--K", type=_nonneg, required=True)
    p.add_argument("--dual", action="store_true")
    p.add_argument("--plot-grid", type=_nonneg, default=100)

    p = sub.add_parser("verify", help="run the identity suite")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--n", type=_nonneg, default=3)
    p.add_argument("--max-urn", type=_nonneg, default=4)
    p.add_argument("--max-draw", type=_nonneg, default=5)
    p.add_argument("--max-dagger", type=_nonneg, default=2)
    return parser


def _urn(args) -> Multiset:
    if args.urn is None:
        raise UrnError("--urn is required")
    return parse_multiset(args.urn, args.n)


def _emit_dist(dist: SignedDist, args) -> str:
    den = args.common_denominator
    if den == 0:
        den = common_denominator(dist)
    return render(dist, args.format, den)


def cmd_draw(args) -> str:
    if args.mode == "mn":
        if args.omega is None:
            raise UrnError("--omega is required for --mode mn")
        return _emit_dist(multinomial(args.K, parse_omega(args.omega)), args)
    urn = _urn(args)
    if args.mode == "hyp":
        if args.K > len(urn):
            raise UrnError("overdraw: use sgnhyp")
        return _emit_dist(hypergeometric(args.K, urn), args)
    return _emit_dist(polya(args.K, urn), args)


def cmd_sgnhyp(args) -> str:
    urn = _urn(args)
    if args.K > len(urn) + args.max_overdraw:
        raise UrnError(f"K={args.K} exceeds |urn|+{args.max_overdraw}; raise --max-overdraw")
    return _emit_dist(signed_hypergeometric(args.K, urn), args)


def cmd_ddir(args) -> str:
    urn = _urn(args)
    density = ddir_density(urn).density
    if args.format == "json":
        return json.dumps({"urn": urn.ket(), "density": poly_to_json(density)}, indent=2)
    return render_poly(density)


def cmd_dmn(args) -> str:
    return _emit_dist(dual_multinomial(args.K, parse_omega(args.omega)), args)


def cmd_dualbasis(args) -> str:
    if args.n < 1:
        raise UrnError("--n must be at least 1")
    basis = dual_basis(args.n, args.K)
    members = [parse_multiset(args.psi, args.n)] if args.psi else list(basis)
    for psi in members:
        if len(psi) != args.K:
            raise UrnError(f"{psi.ket()} does not have size {args.K}")
    if args.format == "json":
        return json.dumps([{"psi": psi.ket(), "polynomial": poly_to_json(basis[psi])}
                           for psi in members], indent=2)
    if args.format == "text":
        return "\n".join(f"d[{psi.ket()}] = {render_poly(basis[psi])}" for psi in members)
    if args.grid < 1:
        raise UrnError("--grid must be at least 1")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["psi"] + [f"r{i}" for i in range(args.n)] + ["value"])
    points = list(simplex_grid(args.n, args.grid))
    for psi in members:
        p = basis[psi]
        for pt in points:
            writer.writerow([psi.ket()] + [str(x) for x in pt] + [str(p(pt))])
    return buf.getvalue().rstrip("\n")


def cmd_bihg(args) -> str:
    if args.j > args.L:
        raise UrnError(f"--j {args.j} exceeds --L {args.L}")
    return _emit_dist(bihg(args.L, args.K, args.j), args)


def cmd_bernstein(args) -> str:
    if args.plot_grid < 2:
        raise UrnError("--plot-grid must be at least 2")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["i", "r", "value", "approx"])
    which = "dual" if args.dual else "basis"
    for i, r, v in emit_plot_data(args.K, args.plot_grid, which):
        writer.writerow([i, str(r), str(v), repr(float(v))])
    return buf.getvalue().rstrip("\n")


def cmd_verify(args) -> tuple[str, int]:
    if args.n < 1:
        raise UrnError("--n must be at least 1")
    sweep = Sweep(n=args.n, max_urn=args.max_urn, max_draw=args.max_draw,
                  max_dagger=args.max_dagger)
    report = run_suite(args.suite, sweep)
    return json.dumps(report, indent=2), 0 if report["passed"] else 2


COMMANDS = {
    "draw": cmd_draw,
    "sgnhyp": cmd_sgnhyp,
    "ddir": cmd_ddir,
    "dmn": cmd_dmn,
    "dualbasis": cmd_dualbasis,
    "bihg": cmd_bihg,
    "bernstein": cmd_bernstein,
    "verify": cmd_verify,
}


def run(argv: Sequence[str] | None = None) -> tuple[int, str, str]:
    """Execute a command; returns ``(exit_code, stdout_text, stderr_text)``."""
    try:
        args = build_parser().parse_args(argv)
        result = COMMANDS[args.command](args)
    except UsageError as exc:
        return 1, "", f"usage error: {exc}"
    except (ValueError, ZeroDivisionError, IdentityViolation) as exc:
        return 1, "", str(exc).splitlines()[0] if str(exc) else type(exc).__name__
    except SystemExit as exc:  # --help
        return int(exc.code or 0), "", ""
    if isinstance(result, tuple):
        text, code = result
        return code, text, ""
    return 0, result, ""


def main(argv: Sequence[str] | None = None) -> int:
    code, out, err = run(argv)
    if out:
        print(out.rstrip("\n"))
    if err:
        print(err, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
