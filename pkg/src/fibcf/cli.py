"""Command-line front end.

Subcommands
    construct   the triple sequence (i, x0, x1, x2, det)
    verify      growth diagnostics with fitted constants in a summary row
    cube        the cube-distance experiment against X^(-delta)
    simul       best simultaneous approximation for each --X bound
    algsearch   best rational / quadratic / cubic-integer approximations

Output is CSV (default) or JSONL; every interval is emitted as a directed-
rounded (lo, hi) pair of decimal strings at a fixed number of significant
digits, so the enclosure guarantee survives the file boundary.  Big
integers are exact decimal strings.  Exit codes: 0 all rows decided,
1 usage error, 2 at least one row undecided at the resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .backend import mpq, num_digits, sci_str
from .cf import get_xi, triple_sequence
from .errors import UndecidedError
from .exact import Params
from .growth import cube_experiment, fit_constants, growth_table
from .search import best_algebraic, best_rational, best_simultaneous

INTERVAL_DIGITS = 25


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; 2 means "undecided rows" here
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _rational(text: str):
    try:
        f = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc
    return mpq(f.numerator, f.denominator)


def _interval_cols(name: str, iv) -> dict:
    if iv is None:
        return {f"{name}_lo": "", f"{name}_hi": ""}
    return {
        f"{name}_lo": sci_str(iv.lo, INTERVAL_DIGITS, roundup=False),
        f"{name}_hi": sci_str(iv.hi, INTERVAL_DIGITS, roundup=True),
    }


def _emit(headers, rows, fmt, out_path):
    if fmt == "csv":
        lines = [",".join(headers)]
        lines += [",".join(str(row.get(h, "")) for h in headers) for row in rows]
    else:
        lines = [json.dumps(row, sort_keys=True, separators=(",", ":")) for row in rows]
    text = "\n".join(lines) + "\n"
    if out_path == "-":
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _cmd_construct(args) -> tuple:
    p = Params(args.a, args.b)
    rows = []
    for t in triple_sequence(p, args.i_max):
        rows.append(
            {
                "type": "row",
                "i": str(t.i),
                "x0_digits": str(num_digits(t.x0)),
                "x0": str(t.x0),
                "x1": str(t.x1),
                "x2": str(t.x2),
                "det": str(t.determinant()),
            }
        )
    headers = ["type", "i", "x0_digits", "x0", "x1", "x2", "det"]
    return headers, rows, 0


def _cmd_verify(args) -> tuple:
    p = Params(args.a, args.b)
    xi = get_xi(p)
    table = growth_table(p, args.i_max, xi=xi, threads=args.threads)
    rows = []
    undecided = 0
    for r in table:
        status = "undecided" if r.undecided else "ok"
        undecided += bool(r.undecided)
        row = {"type": "row", "i": str(r.i), "x_digits": str(r.x_digits)}
        row.update(_interval_cols("E", r.E))
        row.update(_interval_cols("growth", r.growth_ratio))
        row.update(_interval_cols("limit", r.limit_val))
        row.update(_interval_cols("q", r.q_ratio))
        row["status"] = status
        rows.append(row)
    summary = {"type": "summary", "interval_digits": str(INTERVAL_DIGITS)}
    try:
        c1, c2, c3 = fit_constants(table)
        summary["c1"] = sci_str(c1, INTERVAL_DIGITS, roundup=False)
        summary["c2"] = sci_str(c2, INTERVAL_DIGITS, roundup=True)
        summary["c3"] = sci_str(c3, INTERVAL_DIGITS, roundup=True)
        summary["status"] = "ok"
    except (UndecidedError, ValueError):
        summary["c1"] = summary["c2"] = summary["c3"] = ""
        summary["status"] = "unfitted"
    rows.append(summary)
    headers = [
        "type", "i", "x_digits",
        "E_lo", "E_hi", "growth_lo", "growth_hi",
        "limit_lo", "limit_hi", "q_lo", "q_hi",
        "status", "c1", "c2", "c3", "interval_digits",
    ]
    return headers, rows, 2 if undecided else 0


def _cmd_cube(args) -> tuple:
    p = Params(args.a, args.b)
    xi = get_xi(p)
    table = cube_experiment(p, args.i_max, args.delta, xi=xi, threads=args.threads)
    rows = []
    n_pass = n_fail = n_undecided = 0
    for r in table:
        if r.passes is None:
            status = "undecided"
            n_undecided += 1
        elif r.passes:
            status = "pass"
            n_pass += 1
        else:
            status = "fail"
            n_fail += 1
        row = {"type": "row", "i": str(r.i), "x_digits": str(r.x_digits)}
        row.update(_interval_cols("dist", r.cube_dist))
        row.update(_interval_cols("threshold", r.threshold))
        row["status"] = status
        rows.append(row)
    rows.append(
        {
            "type": "summary",
            "n_pass": str(n_pass),
            "n_fail": str(n_fail),
            "n_undecided": str(n_undecided),
            "interval_digits": str(INTERVAL_DIGITS),
        }
    )
    headers = [
        "type", "i", "x_digits",
        "dist_lo", "dist_hi", "threshold_lo", "threshold_hi",
        "status", "n_pass", "n_fail", "n_undecided", "interval_digits",
    ]
    return headers, rows, 2 if n_undecided else 0


def _cmd_simul(args) -> tuple:
    p = Params(args.a, args.b)
    xi = get_xi(p)
    rel = mpq(1, 10 ** args.precision_digits)
    rows = []
    undecided = 0
    for x_bound in args.X:
        row = {"type": "row", "X": str(x_bound)}
        try:
            res = best_simultaneous(xi, x_bound, rel=rel, threads=args.threads)
            row.update(
                {"x0": str(res.x0), "x1": str(res.x1), "x2": str(res.x2)}
            )
            row.update(_interval_cols("delta", res.delta))
            row.update(_interval_cols("normalized", res.normalized))
            row["status"] = "ok"
        except UndecidedError:
            row.update(_interval_cols("delta", None))
            row.update(_interval_cols("normalized", None))
            row.update({"x0": "", "x1": "", "x2": "", "status": "undecided"})
            undecided += 1
        rows.append(row)
    headers = [
        "type", "X", "x0", "x1", "x2",
        "delta_lo", "delta_hi", "normalized_lo", "normalized_hi", "status",
    ]
    return headers, rows, 2 if undecided else 0


def _cmd_algsearch(args) -> tuple:
    p = Params(args.a, args.b)
    xi = get_xi(p)
    rel = mpq(1, 10 ** args.precision_digits)
    rows = []
    undecided = 0
    for kind in ("rational", "quadratic", "cubic_integer"):
        row = {"type": "row", "kind": kind, "H": str(args.H)}
        try:
            if kind == "rational":
                cand = best_rational(xi, args.H, rel=rel)
            else:
                cand = best_algebraic(kind, xi, args.H, rel=rel, threads=args.threads)
            padded = ("",) * (4 - len(cand.coeffs)) + tuple(str(c) for c in cand.coeffs)
            row.update(dict(zip(("c3", "c2", "c1", "c0"), padded)))
            row["degree"] = str(len(cand.coeffs) - 1)
            row["height"] = str(cand.height)
            row.update(_interval_cols("dist", cand.dist))
            row.update(_interval_cols("exponent", cand.exponent))
            row["status"] = "ok"
        except UndecidedError:
            for key in ("c3", "c2", "c1", "c0", "degree", "height"):
                row[key] = ""
            row.update(_interval_cols("dist", None))
            row.update(_interval_cols("exponent", None))
            row["status"] = "undecided"
            undecided += 1
        rows.append(row)
    headers = [
        "type", "kind", "H", "degree", "c3", "c2", "c1", "c0", "height",
        "dist_lo", "dist_hi", "exponent_lo", "exponent_hi", "status",
    ]
    return headers, rows, 2 if undecided else 0


def _add_common(sub):
    sub.add_argument("--a", type=int, required=True, help="first partial quotient value")
    sub.add_argument("--b", type=int, required=True, help="second partial quotient value")
    sub.add_argument("--precision-digits", type=int, default=200,
                     help="base working precision in decimal digits")
    sub.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    sub.add_argument("--threads", type=int, default=1)
    sub.add_argument("--out", default="-", help="output path (default: stdout)")


def build_parser() -> _Parser:
    parser = _Parser(prog="fibcf")
    subs = parser.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("construct", help="triple sequence table")
    _add_common(sp)
    sp.add_argument("--i-max", type=int, required=True)
    sp.set_defaults(fn=_cmd_construct)

    sp = subs.add_parser("verify", help="growth diagnostics table")
    _add_common(sp)
    sp.add_argument("--i-max", type=int, required=True)
    sp.set_defaults(fn=_cmd_verify)

    sp = subs.add_parser("cube", help="cube-distance experiment")
    _add_common(sp)
    sp.add_argument("--i-max", type=int, required=True)
    sp.add_argument("--delta", type=_rational, default=mpq(1, 10))
    sp.set_defaults(fn=_cmd_cube)

    sp = subs.add_parser("simul", help="best simultaneous approximation")
    _add_common(sp)
    sp.add_argument("--X", type=int, action="append", required=True,
                    help="denominator bound (repeatable)")
    sp.set_defaults(fn=_cmd_simul)

    sp = subs.add_parser("algsearch", help="bounded-height algebraic searches")
    _add_common(sp)
    sp.add_argument("--H", type=int, required=True, help="height bound")
    sp.set_defaults(fn=_cmd_algsearch)

    return parser


def _validate(parser, args):
    if args.a == args.b or args.a < 1 or args.b < 1:
        parser.error("--a and --b must be distinct positive integers")
    if args.threads < 1:
        parser.error("--threads must be >= 1")
    if args.precision_digits < 1:
        parser.error("--precision-digits must be >= 1")
    i_max = getattr(args, "i_max", None)
    if args.command in ("construct", "verify") and i_max is not None:
        lo = 1 if args.command == "construct" else 2
        if not lo <= i_max <= 30:
            parser.error(f"--i-max must be in [{lo}, 30]")
    if args.command == "cube":
        if not 2 <= args.i_max <= 25:
            parser.error("--i-max must be in [2, 25]")
        if not 0 < args.delta < 1:
            parser.error("--delta must be in (0, 1)")
    if args.command == "simul" and any(not 1 <= x <= 10**8 for x in args.X):
        parser.error("--X bounds must be in [1, 10^8]")
    if args.command == "algsearch" and args.H < 1:
        parser.error("--H must be >= 1")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _validate(parser, args)
    except SystemExit as exc:
        return int(exc.code or 0)
    headers, rows, code = args.fn(args)
    _emit(headers, rows, args.format, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
