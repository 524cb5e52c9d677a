"""Command-line front end.

Subcommands: ``engagement``, ``battle``, ``threshold``, ``table``, ``dist``
and ``verify``.  Exit status is 0 on success, 1 when a verification finds a
failure and 2 for invalid arguments.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import __version__
from .battle import LossModel, StateSpaceTooLarge
from .engagement import DiceRule, EngagementError, closed_form_distribution, enumerate_engagement
from .report import (
    battle_report,
    diff_published,
    engagement_table,
    min_attackers,
    threshold_table,
    z_distribution_rows,
)
from .reference import TARGET_PERCENTS
from . import verify as verify_mod

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
FORMATS = ("table", "csv", "json", "rational")


class UsageError(Exception):
    pass


# -- rendering ----------------------------------------------------------------


def _is_exact(value):
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


def _json_value(value):
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        return value
    return value


def _text_value(value, fmt, denominator=None):
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, Fraction):
        if fmt == "rational":
            if denominator and denominator % value.denominator == 0:
                return f"{value * denominator}/{denominator}"
            return f"{value.numerator}/{value.denominator}"
        value = float(value)
    if isinstance(value, float):
        return f"{value:.4f}" if fmt == "table" else repr(value)
    return str(value)


def render(rows: list[dict], fmt: str, columns: list[str], title: str | None = None,
           probability_columns: tuple[str, ...] = (), denominator: int | None = None) -> str:
    """Render homogeneous rows in one of the supported formats.

    ``denominator`` only affects rational output, writing each fraction over
    that common denominator when it divides evenly.
    """
    if fmt == "rational":
        for row in rows:
            for col in probability_columns:
                if not _is_exact(row[col]):
                    raise UsageError(f"rational output needs exact results; {col!r} is floating point")
    if fmt == "json":
        return json.dumps([{c: _json_value(row[c]) for c in columns} for row in rows], indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_text_value(row[c], "csv") for c in columns])
        return buf.getvalue()

    cells = [[_text_value(row[c], fmt, denominator) for c in columns] for row in rows]
    widths = [max(len(c), *(len(r[i]) for r in cells)) if cells else len(c) for i, c in enumerate(columns)]
    lines = []
    if fmt == "table":
        lines.append(f"riskodds {__version__}")
        if title:
            lines.append(title)
    lines.append("  ".join(c.rjust(w) for c, w in zip(columns, widths)))
    for r in cells:
        lines.append("  ".join(v.rjust(w) for v, w in zip(r, widths)))
    return "\n".join(lines) + "\n"


# -- commands -----------------------------------------------------------------


def cmd_engagement(args) -> int:
    rule = DiceRule(args.m, args.n, args.a, args.d, args.k)
    closed = closed_form_distribution(rule).probs
    oracle = enumerate_engagement(rule).probs if args.verify else None
    rows = [{"l": l, "prob": closed[l]} for l in sorted(closed, reverse=True)]
    if oracle is not None:
        for row in rows:
            row["oracle"] = oracle[row["l"]]
            row["agree"] = oracle[row["l"]] == row["prob"]
    columns = ["l", "prob"] + (["oracle", "agree"] if oracle is not None else [])
    title = f"defender losses l for m={rule.m} n={rule.n} a={rule.a} d={rule.d} k={rule.k}"
    # over the raw outcome count, so 2 wins at 3v2 reads 2890/7776
    outcomes = rule.a**rule.m * rule.d**rule.n
    args.out.write(render(rows, args.format, columns, title, ("prob",), outcomes))
    if oracle is not None and oracle != closed:
        return EXIT_FAILED
    return EXIT_OK


def cmd_battle(args) -> int:
    report = battle_report(args.att, args.dfn, args.a, args.d, args.md_policy,
                           exact=True if args.exact else None)
    fields = ["ac_exact", "vc_exact_strict", "vc_exact_lenient", "vc_lower_bound", "vc_upper_bound", "vc_normal"]
    if args.format == "rational" and not report.is_exact:
        raise UsageError("rational output needs exact results; use --exact with at most 40 total units")
    if args.format == "json":
        payload = {
            "att_actual": report.att_actual, "def_actual": report.def_actual,
            "att_virtual": report.att_virtual, "def_virtual": report.def_virtual,
            "a": report.a, "d": report.d, "md_policy": report.md_policy,
            **{f: _json_value(getattr(report, f)) for f in fields},
            "vc": _json_value(report.vc),
            "clt_ok": report.clt_ok,
        }
        args.out.write(json.dumps(payload, indent=2) + "\n")
        return EXIT_OK
    rows = [{"quantity": f, "value": getattr(report, f)} for f in fields]
    if args.format == "rational":
        # the normal approximation is never rational
        rows = [r for r in rows if r["quantity"] != "vc_normal"]
    rows.append({"quantity": "clt_ok", "value": report.clt_ok})
    title = (f"{report.att_actual} attackers vs {report.def_actual} defenders "
             f"(virtual {report.att_virtual} vs {report.def_virtual}), md-policy {report.md_policy}")
    args.out.write(render(rows, args.format, ["quantity", "value"], title))
    return EXIT_OK


def cmd_threshold(args) -> int:
    count = min_attackers(args.dfn, args.target, args.mode, args.a, args.d, args.md_policy)
    rows = [{"def_actual": args.dfn, "target_percent": args.target, "mode": args.mode, "min_attackers": count}]
    if args.format == "table":
        args.out.write(f"{count}\n")
    else:
        args.out.write(render(rows, args.format, list(rows[0])))
    return EXIT_OK


def cmd_table(args) -> int:
    if args.which == "engagement":
        rows = engagement_table(args.a, args.d)
        title = f"engagement odds at a={args.a}, d={args.d}"
        args.out.write(render(rows, args.format, ["m", "n", "k", "l", "prob"], title, ("prob",)))
        return EXIT_OK

    if args.format == "rational":
        raise UsageError("the threshold table holds integers; use table, csv or json")
    if args.diff:
        computed, mismatches = diff_published(args.md_policy)
    else:
        computed, mismatches = threshold_table(md_policy=args.md_policy), None
    rows = []
    for dfn, (vc_row, ac_row) in computed.items():
        for kind, values in (("VC", vc_row), ("AC", ac_row)):
            row = {"defenders": dfn, "odds": kind}
            row.update({f"{p}%": v for p, v in zip(TARGET_PERCENTS, values)})
            rows.append(row)
    columns = ["defenders", "odds"] + [f"{p}%" for p in TARGET_PERCENTS]
    title = "minimum attacking armies for each conquer chance"
    out = render(rows, args.format, columns, title)
    if mismatches is not None:
        cells = 2 * len(computed) * len(TARGET_PERCENTS)
        if args.format == "json":
            payload = {
                "table": json.loads(out),
                "cells": cells,
                "mismatches": [{k: _json_value(v) for k, v in m.items()} for m in mismatches],
            }
            out = json.dumps(payload, indent=2) + "\n"
        else:
            diff_rows = [
                {**m, "odds_at_published": float(m["odds_at_published"]),
                 "odds_at_computed": float(m["odds_at_computed"])}
                for m in mismatches
            ]
            out += f"\n{len(mismatches)} of {cells} cells differ from the published table\n"
            if diff_rows:
                out += render(diff_rows, "csv" if args.format == "csv" else "plain", list(diff_rows[0]))
    args.out.write(out)
    return EXIT_OK


def _parse_model(text):
    try:
        parts = [Fraction(x.strip()) for x in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"cannot parse model {text!r}: {exc}") from None
    if len(parts) != 3:
        raise UsageError("model must be three comma-separated probabilities p,q,r")
    return LossModel(*parts)


def cmd_dist(args) -> int:
    if args.max_m < 1:
        raise UsageError("--max-m must be at least 1")
    model = _parse_model(args.model) if args.model else LossModel.from_dice(args.a, args.d)
    rows = z_distribution_rows(args.max_m, model)
    args.out.write(render(rows, args.format, ["M", "j", "prob", "tail"], "distribution of Z_M",
                          ("prob", "tail")))
    return EXIT_OK


def cmd_verify(args) -> int:
    results = verify_mod.run(args.scope)
    failed = []
    for suite, checks in results.items():
        passed = sum(c.passed for c in checks)
        args.out.write(f"[{suite}] {passed}/{len(checks)} passed\n")
        for c in checks:
            mark = "ok  " if c.passed else "FAIL"
            detail = f" ({c.detail})" if c.detail else ""
            args.out.write(f"  {mark} {c.name}{detail}\n")
            if not c.passed:
                failed.append(f"{suite}: {c.name}")
    if args.scope in ("approx", "all"):
        worst, where = verify_mod.approximation_error()
        args.out.write(f"[finding] max |normal - strict VC| for A+D>14, A,D<=200: {worst:.4f} at A,D={where}\n")
    if failed:
        args.out.write("failing properties:\n" + "".join(f"  {f}\n" for f in failed))
        return EXIT_FAILED
    return EXIT_OK


# -- parser -------------------------------------------------------------------


def _add_format(p, default="table"):
    p.add_argument("--format", choices=FORMATS, default=default)


def _add_sides(p):
    p.add_argument("-a", type=int, default=6, help="sides per attacker die")
    p.add_argument("-d", type=int, default=6, help="sides per defender die")


def _add_policy(p):
    p.add_argument("--md-policy", choices=("strict", "lenient"), default="strict",
                   help="count mutual destruction as an attacker loss (strict) or win (lenient)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="riskodds", description="Exact and approximate RISK battle odds.")
    parser.add_argument("--version", action="version", version=f"riskodds {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("engagement", help="loss distribution of a single engagement")
    p.add_argument("-m", type=int, required=True, help="attacker dice")
    p.add_argument("-n", type=int, required=True, help="defender dice")
    p.add_argument("-k", type=int, required=True, help="comparisons (1 or 2)")
    _add_sides(p)
    _add_format(p)
    p.add_argument("--verify", action="store_true", help="cross-check against full enumeration")
    p.set_defaults(func=cmd_engagement)

    p = sub.add_parser("battle", help="conquer and virtual-conquer odds for one battle")
    p.add_argument("-A", dest="att", type=int, required=True, help="actual attacking armies")
    p.add_argument("-D", dest="dfn", type=int, required=True, help="actual defending armies")
    _add_sides(p)
    _add_policy(p)
    p.add_argument("--exact", action="store_true", help="force rational arithmetic")
    _add_format(p)
    p.set_defaults(func=cmd_battle)

    p = sub.add_parser("threshold", help="minimum attackers for a target chance")
    p.add_argument("-D", dest="dfn", type=int, required=True, help="actual defending armies")
    p.add_argument("-t", "--target", type=float, required=True, help="target chance in percent")
    p.add_argument("--mode", choices=("ac", "vc"), default="ac")
    _add_sides(p)
    _add_policy(p)
    _add_format(p)
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("table", help="regenerate the threshold or engagement tables")
    p.add_argument("which", choices=("vcac", "engagement"))
    _add_sides(p)
    _add_policy(p)
    p.add_argument("--diff", action="store_true", help="compare with the published threshold table")
    _add_format(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("dist", help="distribution of defender losses over M engagements")
    p.add_argument("-M", "--max-m", type=int, required=True)
    _add_sides(p)
    p.add_argument("--model", help="explicit p,q,r (fractions allowed) instead of dice sides")
    _add_format(p, default="csv")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("verify", help="run the oracle and property suites")
    p.add_argument("scope", nargs="?", choices=verify_mod.SCOPES, default="all")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.out = sys.stdout if out is None else out
    try:
        return args.func(args)
    except (UsageError, EngagementError, StateSpaceTooLarge, ValueError) as exc:
        print(f"riskodds {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
