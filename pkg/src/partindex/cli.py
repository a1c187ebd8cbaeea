"""Command-line interface.

    partindex check thm1 --max-n 60
    partindex check cor --class Od --d 2 --max-n 40
    partindex scan nonneg --m 4 --max-n 1000
    partindex meander --top 3,2,1,1 --bottom 4,3 --render fig.svg
    partindex table census --class P --max-n 20 --format csv --out -
    partindex expand "1/(q,-q3;q4)" --max-n 30

Exit status: 0 if every requested check passes, 1 if any check fails or
errors, 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import checks, qseries, stats
from .meander import WeightMismatchError, build_meander, count_components, render_meander
from .partitions import parse_parts

PRODUCT_HELP = """\
product grammar (compressed Pochhammer notation, (a;b)_inf = prod_j (1 - a b^j)):
  spec    := factor*                       juxtaposition multiplies
  factor  := group | 1/group | 1/(group group ...)
  group   := (mono, mono, ...; mono)[^k]   e.g. (q,-q2;-q2) or (q;q)^2
  mono    := [-][int][t[int]][q[int]]      e.g. -q3, tq2, 2q
examples:
  1/((q;q4)(-q3;q4))   1/(q,-q3;q4)   (-tq,-q2;q2)   1/(q,tq2;tq2)
"""


class UsageError(Exception):
    pass


def _write(text: str, out: str):
    if out == "-":
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", newline="\n", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {out}: {exc.strerror}") from exc


def _emit_reports(reports, args) -> int:
    if args.json:
        body = [json.loads(r.to_json()) for r in reports]
        print(json.dumps(body if len(body) > 1 else body[0], indent=1))
    else:
        for r in reports:
            print(r.render(verbose=args.verbose))
    return 0 if all(r.ok for r in reports) else 1


def _cmd_check(args) -> int:
    what = args.what
    jobs = args.jobs
    if what == "thm1":
        reports = [checks.check_thm1(args.max_n)]
    elif what == "conj1":
        reports = [checks.check_conj1(args.max_n)]
    elif what == "cor":
        if args.cls is None:
            raise UsageError("check cor needs --class P|D|Od")
        reports = [checks.check_corollary(args.cls, args.max_n, d=args.d, jobs=jobs)]
    elif what == "thm-cnk":
        reports = [checks.check_thm_cnk(args.max_n if args.max_n_given else 25)]
    elif what == "thm3":
        reports = [checks.check_thm3(args.max_k)]
    else:  # all
        reports = [
            checks.check_thm1(args.max_n),
            checks.check_conj1(args.max_n),
            checks.check_corollary("P", args.max_n, jobs=jobs),
            checks.check_corollary("D", args.max_n, jobs=jobs),
            *(checks.check_corollary("Od", args.max_n, d=d, jobs=jobs) for d in (1, 2, 3)),
            checks.check_thm_cnk(25),
            checks.check_thm3(args.max_k),
        ]
    return _emit_reports(reports, args)


def _cmd_scan(args) -> int:
    if args.m < 4:
        raise UsageError(f"--m must be >= 4 (got {args.m}); expand other products with 'partindex expand'")
    if args.what == "nonneg":
        report = checks.scan_nonneg(args.m, args.max_n)
    else:
        if args.max_n < args.m:
            raise UsageError("--max-n must be >= --m for monotone scans")
        report = checks.scan_monotone(args.m, args.max_n)
    return _emit_reports([report], args)


def _cmd_meander(args) -> int:
    try:
        top, bottom = parse_parts(args.top), parse_parts(args.bottom)
        m = build_meander(top, bottom)
    except (ValueError, WeightMismatchError) as exc:
        raise UsageError(str(exc)) from exc
    c = count_components(m)
    info = {
        "top": list(top),
        "bottom": list(bottom),
        "n": m.n,
        "top_edges": m.top_edges,
        "bottom_edges": m.bottom_edges,
        "cycles": c.cycles,
        "paths": c.paths,
        "index": 2 * c.cycles + c.paths - 1,
    }
    if args.json:
        print(json.dumps(info, indent=1))
    else:
        print(f"type {args.top}/{args.bottom}: n={m.n} cycles={c.cycles} paths={c.paths} index={info['index']}")
        print("top edges:    " + " ".join(f"{a}-{b}" for a, b in m.top_edges))
        print("bottom edges: " + " ".join(f"{a}-{b}" for a, b in m.bottom_edges))
    if args.render:
        fmt = args.fmt or ("tikz" if args.render.endswith(".tex") else "svg")
        _write(render_meander(m, fmt), args.render)
    return 0


def build_table(what: str, bound: int, fmt: str, cls_name: str = "P", d: int = 1, jobs=None) -> str:
    """Render an eind, census or cnk table; output is deterministic."""
    if what == "eind":
        rows = []
        for n in range(bound + 1):
            e = stats.e_ind(n)
            rows.append({"n": n, "eind": e, "signed": (-1) ** ((n + 1) // 2) * e, "abs": abs(e)})
        if fmt == "csv":
            return stats._csv(("n", "eind", "signed", "abs"), rows)
        return json.dumps(rows, indent=1) + "\n"
    if what == "census":
        records = stats.census_range(checks.class_from_name(cls_name, d), bound, jobs=jobs)
        return stats.records_to_csv(records) if fmt == "csv" else stats.records_to_json(records)
    if what == "cnk":
        table = stats.cnk_table(bound)
        return stats.cnk_to_csv(table) if fmt == "csv" else stats.cnk_to_json(table)
    raise ValueError(f"unknown table {what!r}")


def _cmd_table(args) -> int:
    bound = args.max_k if args.what == "cnk" else args.max_n
    _write(build_table(args.what, bound, args.format, args.cls or "P", args.d, args.jobs), args.out)
    return 0


def _cmd_expand(args) -> int:
    try:
        spec = qseries.parse_product(args.product)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if spec.bivariate:
        s = qseries.expand_bivariate(spec, args.max_n)
    else:
        s = qseries.expand_product(spec, args.max_n)
    print(json.dumps(s.to_json()))
    return 0


def _positive_env_jobs() -> int:
    try:
        return max(1, int(os.environ.get("PARTINDEX_JOBS", "1")))
    except ValueError:
        return 1


def make_parser() -> argparse.ArgumentParser:
    # accepted before or after the subcommand; SUPPRESS keeps one from clobbering the other
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS,
                        help="worker processes for census work (default: $PARTINDEX_JOBS or 1)")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS,
                        help="print per-n comparison rows")
    p = argparse.ArgumentParser(
        prog="partindex",
        description="Index statistics of partitions, seaweed meanders and q-series identity checks.",
        epilog=PRODUCT_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
        parents=[common],
    )
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="verify an identity on a finite range")
    c.add_argument("what", choices=["thm1", "conj1", "cor", "thm-cnk", "thm3", "all"])
    c.add_argument("--class", dest="cls", choices=["P", "D", "Od"], help="partition class for 'cor'")
    c.add_argument("--d", type=int, default=1, help="modulus parameter of Od (parts = +-1 mod 4d)")
    c.add_argument("--max-n", "--max-q", type=int, default=None,
                   help="largest n (default 60; 25 for thm-cnk)")
    c.add_argument("--max-k", type=int, default=15, help="largest k for thm3")
    c.set_defaults(func=_cmd_check)

    s = sub.add_parser("scan", parents=[common], help="non-falsification scans of the open conjectures",
                       epilog=PRODUCT_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    s.add_argument("what", choices=["nonneg", "monotone"])
    s.add_argument("--m", type=int, required=True, help="modulus, at least 4")
    s.add_argument("--max-n", type=int, default=1000, help="last exponent scanned")
    s.set_defaults(func=_cmd_scan)

    m = sub.add_parser("meander", parents=[common], help="build, count and draw a meander")
    m.add_argument("--top", required=True, help="composition, e.g. 3,2,1,1 or 3|2|1|1")
    m.add_argument("--bottom", required=True, help="composition of the same weight")
    m.add_argument("--render", metavar="PATH", help="write drawing (.svg or .tex); '-' for stdout")
    m.add_argument("--format", dest="fmt", choices=["svg", "tikz"], help="default: from the file suffix")
    m.set_defaults(func=_cmd_meander)

    t = sub.add_parser("table", parents=[common], help="export eind, census or c_n(k) tables")
    t.add_argument("what", choices=["eind", "census", "cnk"])
    t.add_argument("--class", dest="cls", choices=["P", "D", "Od"], help="partition class for 'census'")
    t.add_argument("--d", type=int, default=1, help="modulus parameter of Od")
    t.add_argument("--max-n", type=int, default=20, help="rows n = 0..max-n")
    t.add_argument("--max-k", type=int, default=5, help="largest k for 'cnk' (rows n <= 3k)")
    t.add_argument("--format", choices=["csv", "json"], default="csv")
    t.add_argument("--out", default="-", help="output file, '-' for stdout")
    t.set_defaults(func=_cmd_table)

    e = sub.add_parser("expand", parents=[common], help="expand a product to a given order (JSON)",
                       epilog=PRODUCT_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    e.add_argument("product")
    e.add_argument("--max-n", type=int, default=20, help="truncation order")
    e.set_defaults(func=_cmd_expand)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    args.json = getattr(args, "json", False)
    args.verbose = getattr(args, "verbose", False)
    if getattr(args, "jobs", None) is None:
        args.jobs = _positive_env_jobs()
    if args.command == "check":
        args.max_n_given = args.max_n is not None
        if args.max_n is None:
            args.max_n = 60
    try:
        for name in ("max_n", "max_k"):
            if getattr(args, name, 0) < 0:
                raise UsageError(f"--{name.replace('_', '-')} must be nonnegative")
        if getattr(args, "d", 1) < 1:
            raise UsageError("--d must be >= 1")
        return args.func(args)
    except UsageError as exc:
        print(f"partindex: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"partindex: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
