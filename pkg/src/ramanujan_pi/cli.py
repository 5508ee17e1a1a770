"""Command-line front end.

Exit codes: 0 verified, 1 verification failures, 2 usage or resource error.
Data goes to stdout, progress and diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import bounds, prime_core, ramanujan, verify
from .bounds import CATALOG, BoundId
from .errors import RamanujanPiError

log = logging.getLogger("ramanujan_pi")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEFAULT_TABLE_N = 100_000
DEFAULT_R_CAP = 100_000_000
DEFAULT_WORK_CAP = 3_000_000


class UsageError(Exception):
    pass


def unsigned(text: str) -> int:
    if not re.fullmatch(r"[0-9]+", text):
        raise argparse.ArgumentTypeError(f"expected an unsigned decimal integer, got {text!r}")
    return int(text)


def positive(text: str) -> int:
    v = unsigned(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a value >= 1, got {text!r}")
    return v


def decimal_fraction(text: str) -> Fraction:
    if not re.fullmatch(r"[0-9]+(\.[0-9]+)?", text):
        raise argparse.ArgumentTypeError(f"expected an unsigned decimal, got {text!r}")
    return Fraction(text)


# --------------------------------------------------------------------------
# data acquisition
# --------------------------------------------------------------------------

def _store(args, limit: int) -> prime_core.PrimeStore:
    path = Path(args.prime_cache) if args.prime_cache else None
    if path is not None and path.exists():
        store = prime_core.load_store(path)
        if store.limit >= limit:
            log.info("loaded prime cache %s (limit %d)", path, store.limit)
            return store
        log.info("prime cache %s too small (%d < %d), re-sieving", path, store.limit, limit)
    log.info("sieving to %d", limit)
    store = prime_core.sieve_to(limit, threads=args.threads)
    if path is not None:
        prime_core.save_store(store, path)
    return store


def _table_for_n(args, N: int):
    """Store and table covering at least n = N."""
    path = Path(args.table) if args.table else None
    need = prime_core.pk_size_estimate(3 * N)
    if path is not None and path.exists():
        store = _store(args, need) if args.prime_cache or args.validate else None
        table = ramanujan.load_table(path, store)
        if table.max_n >= N:
            return store or _store(args, need), table
        log.info("table cache %s stops at n=%d, rebuilding to %d", path, table.max_n, N)
    store = _store(args, need)
    table = ramanujan.compute_table(N, store)
    if path is not None:
        ramanujan.save_table(table, path)
    return store, table


def _table_for_cap(args, cap: int):
    """Store and table holding every R_n <= cap."""
    path = Path(args.table) if args.table else None
    if path is not None and path.exists():
        table = ramanujan.load_table(path)
        if table.r_cap >= cap:
            return _store(args, prime_core.pk_size_estimate(3 * table.max_n)), table
    store = _store(args, ramanujan.cap_sieve_limit(cap))
    table = ramanujan.table_for_cap(store, cap)
    if path is not None:
        ramanujan.save_table(table, path)
    return store, table


# --------------------------------------------------------------------------
# output
# --------------------------------------------------------------------------

def _fmt(v) -> str:
    if isinstance(v, bool) or v is None:
        return str(v).lower() if v is not None else "-"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _print_rows(rows: list[dict], fmt: str, out) -> None:
    if not rows:
        return
    keys = list(rows[0])
    if fmt == "csv":
        out.write(",".join(keys) + "\n")
        for r in rows:
            out.write(",".join(_fmt(r[k]) if r[k] is not None else "" for k in keys) + "\n")
        return
    cells = [[_fmt(r[k]) for k in keys] for r in rows]
    widths = [max(len(k), *(len(c[i]) for c in cells)) for i, k in enumerate(keys)]
    out.write("  ".join(k.rjust(w) for k, w in zip(keys, widths)) + "\n")
    for c in cells:
        out.write("  ".join(v.rjust(w) for v, w in zip(c, widths)) + "\n")


def _emit_report(report: verify.VerificationReport, fmt: str, out) -> None:
    if fmt == "json":
        out.write(report.to_json())
        return
    d = report.as_dict()
    if fmt == "csv":
        out.write(report.to_csv())
        if report.rows:
            _print_rows(report.rows, "csv", out)
        return
    out.write(f"campaign: {d['campaign']}\n")
    for k, v in d["params"].items():
        out.write(f"  {k}: {json.dumps(v)}\n")
    out.write(f"checked: {d['checked']}\nfailures: {len(d['failures'])}\n")
    if d["truncated"]:
        out.write(f"truncated: {len(d['truncated'])} rows\n")
    _print_rows(d["failures"], "table", out)
    if report.rows:
        _print_rows(report.rows, "table", out)
    out.write(f"wall_time_s: {d['wall_time_s']}\n")


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def cmd_gen(args, out) -> int:
    store, table = _table_for_n(args, args.count)
    table = table if table.max_n == args.count else ramanujan.compute_table(args.count, store)
    if args.cache:
        ramanujan.save_table(table, args.cache)
    last = table.get(table.max_n)
    summary = {"N": table.max_n, "R_N": last.r, "piR_N": last.idx, "scan_limit": table.scan_limit}
    if args.format == "json":
        out.write(json.dumps(summary) + "\n")
    elif args.format == "csv":
        out.write(ramanujan.CSV_HEADER + "\n")
        for e in table.entries:
            out.write(f"{e.n},{e.r},{e.idx}\n")
    else:
        for k, v in summary.items():
            out.write(f"{k}: {v}\n")
    return EXIT_OK


def cmd_bounds(args, out) -> int:
    n = args.n
    if n < 2:
        raise UsageError("--n must be >= 2")
    ids = list(CATALOG) if args.all else [BoundId(args.id)]
    if not args.all and n < CATALOG[ids[0]].threshold and not args.probe_below:
        raise UsageError(f"{ids[0]} is proven for n >= {CATALOG[ids[0]].threshold}; pass --probe-below")
    store, table = _table_for_n(args, n)
    rows, status = [], EXIT_OK
    for bid in ids:
        ev = bounds.eval_bound(bid, n, table, store, t=args.t)
        if ev.verdict is False:
            status = EXIT_FAIL
        row = ev.as_dict()
        row["relation"] = _relation(bid, ev)
        rows.append(row)
    if args.format == "json":
        out.write(json.dumps(rows, indent=2) + "\n")
    else:
        _print_rows(rows, args.format, out)
    return status


def _relation(bid, ev) -> str:
    if ev.exact is None:
        return "-"
    if ev.margin == 0:
        return "equality"
    return "holds" if CATALOG[bid].holds(ev.value, ev.exact) else "violated"


def cmd_catalog(args, out) -> int:
    out.write(bounds.catalog_jsonl())
    return EXIT_OK


def cmd_verify(args, out) -> int:
    sub = args.sub
    if sub == "bound":
        spec = CATALOG[BoundId(args.id)]
        if args.n_from < max(2, spec.threshold) and not args.probe_below:
            raise UsageError(f"{spec.id} is proven for n >= {max(2, spec.threshold)}; pass --probe-below")
        store, table = _table_for_n(args, args.n_to)
        report = verify.check_bound_range(spec.id, args.n_from, args.n_to, table, store, args.probe_below, args.t)
    elif sub == "conjecture":
        lo, hi = (args.n, args.n) if args.n is not None else (args.n_from, args.n_to)
        if lo is None or hi is None:
            raise UsageError("give --n or both --from and --to")
        if args.r_cap is not None:
            _, table = _table_for_cap(args, args.r_cap)
        else:
            _, table = _table_for_n(args, args.m * hi)
        report = verify.check_conjecture(args.m, lo, hi, table, r_cap=args.r_cap)
    elif sub == "remark":
        if args.r_cap is not None:
            _, table = _table_for_cap(args, args.r_cap)
        else:
            _, table = _table_for_n(args, args.max_m * args.max_n)
        report = verify.remark_report(args.max_m, args.max_n, table, r_cap=args.r_cap)
        for m, n in report.params["not_in_expected"]:
            case = verify.conjecture_case(m, n, table)
            log.warning("unlisted failure (m=%d, n=%d): slack %d", m, n, case.slack)
        for m, n in report.params["missing_from_expected"]:
            log.warning("listed pair (m=%d, n=%d) does not fail", m, n)
    elif sub == "lemmas":
        store, table = _table_for_n(args, args.n_to)
        r31 = verify.check_lemma_31(table, store, args.n_to)
        r41 = verify.check_lemma_41(table, store, args.n_to)
        report = verify.VerificationReport(
            "lemmas", {"n_to": args.n_to}, r31.checked + r41.checked,
            [dict(f, lemma="lemma_31") for f in r31.failures] + [dict(f, lemma="lemma_41") for f in r41.failures],
            wall_time_s=round(r31.wall_time_s + r41.wall_time_s, 6), unexpected=r31.unexpected + r41.unexpected,
        )
    elif sub == "pi-bounds":
        store = _store(args, args.x_to)
        report = verify.check_pi_bounds(store, args.x_from, args.x_to, args.samples)
    elif sub == "m-schedule":
        store, table = _table_for_n(args, max(args.work_cap, args.n_to))
        _, report = verify.m_schedule(args.n_from, args.n_to, table, store, work_cap=args.work_cap)
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown verify subcommand {sub}")
    _emit_report(report, args.format, out)
    return EXIT_OK if report.ok else EXIT_FAIL


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------

def _common(p):
    p.add_argument("--format", choices=("table", "json", "csv"), default="table")
    p.add_argument("--table", metavar="PATH", help="Ramanujan table CSV cache (read if present, else written)")
    p.add_argument("--prime-cache", metavar="PATH", help="binary prime cache (read if present, else written)")
    p.add_argument("--validate", action="store_true", help="re-check a loaded table against the sieve")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ramanujan-pi", description=__doc__.splitlines()[0])
    parser.add_argument("--threads", type=positive, default=1, help="sieve worker threads")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    cmds = parser.add_subparsers(dest="command", required=True)

    p = cmds.add_parser("gen", help="build the table of R_n and pi(R_n)")
    p.add_argument("--count", type=positive, default=DEFAULT_TABLE_N, help="number of Ramanujan primes")
    p.add_argument("--cache", metavar="PATH", help="write the table as CSV")
    _common(p)
    p.set_defaults(func=cmd_gen)

    p = cmds.add_parser("bounds", help="evaluate catalog bounds at one n")
    p.add_argument("--n", type=unsigned, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--id", choices=[b.value for b in BoundId])
    g.add_argument("--all", action="store_true")
    p.add_argument("--probe-below", action="store_true", help="allow n below the bound's threshold")
    p.add_argument("--t", type=decimal_fraction, default=None, help="parameter of srinivasan_t (> 48/19)")
    _common(p)
    p.set_defaults(func=cmd_bounds)

    p = cmds.add_parser("catalog", help="list the bound catalog as JSON lines")
    p.set_defaults(func=cmd_catalog)

    p = cmds.add_parser("verify", help="run a verification campaign")
    sub = p.add_subparsers(dest="sub", required=True)

    q = sub.add_parser("bound")
    q.add_argument("--id", choices=[b.value for b in BoundId], required=True)
    q.add_argument("--from", dest="n_from", type=unsigned, required=True)
    q.add_argument("--to", dest="n_to", type=unsigned, required=True)
    q.add_argument("--probe-below", action="store_true")
    q.add_argument("--t", type=decimal_fraction, default=None)

    q2 = sub.add_parser("conjecture")
    q2.add_argument("--m", type=positive, required=True)
    q2.add_argument("--n", type=positive)
    q2.add_argument("--from", dest="n_from", type=positive)
    q2.add_argument("--to", dest="n_to", type=positive)
    q2.add_argument("--r-cap", type=positive, default=None, help="only pairs with R_mn <= cap")

    q3 = sub.add_parser("remark")
    q3.add_argument("--max-m", type=positive, required=True)
    q3.add_argument("--max-n", type=positive, required=True)
    q3.add_argument("--r-cap", type=positive, default=None)

    q4 = sub.add_parser("lemmas")
    q4.add_argument("--to", dest="n_to", type=positive, default=DEFAULT_TABLE_N)

    q5 = sub.add_parser("pi-bounds")
    q5.add_argument("--from", dest="x_from", type=unsigned, default=bounds.PI_LOWER_THRESHOLD)
    q5.add_argument("--to", dest="x_to", type=unsigned, default=DEFAULT_R_CAP)
    q5.add_argument("--samples", type=positive, default=10_000)

    q6 = sub.add_parser("m-schedule")
    q6.add_argument("--from", dest="n_from", type=unsigned, default=2)
    q6.add_argument("--to", dest="n_to", type=unsigned, default=1244)
    q6.add_argument("--work-cap", type=positive, default=DEFAULT_WORK_CAP, help="largest table index consulted")

    for q in (q, q2, q3, q4, q5, q6):
        _common(q)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    if getattr(args, "t", None) is not None and args.t <= bounds.T_FLOOR:
        print("error: --t must exceed 48/19", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (RamanujanPiError, MemoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
