"""Command-line surface: counting, verification, bijections, tables.

Exit codes: 0 success, 2 unsupported pair/method, 3 outside a formula's
validity domain, 4 enumeration budget exceeded, 5 verification failure.
Output is a human table by default; --csv, --records (JSON lines), and
--bfile (sequence lines "n value" at fixed m) serve scripts.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
from pathlib import Path

from . import bijections as bij
from .cache import CountCache
from .classify import class_table, classify_all_length3, empirical_wilf_classes
from .core import MultisetPermutation, PatternSet
from .enumeration import count_avoiders
from .errors import (
    BudgetExceeded,
    MsetPermError,
    OutOfDomain,
    Unsupported,
)
from .formulas import REGISTRY, catalog, closed_count, recurrence_count
from .gentree import RULE_PATTERN_PAIRS, builtin_rule, count_at_height
from .growth import growth_csv, growth_table
from .verify import imported_agreement_report, run_suite

AUDIT_RATE = 0.05


def _parse_pair(text: str) -> tuple[str, str]:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if len(parts) != 2:
        raise Unsupported(f"--pair wants two patterns, got {text!r}")
    return parts[0], parts[1]


def _emit(records: list[dict], columns: list[str], args) -> None:
    if getattr(args, "records", False):
        for rec in records:
            print(json.dumps(rec))
    elif getattr(args, "csv", False):
        writer = csv.writer(sys.stdout)
        writer.writerow(columns)
        for rec in records:
            writer.writerow([rec.get(c, "") for c in columns])
    else:
        widths = {c: max([len(c)] + [len(str(r.get(c, ""))) for r in records])
                  for c in columns}
        print("  ".join(c.ljust(widths[c]) for c in columns))
        for rec in records:
            print("  ".join(str(rec.get(c, "")).ljust(widths[c]) for c in columns))


# -- count ---------------------------------------------------------------------

def _rule_for_pair(pair: tuple[str, str], m: int):
    from .classify import canonical_pair
    want = canonical_pair(pair)
    for name, rule_pair in RULE_PATTERN_PAIRS.items():
        if canonical_pair(rule_pair) == want:
            if name == "112-122@m2" and m != 2:
                return None
            return name
    return None


def _count_one(pair: tuple[str, str], n: int, m: int, method: str,
               cache: CountCache | None, rng: random.Random) -> int:
    if cache is not None:
        hit = cache.lookup(pair, n, m, method)
        if hit is not None:
            if rng.random() >= AUDIT_RATE:
                return hit
            fresh = _count_one(pair, n, m, method, None, rng)
            if fresh != hit:
                print(f"cache warning: audit mismatch for {pair} n={n} m={m} "
                      f"{method}: cached {hit}, recomputed {fresh}",
                      file=sys.stderr)
                cache.store(pair, n, m, method, fresh)  # last record wins
            return fresh
    if method == "oracle":
        value = count_avoiders(n, m, PatternSet.of(*pair))
    elif method == "formula":
        value = closed_count(pair, n, m)
    elif method == "recurrence":
        value = recurrence_count(pair, n, m) if n >= 1 else 1
    elif method == "gentree":
        name = _rule_for_pair(pair, m)
        if name is None:
            raise Unsupported(f"no built-in succession rule covers {pair} at m={m}")
        value = count_at_height(builtin_rule(name, m), n)
    else:
        raise Unsupported(f"unknown method {method!r}")
    if cache is not None:
        cache.store(pair, n, m, method, value)
    return value


def cmd_count(args) -> int:
    pair = _parse_pair(args.pair)
    cache = None if args.no_cache else CountCache(
        Path(args.cache) if args.cache else None)
    rng = random.Random()
    if args.bfile:
        if args.nmax is None:
            raise Unsupported("--bfile needs --nmax")
        method = args.method if args.method != "all" else "formula"
        for n in range(1, args.nmax + 1):
            print(f"{n} {_count_one(pair, n, args.m, method, cache, rng)}")
        return 0
    if args.n is None:
        raise Unsupported("--n is required (or use --bfile with --nmax)")
    methods = ["oracle", "formula", "recurrence", "gentree"] \
        if args.method == "all" else [args.method]
    records = []
    values = {}
    for method in methods:
        try:
            value = _count_one(pair, args.n, args.m, method, cache, rng)
        except (Unsupported, OutOfDomain) as exc:
            if args.method == "all":
                records.append({"pair": args.pair, "n": args.n, "m": args.m,
                                "method": method, "count": "-",
                                "note": str(exc)})
                continue
            raise
        values[method] = value
        records.append({"pair": args.pair, "n": args.n, "m": args.m,
                        "method": method, "count": value, "note": ""})
    if args.method != "all":
        if args.records or args.csv:
            _emit(records, ["pair", "n", "m", "method", "count"], args)
        else:
            print(values[args.method])
        return 0
    _emit(records, ["pair", "n", "m", "method", "count", "note"], args)
    distinct = {v for v in values.values()}
    if len(distinct) > 1:
        print("cross-check: MISMATCH", file=sys.stderr)
        return 5
    print(f"cross-check: OK ({len(values)} methods agree)")
    return 0


# -- verify ---------------------------------------------------------------------

def cmd_verify(args) -> int:
    kwargs = {}
    if args.suite in ("table1", "gentree"):
        kwargs = {"n_max": args.nmax or 4, "m_max": args.mmax or 3}
    results = run_suite(args.suite, **kwargs)
    for res in results:
        if args.records:
            print(json.dumps({"suite": res.suite, "name": res.name,
                              "ok": res.ok, "hard": res.hard,
                              "detail": res.detail}))
        else:
            print(res.line())
    if args.suite == "table1" and args.report:
        for row in imported_agreement_report(args.nmax or 4, args.mmax or 3):
            if not row.applicable:
                mark, formula = "n/a", "-"
            else:
                mark, formula = ("ok" if row.agree else "DISAGREES"), row.formula
            print(f"  report ({row.table_pair[0]},{row.table_pair[1]}) "
                  f"n={row.n} m={row.m}: table {formula}, oracle {row.oracle} "
                  f"[{mark}]")
    hard_failures = [r for r in results if r.hard and not r.ok]
    return 5 if hard_failures else 0


# -- bijection -------------------------------------------------------------------

def cmd_bijection(args) -> int:
    kind, direction, text = args.kind, args.direction, args.input
    if kind == "dyck":
        if direction == "fwd":
            print(bij.dyck_to_perm(bij.DyckWord(text)))
        else:
            print(bij.perm_to_dyck(MultisetPermutation.parse(text)))
    elif kind == "labels":
        if direction == "fwd":
            print(bij.perm_to_labels(MultisetPermutation.parse(text)))
        else:
            if args.m is None:
                raise Unsupported("--kind labels --direction inv needs --m")
            print(bij.labels_to_perm(bij.LabelSequence.parse(text, args.m)))
    elif kind == "path":
        if direction == "fwd":
            if args.m is None:
                raise Unsupported("--kind path needs --m")
            print(bij.path_to_labels(bij.LatticePath(text, args.m)))
        else:
            if args.m is None:
                raise Unsupported("--kind path needs --m")
            print(bij.labels_to_path(bij.LabelSequence.parse(text, args.m)))
    elif kind == "simion":
        sigma = MultisetPermutation.parse(text)
        if direction == "fwd":
            print(bij.simion_schmidt_f(sigma))
        else:
            print(bij.simion_schmidt_g(sigma))
    return 0


# -- classify / table / growth ----------------------------------------------------

def cmd_classify(args) -> int:
    classes = classify_all_length3()
    table = class_table()
    records = []
    for cls in table:
        formula = cls["formula"]
        records.append({
            "representative": ",".join(cls["representative"]),
            "orbit_size": cls["orbit_size"],
            "formula": "-" if formula is None else
                       f"{','.join(formula['table_pair'])} [{formula['trust']}]",
            "members": " ".join(",".join(m) for m in cls["members"]),
        })
    _emit(records, ["representative", "orbit_size", "formula", "members"], args)
    total = sum(c["orbit_size"] for c in table)
    print(f"{total} pairs in {len(classes)} classes")
    if args.empirical:
        groups = empirical_wilf_classes(args.nmax or 4, args.mmax or 3)
        print(f"empirical grouping on the grid: {len(groups)} groups")
        for group in groups:
            names = " ".join(f"({c.representative[0]},{c.representative[1]})"
                             for c in group)
            print(f"  {names}")
    return 0


def cmd_table(args) -> int:
    if args.catalog:
        _emit(catalog(), ["pair", "table_pair", "trust", "validity",
                          "servable", "provenance", "note"], args)
        return 0
    n_max, m_max = args.nmax or 4, args.mmax or 3
    records = []
    for entry in sorted(REGISTRY.values(), key=lambda e: e.pair):
        row = {"pair": f"{entry.table_pair[0]},{entry.table_pair[1]}",
               "trust": entry.trust}
        for m in range(2, m_max + 1):
            for n in range(1, n_max + 1):
                key = f"n{n}m{m}"
                if not entry.is_servable() or not entry.validity(n, m):
                    row[key] = "-"
                else:
                    row[key] = entry.evaluator(n, m)
        records.append(row)
    columns = ["pair", "trust"] + [f"n{n}m{m}" for m in range(2, m_max + 1)
                                   for n in range(1, n_max + 1)]
    _emit(records, columns, args)
    return 0


def cmd_rule(args) -> int:
    rule = builtin_rule(args.name, args.m)
    print(rule.describe())
    if args.heights:
        counts = [count_at_height(rule, h) for h in range(args.heights + 1)]
        print("counts by height:", " ".join(str(c) for c in counts))
    return 0


def cmd_growth(args) -> int:
    patterns = PatternSet.of(*[p.strip() for p in args.pattern.split(",") if p.strip()])
    grid = [(n, args.m) for n in range(1, (args.nmax or 5) + 1)]
    rows = growth_table(patterns, grid)
    if args.csv:
        sys.stdout.write(growth_csv(rows))
        return 0
    records = [{"n": r.n, "m": r.m, "count": r.count,
                "ratio": r.formatted_ratio()} for r in rows]
    _emit(records, ["n", "m", "count", "ratio"], args)
    return 0


# -- wiring -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="msetperm",
        description="Exact counting of pattern-avoiding permutations on "
                    "regular multisets.")
    sub = parser.add_subparsers(dest="command", required=True)

    def output_flags(p):
        p.add_argument("--csv", action="store_true", help="CSV output")
        p.add_argument("--records", action="store_true", help="JSON-lines output")

    p = sub.add_parser("count", help="count avoiders of a pattern pair")
    p.add_argument("--pair", required=True, help="two patterns, e.g. 122,312")
    p.add_argument("--n", type=int, help="alphabet size")
    p.add_argument("--m", type=int, required=True, help="common multiplicity")
    p.add_argument("--method", default="formula",
                   choices=["oracle", "formula", "recurrence", "gentree", "all"])
    p.add_argument("--bfile", action="store_true",
                   help="emit 'n value' sequence lines for n = 1..nmax")
    p.add_argument("--nmax", type=int, help="largest n for --bfile")
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("--cache", help="cache file (default: $MSETPERM_CACHE)")
    output_flags(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify", help="run a cross-checking suite")
    p.add_argument("--suite", required=True,
                   choices=["table1", "gentree", "bijections", "growth", "classify"])
    p.add_argument("--nmax", type=int)
    p.add_argument("--mmax", type=int)
    p.add_argument("--report", action="store_true",
                   help="also print the per-cell imported-row report")
    p.add_argument("--records", action="store_true", help="JSON-lines output")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bijection", help="apply one of the correspondences")
    p.add_argument("--kind", required=True,
                   choices=["dyck", "labels", "path", "simion"])
    p.add_argument("--direction", required=True, choices=["fwd", "inv"])
    p.add_argument("--input", required=True)
    p.add_argument("--m", type=int)
    p.set_defaults(func=cmd_bijection)

    p = sub.add_parser("classify", help="print the symmetry classes")
    p.add_argument("--empirical", action="store_true",
                   help="also group classes by counting vectors")
    p.add_argument("--nmax", type=int)
    p.add_argument("--mmax", type=int)
    output_flags(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("table", help="evaluate the formula catalog on a grid")
    p.add_argument("--nmax", type=int)
    p.add_argument("--mmax", type=int)
    p.add_argument("--catalog", action="store_true",
                   help="print catalog metadata instead of values")
    output_flags(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("rule", help="print a succession rule's grammar")
    p.add_argument("--name", required=True, choices=sorted(RULE_PATTERN_PAIRS))
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--heights", type=int,
                   help="also print node counts up to this height")
    p.set_defaults(func=cmd_rule)

    p = sub.add_parser("growth", help="growth-ratio table for a pattern set")
    p.add_argument("--pattern", required=True,
                   help="comma-separated patterns, e.g. 212 or 122,123")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--nmax", type=int)
    output_flags(p)
    p.set_defaults(func=cmd_growth)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Unsupported as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return 2
    except OutOfDomain as exc:
        print(f"out of domain: {exc}", file=sys.stderr)
        return 3
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 4
    except MsetPermError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
