"""Command line front end.

    graphcond count SPEC
    graphcond verify SUITE [--seed N] [--trials N] [--k N] [--max-size N] ...
    graphcond table FAMILY [--max-size N] [--m M --n N] [--oracle]
    graphcond render SPEC [--format ascii|svg] [--out PATH]

SPEC is inline JSON, a file path, or ``-`` for standard input.  A region spec
looks like ``{"family": "hexagon", "params": {"a": 1, "b": 1, "c": 1}}``; a
graph spec has ``vertices`` and ``edges`` keys.

Exit codes: 0 success, 1 a nonzero residual, 2 malformed input or range
error, 3 a resource cap was hit, 4 an I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import os
import sys
import time
from pathlib import Path

from .exact import scalar_to_str
from .formulas import (
    FormulaError,
    clp_formula,
    count_h_kl,
    count_h_prime_kl,
    eisenkolbl_formula,
    macmahon,
)
from .graph import GraphError, graph_from_json
from .lattice import (
    RegionError,
    count_tilings,
    eisenkolbl_region,
    h_kl_region,
    h_prime_kl_region,
    hexagon,
    region_from_spec,
    render,
    t_region,
)
from .matching import StateLimitExceeded, count_matchings_fast
from .suites import SUITES, run_suite, summarize

EXIT_OK, EXIT_RESIDUAL, EXIT_MALFORMED, EXIT_CAP, EXIT_IO = 0, 1, 2, 3, 4

CAPS_ENV = "GRAPHCOND_CAPS"
DEFAULT_CAPS = {"max_cells": 2000, "max_vertices": 2000, "max_k": 8, "max_states": 4_000_000}

VERIFY_SUITES = (
    "kuo4", "thm21", "prop22", "cor24", "eisenkolbl", "thm41", "prop42", "recurrence48", "gauss",
)
TABLES = ("macmahon", "clp", "eisenkolbl", "prop42")


class Malformed(Exception):
    pass


class CapExceeded(Exception):
    pass


def parse_caps(text: str | None) -> dict[str, int]:
    """``key=value[,key=value]`` over the keys of DEFAULT_CAPS."""
    caps: dict[str, int] = {}
    if not text:
        return caps
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        key, sep, val = item.partition("=")
        key = key.strip().replace("-", "_")
        if not sep or key not in DEFAULT_CAPS:
            raise Malformed(f"bad cap {item!r}; expected key=value with key in {sorted(DEFAULT_CAPS)}")
        try:
            caps[key] = int(val)
        except ValueError as exc:
            raise Malformed(f"cap {key} needs an integer, got {val!r}") from exc
    return caps


def resolve_caps(flag: str | None) -> dict[str, int]:
    caps = dict(DEFAULT_CAPS)
    caps.update(parse_caps(os.environ.get(CAPS_ENV)))
    caps.update(parse_caps(flag))
    return caps


def _read_spec(text: str) -> dict:
    if text == "-":
        raw = sys.stdin.read()
    elif text.lstrip().startswith("{"):
        raw = text
    else:
        try:
            raw = Path(text).read_text()
        except OSError as exc:
            raise Malformed(f"cannot read spec file {text!r}: {exc}") from exc
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise Malformed(f"malformed JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise Malformed("spec must be a JSON object")
    return data


def _region(spec: dict, caps: dict):
    mr = region_from_spec(spec)
    if len(mr.region) > caps["max_cells"]:
        raise CapExceeded(f"region has {len(mr.region)} cells, cap is {caps['max_cells']}")
    k = spec.get("params", {}).get("k")
    if isinstance(k, int) and k > caps["max_k"]:
        raise CapExceeded(f"k={k} exceeds cap {caps['max_k']}")
    return mr


# ---------------------------------------------------------------------------
# subcommands


def cmd_count(args, out) -> int:
    caps = resolve_caps(args.caps)
    spec = _read_spec(args.spec)
    if "vertices" in spec:
        graph = graph_from_json(spec)
        if graph.n > caps["max_vertices"]:
            raise CapExceeded(f"graph has {graph.n} vertices, cap is {caps['max_vertices']}")
        value = count_matchings_fast(graph, max_states=caps["max_states"])
    else:
        mr = _region(spec, caps)
        value = count_tilings(mr.region, max_states=caps["max_states"])
    print(scalar_to_str(value), file=out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    caps = resolve_caps(args.caps)
    if args.k is not None and not 1 <= args.k <= caps["max_k"]:
        raise Malformed(f"--k must lie in [1, {caps['max_k']}]")
    if args.trials is not None and args.trials < 1:
        raise Malformed("--trials must be positive")
    options = {
        "seed": args.seed,
        "trials": args.trials,
        "k": args.k,
        "max_size": args.max_size,
        "kmax": args.kmax,
        "zmax": args.zmax,
    }
    start = time.perf_counter()
    outcomes = run_suite(args.suite, **options)
    elapsed = time.perf_counter() - start
    passed, failed = summarize(outcomes)
    if args.format == "json":
        report = {
            "suite": args.suite,
            "seed": args.seed,
            "options": {k: v for k, v in options.items() if v is not None},
            "passed": passed,
            "failed": failed,
            "instances": [
                {"key": list(map(str, o.key)), "ok": o.ok, "detail": o.detail, **({} if o.ok else {"replay": o.replay})}
                for o in outcomes
            ],
        }
        json.dump(report, out, indent=1)
        out.write("\n")
    else:
        for o in outcomes:
            print(f"{'PASS' if o.ok else 'FAIL'} {' '.join(map(str, o.key))} {o.detail}", file=out)
            if not o.ok:
                print("  replay: " + json.dumps(o.replay, sort_keys=True), file=out)
        print(
            f"suite={args.suite} seed={args.seed} passed={passed} failed={failed} time={elapsed:.2f}s",
            file=out,
        )
    return EXIT_OK if failed == 0 else EXIT_RESIDUAL


def _table_rows(args):
    n_max = 3 if args.max_size is None else args.max_size
    if n_max < 0:
        raise Malformed("--max-size must be nonnegative")
    if args.family == "macmahon":
        header = ["a", "b", "c", "formula"]
        for a, b, c in itertools.product(range(n_max + 1), repeat=3):
            row = [a, b, c, macmahon(a, b, c)]
            if args.oracle:
                row.append(count_tilings(hexagon(a, b, c)))
            yield header, row
    elif args.family == "clp":
        if args.m is None or args.n is None:
            raise Malformed("table clp needs --m and --n")
        if args.m < 0 or args.n < 0:
            raise Malformed("--m and --n must be nonnegative")
        header = ["m", "n", "xs", "formula"]
        for xs in itertools.combinations(range(1, args.m + args.n + 1), args.n):
            row = [args.m, args.n, " ".join(map(str, xs)), clp_formula(args.m, args.n, xs)]
            if args.oracle:
                row.append(count_tilings(t_region(args.m, args.n, xs)))
            yield header, row
    elif args.family == "eisenkolbl":
        header = ["a", "b", "c", "r", "s", "t", "formula"]
        for a, b, c in itertools.product(range(n_max + 1), repeat=3):
            for r, s, t in itertools.product(range(a + 3), range(b + 3), range(c + 3)):
                row = [a, b, c, r, s, t, eisenkolbl_formula(a, b, c, r, s, t)]
                if args.oracle:
                    row.append(count_tilings(eisenkolbl_region(a, b, c, r, s, t)))
                yield header, row
    elif args.family == "prop42":
        kmax = 2 if args.kmax is None else args.kmax
        header = ["region", "x", "y", "z", "k", "l", "formula"]
        for x, y, z in itertools.product(range(n_max + 1), repeat=3):
            for k in range(kmax + 1):
                for l in range(z + k + 1):
                    for name, fn, build in (
                        ("hkl", count_h_kl, h_kl_region),
                        ("hkl_prime", count_h_prime_kl, h_prime_kl_region),
                    ):
                        row = [name, x, y, z, k, l, fn(x, y, z, k, l)]
                        if args.oracle:
                            row.append(count_tilings(build(x, y, z, k, l)))
                        yield header, row
    else:
        raise Malformed(f"unknown table {args.family!r}")


def cmd_table(args, out) -> int:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    wrote_header = False
    for header, row in _table_rows(args):
        if not wrote_header:
            writer.writerow(header + (["oracle"] if args.oracle else []))
            wrote_header = True
        writer.writerow(row)
    _emit(buf.getvalue(), args.out, out)
    return EXIT_OK


def cmd_render(args, out) -> int:
    caps = resolve_caps(args.caps)
    spec = _read_spec(args.spec)
    mr = _region(spec, caps)
    marked = [] if args.no_marks else list(mr.marks.values())
    text = render(mr.region, args.format, marked)
    _emit(text, args.out, out)
    return EXIT_OK


def _emit(text: str, dest: str | None, out) -> None:
    if dest is None or dest == "-":
        out.write(text)
        return
    try:
        Path(dest).write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write {dest!r}: {exc.strerror or exc}") from exc


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="graphcond",
        description="Exact perfect-matching and lozenge-tiling counts, and checks of condensation identities.",
    )
    sub = p.add_subparsers(dest="command", required=True)
    caps_help = f"resource caps key=value,... (keys: {', '.join(DEFAULT_CAPS)}); defaults from ${CAPS_ENV}"

    c = sub.add_parser("count", help="count tilings of a region or matchings of a graph")
    c.add_argument("spec", help="JSON spec, a file path, or - for stdin")
    c.add_argument("--caps", help=caps_help)
    c.set_defaults(func=cmd_count)

    v = sub.add_parser("verify", help="run a verification sweep")
    v.add_argument("suite", choices=sorted(set(VERIFY_SUITES) | set(SUITES)))
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--trials", type=int)
    v.add_argument("--k", type=int)
    v.add_argument("--max-size", type=int)
    v.add_argument("--kmax", type=int)
    v.add_argument("--zmax", type=int)
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--caps", help=caps_help)
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("table", help="CSV table of formula values")
    t.add_argument("family", choices=TABLES)
    t.add_argument("--max-size", type=int)
    t.add_argument("--kmax", type=int)
    t.add_argument("--m", type=int)
    t.add_argument("--n", type=int)
    t.add_argument("--oracle", action="store_true", help="add an oracle count column")
    t.add_argument("--format", choices=("csv",), default="csv")
    t.add_argument("--out", help="output path, or - for stdout (default)")
    t.set_defaults(func=cmd_table)

    r = sub.add_parser("render", help="draw a region")
    r.add_argument("spec", help="JSON region spec, a file path, or - for stdin")
    r.add_argument("--format", choices=("ascii", "svg"), default="ascii")
    r.add_argument("--out", help="output path, or - for stdout (default)")
    r.add_argument("--no-marks", action="store_true", help="do not highlight marked cells")
    r.add_argument("--caps", help=caps_help)
    r.set_defaults(func=cmd_render)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_MALFORMED
    try:
        return args.func(args, out)
    except (Malformed, RegionError, GraphError, FormulaError, ValueError, TypeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except (CapExceeded, StateLimitExceeded) as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
