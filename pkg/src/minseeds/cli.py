"""Command-line front end.

Exit status: 0 on success, 1 when a seed set or statistic fails validation,
2 on bad input (unknown names, unreadable files, malformed options).
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional, Sequence

from . import bench
from .graph import GraphFormatError, compute_stats, load_graph
from .heuristics import HEURISTICS
from .oracle import OracleError, OracleLimits, exact_min_seed, order_dependent_subsets, validate_seed_set

EXIT_OK, EXIT_INVALID, EXIT_INPUT = 0, 1, 2

log = logging.getLogger("minseeds")


class InputError(Exception):
    pass


def read_config(path: str) -> dict[str, str]:
    """Flat ``key = value`` file; keys are option names without leading dashes."""
    out: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise InputError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out


def _config_defaults(parser: argparse.ArgumentParser, values: dict[str, str]) -> None:
    known = {a.dest: a for a in parser._actions}
    for key, raw in values.items():
        if key == "p" and "p" not in known:
            key = "p_modes"
        action = known.get(key)
        if action is None:
            raise InputError(f"unknown config key {key!r}")
        if isinstance(action, (argparse._StoreTrueAction, argparse._StoreFalseAction)):
            flag = raw.lower() in ("1", "true", "yes", "on")
            value = flag if isinstance(action, argparse._StoreTrueAction) else not flag
        elif isinstance(action, argparse._AppendAction):
            value = [v.strip() for v in raw.split(",") if v.strip()]
        elif action.type is not None:
            value = action.type(raw)
        else:
            value = raw
        parser.set_defaults(**{key: value})


def _thresholds(sub: argparse.ArgumentParser, p_default: Optional[str] = "3") -> None:
    sub.add_argument("--theta", type=float, default=0.4, help="influence fraction (default 0.4)")
    sub.add_argument("--alpha", type=float, default=0.6, help="activation fraction (default 0.6)")
    if p_default is not None:
        sub.add_argument("--p", default=p_default, help="propagation range: integer, 'diameter' or 'unbounded'")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="minseeds", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    subs = parser.add_subparsers(dest="command", required=True)

    st = subs.add_parser("stats", help="network statistics for every dataset of a manifest")
    st.add_argument("manifest", nargs="?", help="JSON manifest (default: bundled)")
    st.add_argument("--format", choices=("csv", "markdown"), default="markdown")

    run = subs.add_parser("run", help="build seed sets for one or all datasets")
    run.add_argument("--config", help="key=value file with defaults for these options")
    run.add_argument("--manifest", help="JSON manifest (default: bundled)")
    run.add_argument("--dataset", default="all")
    run.add_argument("--heuristic", default="all", help=f"one of {', '.join(HEURISTICS)} or 'all'")
    _thresholds(run)
    run.add_argument("--no-prune", dest="prune", action="store_false")
    run.add_argument("--workers", type=int, default=1)
    run.add_argument("--show-seeds", action="store_true")

    b = subs.add_parser("bench", help="full grid rendered as a comparison table")
    b.add_argument("--config", help="key=value file with defaults for these options")
    b.add_argument("--manifest", help="JSON manifest (default: bundled)")
    b.add_argument("--reference", help="reference CSV (default: bundled reference sizes)")
    b.add_argument("--no-reference", action="store_true")
    b.add_argument("--out", help="report path (default: stdout)")
    b.add_argument("--format", choices=("csv", "markdown"), default="csv")
    b.add_argument("--heuristic", default="all")
    _thresholds(b, p_default=None)
    b.add_argument("--p", action="append", dest="p_modes", help="repeatable; default: 3 and diameter")
    b.add_argument("--no-prune", dest="prune", action="store_false")
    b.add_argument("--workers", type=int, default=1)
    b.add_argument("--timings", help="also write per-record runtimes to this CSV")
    b.add_argument("--skip-missing", action="store_true", help="ignore manifest entries whose file is absent")

    o = subs.add_parser("oracle", help="exact minimum seed set for a tiny graph")
    o.add_argument("--graph", required=True)
    o.add_argument("--format", choices=("edgelist", "mtx"), default="edgelist")
    _thresholds(o)
    o.add_argument("--max-vertices", type=int, default=16)
    o.add_argument("--check-orders", action="store_true", help="also search for order-dependent subsets (n <= 8)")
    return parser


def _manifest(path: Optional[str], skip_missing: bool = False) -> bench.DatasetManifest:
    if path is None:
        return bench.default_manifest()
    manifest = bench.load_manifest(path, require_files=not skip_missing)
    if skip_missing:
        for name in manifest.missing():
            log.warning("skipping %s: file not found", name)
        manifest = manifest.present()
    return manifest


def _heuristics(value: str) -> list[str]:
    if value == "all":
        return list(HEURISTICS)
    names = [v.strip() for v in value.split(",") if v.strip()]
    for n in names:
        if n not in HEURISTICS:
            raise InputError(f"unknown heuristic {n!r}")
    return names


def cmd_stats(args) -> int:
    manifest = _manifest(args.manifest)
    rows, failed = [], False
    for entry in manifest.entries:
        stats = compute_stats(load_graph(entry.path, entry.format))
        shown = stats.rounded()
        status = ""
        if entry.expected:
            bad = bench.compare_stats(stats, entry.expected)
            status = "ok" if not bad else "MISMATCH " + " ".join(f"{k}={o}!={e}" for k, (o, e) in bad.items())
            failed |= bool(bad)
        rows.append([entry.name] + [str(shown[k]) for k in bench.STAT_FIELDS] + [status])
    header = ["dataset", *bench.STAT_FIELDS, "check"]
    if args.format == "csv":
        print(",".join(header))
        for r in rows:
            print(",".join(r))
    else:
        print("| " + " | ".join(header) + " |")
        print("|" + "---|" * len(header))
        for r in rows:
            print("| " + " | ".join(r) + " |")
    return EXIT_INVALID if failed else EXIT_OK


def cmd_run(args) -> int:
    manifest = _manifest(args.manifest)
    if args.dataset != "all":
        try:
            manifest = bench.DatasetManifest([manifest.get(n.strip()) for n in args.dataset.split(",")])
        except KeyError as exc:
            raise InputError(str(exc.args[0])) from None
    cfg = bench.RunConfig(args.theta, args.alpha, args.p)
    records = bench.run_experiment(manifest, _heuristics(args.heuristic), [cfg], args.prune, args.workers)
    status = EXIT_OK
    print("dataset\theuristic\tp\traw\tpruned\tvalid\tms")
    for r in records:
        if r.error:
            print(f"{r.dataset}\t{r.heuristic}\t{r.p_mode}\tERROR {r.error}")
            status = EXIT_INPUT
            continue
        print(f"{r.dataset}\t{r.heuristic}\t{r.p_mode}={r.p or 'unbounded'}\t{r.raw_size}\t{r.pruned_size}"
              f"\t{'yes' if r.valid else 'NO'}\t{r.wall_ms:.1f}")
        if args.show_seeds:
            print("  seeds: " + " ".join(r.seeds))
        if not r.valid:
            status = EXIT_INVALID
    return status


def cmd_bench(args) -> int:
    manifest = _manifest(args.manifest, args.skip_missing)
    modes = args.p_modes or ["3", "diameter"]
    configs = [bench.RunConfig(args.theta, args.alpha, m) for m in modes]
    records = bench.run_experiment(manifest, _heuristics(args.heuristic), configs, args.prune, args.workers)
    for r in records:
        if r.error:
            log.error("%s: %s", r.dataset, r.error)
    reference = None if args.no_reference else bench.load_reference(args.reference)
    if args.timings:
        with open(args.timings, "wb") as fh:
            fh.write(bench.emit_timings(records))
    try:
        report = bench.emit_report(records, reference, args.format)
    except ValueError as exc:
        log.error("%s", exc)
        return EXIT_INVALID
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(report)
    else:
        sys.stdout.write(report.decode("utf-8"))
    return EXIT_INPUT if any(r.error for r in records) else EXIT_OK


def cmd_oracle(args) -> int:
    g = load_graph(args.graph, args.format)
    cfg = bench.RunConfig(args.theta, args.alpha, args.p).resolve(g)
    try:
        best = exact_min_seed(g, cfg, OracleLimits(max_vertices=args.max_vertices))
    except OracleError as exc:
        log.error("%s", exc)
        return EXIT_INPUT if "too large" in str(exc) else EXIT_INVALID
    print(f"minimum seed set ({cfg.describe()}): size {len(best)}: {' '.join(g.labels[v] for v in best)}")
    if not validate_seed_set(g, cfg, best):
        log.error("independent validation rejected the oracle answer")
        return EXIT_INVALID
    if args.check_orders:
        hits = order_dependent_subsets(g, cfg)
        print(f"order-dependent subsets: {len(hits)}")
        for h in hits:
            print("  " + " ".join(g.labels[v] for v in h))
    return EXIT_OK


COMMANDS = {"stats": cmd_stats, "run": cmd_run, "bench": cmd_bench, "oracle": cmd_oracle}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        # a --config file supplies defaults, explicit flags still win
        if "--config" in argv:
            i = argv.index("--config")
            command = next((a for a in argv if a in COMMANDS), None)
            if i + 1 >= len(argv) or command not in ("run", "bench"):
                parser.error("--config needs a file and is only valid for run/bench")
            sub = parser._subparsers._group_actions[0].choices[command]
            _config_defaults(sub, read_config(argv[i + 1]))
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        return COMMANDS[args.command](args)
    except (InputError, GraphFormatError, FileNotFoundError, KeyError, ValueError) as exc:
        print(f"minseeds: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
