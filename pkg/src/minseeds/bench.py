"""Experiment runner and report writer.

A run is the cross product of datasets, heuristics and threshold settings.
Each job builds a raw seed list, optionally prunes it, validates the result
with the independent oracle diffusion and records sizes and timing.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from importlib import resources
from typing import Iterable, Optional, Sequence, Union

from .diffusion import ThresholdConfig
from .graph import Graph, NetworkStats, compute_stats, diameter, load_graph
from .heuristics import HEURISTICS, get_heuristic
from .oracle import validate_seed_set
from .pruning import prune

log = logging.getLogger(__name__)

#: Diffusion range semantics used for every number this module produces.
SEMANTICS = "crossing-depth"

STAT_FIELDS = ("nodes", "edges", "density", "avg_triangles", "avg_degree", "avg_cc")
STAT_TOLERANCE = 0.0005

# (column name, heuristic id, which size)
REPORT_COLUMNS = (
    ("dfs-greedy", "dfs-greedy", "raw"),
    ("bfs-greedy", "bfs-greedy", "raw"),
    ("dfs-pruned", "dfs-greedy", "pruned"),
    ("bfs-pruned", "bfs-greedy", "pruned"),
    ("bbh", "bbh", "pruned"),
    ("adh", "adh", "pruned"),
    ("cfh", "cfh", "pruned"),
    ("bbh-raw", "bbh", "raw"),
    ("adh-raw", "adh", "raw"),
    ("cfh-raw", "cfh", "raw"),
)


def data_path(name: str) -> str:
    """Path of a file shipped in the package's ``data`` directory."""
    return str(resources.files("minseeds") / "data" / name)


# ---------------------------------------------------------------- manifests

@dataclass
class DatasetEntry:
    name: str
    path: str
    format: str = "edgelist"
    expected: Optional[dict] = None


@dataclass
class DatasetManifest:
    entries: list[DatasetEntry]

    def names(self) -> list[str]:
        return [e.name for e in self.entries]

    def get(self, name: str) -> DatasetEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(f"dataset {name!r} not in manifest")

    def missing(self) -> list[str]:
        return [e.name for e in self.entries if not os.path.exists(e.path)]

    def present(self) -> "DatasetManifest":
        return DatasetManifest([e for e in self.entries if os.path.exists(e.path)])


def load_manifest(path: str, require_files: bool = True) -> DatasetManifest:
    """Read a JSON manifest; relative dataset paths resolve against its directory."""
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    base = os.path.dirname(os.path.abspath(path))
    entries = []
    for item in doc["datasets"]:
        p = item["path"]
        if not os.path.isabs(p):
            p = os.path.normpath(os.path.join(base, p))
        entries.append(DatasetEntry(item["name"], p, item.get("format", "edgelist"), item.get("expected")))
    names = [e.name for e in entries]
    dupes = sorted({n for n in names if names.count(n) > 1})
    if dupes:
        raise ValueError(f"duplicate dataset names in manifest: {', '.join(dupes)}")
    manifest = DatasetManifest(entries)
    if require_files and manifest.missing():
        raise FileNotFoundError(f"dataset files missing for: {', '.join(manifest.missing())}")
    return manifest


def default_manifest() -> DatasetManifest:
    return load_manifest(data_path("manifest.json"))


def load_expected_stats(path: Optional[str] = None) -> dict[str, dict[str, float]]:
    """Reference statistics keyed by dataset name."""
    with open(path or data_path("table1.csv"), newline="", encoding="utf-8") as fh:
        return {row["dataset"]: {k: float(row[k]) for k in STAT_FIELDS} for row in csv.DictReader(fh)}


def compare_stats(stats: NetworkStats, expected: dict, tol: float = STAT_TOLERANCE) -> dict[str, tuple]:
    """Fields of ``expected`` that the display-rounded ``stats`` miss by more than ``tol``."""
    ours = stats.rounded()
    bad = {}
    for key, want in expected.items():
        if key not in ours:
            raise KeyError(f"unknown statistic {key!r}")
        if abs(ours[key] - float(want)) > tol + 1e-12:
            bad[key] = (ours[key], want)
    return bad


# ----------------------------------------------------------------- configs

@dataclass(frozen=True)
class RunConfig:
    """Threshold setting whose propagation range may depend on the dataset.

    ``p_mode`` is a positive integer string, ``"diameter"`` or ``"unbounded"``.
    """

    theta: float = 0.4
    alpha: float = 0.6
    p_mode: str = "3"

    def __post_init__(self):
        object.__setattr__(self, "p_mode", parse_p_mode(self.p_mode))
        ThresholdConfig(self.theta, self.alpha, None)

    def resolve(self, g: Graph) -> ThresholdConfig:
        if self.p_mode == "unbounded":
            p = None
        elif self.p_mode == "diameter":
            p = max(1, diameter(g))
        else:
            p = int(self.p_mode)
        return ThresholdConfig(self.theta, self.alpha, p)


def parse_p_mode(value: Union[str, int, None]) -> str:
    if value is None:
        return "unbounded"
    text = str(value).strip().lower()
    if text in ("diameter", "unbounded"):
        return text
    try:
        p = int(text)
    except ValueError:
        raise ValueError(f"propagation range must be an integer, 'diameter' or 'unbounded', got {value!r}") from None
    if p < 1:
        raise ValueError(f"propagation range must be >= 1, got {p}")
    return str(p)


# ----------------------------------------------------------------- records

@dataclass
class RunRecord:
    dataset: str
    heuristic: str
    theta: float
    alpha: float
    p_mode: str
    p: Optional[int] = None
    raw_size: int = 0
    pruned_size: int = 0
    pruned: bool = True
    valid: bool = False
    wall_ms: float = 0.0
    digest: str = ""
    semantics: str = SEMANTICS
    seeds: list[str] = field(default_factory=list)
    error: Optional[str] = None

    def sort_key(self):
        return (self.dataset, self.heuristic, self.p_mode, self.theta, self.alpha)


def seed_digest(labels: Sequence[str]) -> str:
    return hashlib.sha256(",".join(labels).encode("utf-8")).hexdigest()[:16]


def run_job(dataset: str, g: Graph, heuristic: str, cfg: RunConfig, do_prune: bool = True,
            resolved: Optional[ThresholdConfig] = None) -> RunRecord:
    build = get_heuristic(heuristic)
    tcfg = resolved or cfg.resolve(g)
    start = time.perf_counter()
    raw = build(g, tcfg)
    final = prune(g, tcfg, raw) if do_prune else raw
    wall_ms = (time.perf_counter() - start) * 1000.0
    labels = [g.labels[v] for v in final]
    return RunRecord(
        dataset=dataset,
        heuristic=heuristic,
        theta=cfg.theta,
        alpha=cfg.alpha,
        p_mode=cfg.p_mode,
        p=tcfg.p,
        raw_size=len(raw),
        pruned_size=len(final),
        pruned=do_prune,
        valid=validate_seed_set(g, tcfg, final),
        wall_ms=round(wall_ms, 3),
        digest=seed_digest(labels),
        seeds=labels,
    )


def _run_job_star(args):
    return run_job(*args)


def run_experiment(manifest: DatasetManifest, heuristics: Sequence[str], configs: Sequence[RunConfig],
                   do_prune: bool = True, workers: int = 1) -> list[RunRecord]:
    """One record per (dataset, heuristic, config), sorted deterministically.

    A dataset that fails to load yields error records and the run continues.
    """
    for h in heuristics:
        get_heuristic(h)
    if not heuristics or not configs:
        return []
    records: list[RunRecord] = []
    jobs = []
    for entry in manifest.entries:
        try:
            g = load_graph(entry.path, entry.format)
        except Exception as exc:  # noqa: BLE001 - any load failure becomes a record
            log.error("could not load %s: %s", entry.name, exc)
            for h in heuristics:
                for c in configs:
                    records.append(RunRecord(entry.name, h, c.theta, c.alpha, c.p_mode, error=str(exc)))
            continue
        for c in configs:
            tcfg = c.resolve(g)
            for h in heuristics:
                jobs.append((entry.name, g, h, c, do_prune, tcfg))
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records.extend(pool.map(_run_job_star, jobs))
    else:
        records.extend(_run_job_star(j) for j in jobs)
    records.sort(key=RunRecord.sort_key)
    return records


# --------------------------------------------------------------- reference

@dataclass
class ReferenceTable:
    values: dict[tuple[str, str, str], int]

    def get(self, dataset: str, column: str, p_mode: str) -> Optional[int]:
        return self.values.get((dataset, column, p_mode))


def load_reference(path: Optional[str] = None) -> ReferenceTable:
    values: dict[tuple[str, str, str], int] = {}
    with open(path or data_path("reference.csv"), newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            key = (row["dataset"], row["heuristic"], parse_p_mode(row["p_mode"]))
            if key in values:
                raise ValueError(f"duplicate reference entry {key}")
            values[key] = int(row["ref_size"])
    return ReferenceTable(values)


def deviation(ours: int, ref: int) -> float:
    return round((ours - ref) / ref, 3)


# ------------------------------------------------------------------ report

def _table(records: Sequence[RunRecord]):
    rows: dict[tuple, dict[str, RunRecord]] = {}
    for r in records:
        rows.setdefault((r.dataset, r.theta, r.alpha, r.p_mode), {})[r.heuristic] = r
    return [(key, rows[key]) for key in sorted(rows, key=lambda k: (k[0], k[1], k[2], _p_sort(k[3])))]


def _p_sort(p_mode: str):
    return (0, int(p_mode), "") if p_mode.isdigit() else (1, 0, p_mode)


def _cell(rec: Optional[RunRecord], size: str) -> Optional[int]:
    if rec is None:
        return None
    if size == "raw":
        return rec.raw_size
    if not rec.pruned and rec.heuristic in ("dfs-greedy", "bfs-greedy"):
        return None
    return rec.pruned_size


def emit_report(records: Sequence[RunRecord], reference: Optional[ReferenceTable] = None,
                fmt: str = "csv") -> bytes:
    """Render records as a dataset-by-heuristic table (CSV or Markdown).

    Records carrying a load error are left out; any other record that failed
    validation aborts the report.
    """
    if fmt not in ("csv", "markdown"):
        raise ValueError(f"unknown report format {fmt!r}")
    usable = [r for r in records if r.error is None]
    if not usable:
        raise ValueError("no records to report")
    invalid = [r for r in usable if not r.valid]
    if invalid:
        r = invalid[0]
        raise ValueError(f"refusing to tabulate infeasible seed set: {r.dataset}/{r.heuristic}/p={r.p_mode}")

    header = ["dataset", "theta", "alpha", "p_mode", "p"]
    for name, _, _ in REPORT_COLUMNS:
        header.append(name)
        if reference is not None:
            header += [f"{name}_ref", f"{name}_dev"]
    body = []
    for (dataset, theta, alpha, p_mode), by_h in _table(usable):
        any_rec = next(iter(by_h.values()))
        row = [dataset, f"{theta:g}", f"{alpha:g}", p_mode, "" if any_rec.p is None else str(any_rec.p)]
        for name, h, size in REPORT_COLUMNS:
            val = _cell(by_h.get(h), size)
            row.append("" if val is None else str(val))
            if reference is not None:
                ref = reference.get(dataset, name, p_mode)
                row.append("" if ref is None else str(ref))
                row.append("" if ref is None or val is None else f"{deviation(val, ref):+.3f}")
        body.append(row)

    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(body)
        return buf.getvalue().encode("utf-8")

    if reference is None:
        md_header, md_rows = header, body
    else:
        # fold reference value and deviation into each cell
        md_header = header[:5] + [name for name, _, _ in REPORT_COLUMNS]
        md_rows = []
        for row in body:
            cells = row[:5]
            for i in range(len(REPORT_COLUMNS)):
                ours, ref, dev = row[5 + 3 * i: 8 + 3 * i]
                cells.append(f"{ours} ({ref}, {dev})" if ref and ours else ours)
            md_rows.append(cells)
    lines = ["| " + " | ".join(md_header) + " |", "|" + "---|" * len(md_header)]
    lines += ["| " + " | ".join(r) + " |" for r in md_rows]
    return ("\n".join(lines) + "\n").encode("utf-8")


def emit_timings(records: Sequence[RunRecord]) -> bytes:
    """Per-record runtimes; kept apart from the report so the report stays byte-stable."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["dataset", "heuristic", "theta", "alpha", "p_mode", "p", "raw_size", "pruned_size",
                     "valid", "wall_ms", "digest", "semantics", "error"])
    for r in records:
        writer.writerow([r.dataset, r.heuristic, f"{r.theta:g}", f"{r.alpha:g}", r.p_mode,
                         "" if r.p is None else r.p, r.raw_size, r.pruned_size, int(r.valid),
                         f"{r.wall_ms:.1f}", r.digest, r.semantics, r.error or ""])
    return buf.getvalue().encode("utf-8")


def records_to_json(records: Iterable[RunRecord]) -> str:
    return json.dumps([asdict(r) for r in records], indent=2, sort_keys=True)
