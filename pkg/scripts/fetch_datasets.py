#!/usr/bin/env python3
"""Download the benchmark networks and convert them to plain edge lists.

    python scripts/fetch_datasets.py              # desk-scale set
    python scripts/fetch_datasets.py --all        # all eighteen networks
    python scripts/fetch_datasets.py power hamster

Files land in ``datasets/<name>.txt``. After conversion each graph is loaded
with the package loader and its vertex/edge counts are compared with the
bundled reference statistics. SHA-256 digests of the converted files are
recorded in ``datasets/SHA256SUMS`` on first fetch and verified on every
later fetch, so a silently changed upstream file is caught.
"""

from __future__ import annotations

import argparse
import bz2
import gzip
import hashlib
import io
import os
import re
import sys
import tarfile
import urllib.request
import zipfile

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
OUT = os.path.join(ROOT, "datasets")
SUMS = os.path.join(OUT, "SHA256SUMS")

# name -> (url, member inside the archive or None, converter)
SOURCES = {
    "web-polblogs": ("https://nrvis.com/download/data/misc/web-polblogs.zip", "web-polblogs.mtx", "mtx"),
    "polblogs": ("http://www-personal.umich.edu/~mejn/netdata/polblogs.zip", "polblogs.gml", "gml"),
    "power": ("http://www-personal.umich.edu/~mejn/netdata/power.zip", "power.gml", "gml"),
    "hamster": ("http://konect.cc/files/download.tsv.petster-friendships-hamster.tar.bz2",
                "petster-friendships-hamster/out.petster-friendships-hamster-uniq", "edgelist"),
    # extended set
    "ca-grqc": ("https://snap.stanford.edu/data/ca-GrQc.txt.gz", None, "edgelist"),
    "ca-hepth": ("https://snap.stanford.edu/data/ca-HepTh.txt.gz", None, "edgelist"),
    "ca-hepph": ("https://snap.stanford.edu/data/ca-HepPh.txt.gz", None, "edgelist"),
    "facebook": ("https://snap.stanford.edu/data/facebook_combined.txt.gz", None, "edgelist"),
    "lastfm": ("https://snap.stanford.edu/data/lastfm_asia.zip", "lasftm_asia/lastfm_asia_edges.csv", "csv"),
    "musae-chameleon": ("https://snap.stanford.edu/data/wikipedia.zip",
                        "wikipedia/chameleon/musae_chameleon_edges.csv", "csv"),
    "musae-crocodile": ("https://snap.stanford.edu/data/wikipedia.zip",
                        "wikipedia/crocodile/musae_crocodile_edges.csv", "csv"),
    "musae-squirrel": ("https://snap.stanford.edu/data/wikipedia.zip",
                       "wikipedia/squirrel/musae_squirrel_edges.csv", "csv"),
    "tvshow": ("https://snap.stanford.edu/data/gemsec_facebook_dataset.tar.gz",
               "facebook_clean_data/tvshow_edges.csv", "csv"),
    "politician": ("https://snap.stanford.edu/data/gemsec_facebook_dataset.tar.gz",
                   "facebook_clean_data/politician_edges.csv", "csv"),
    "government": ("https://snap.stanford.edu/data/gemsec_facebook_dataset.tar.gz",
                   "facebook_clean_data/government_edges.csv", "csv"),
    "reed98": ("https://nrvis.com/download/data/socfb/socfb-Reed98.zip", "socfb-Reed98.mtx", "mtx"),
    "blogcatalog": ("http://socialcomputing.asu.edu/uploads/1283153973/BlogCatalog-dataset.zip",
                    "BlogCatalog-dataset/data/edges.csv", "csv-noheader"),
}
DESK = ["web-polblogs", "polblogs", "power", "hamster"]

_GML_EDGE = re.compile(r"source\s+(-?\d+)\s+target\s+(-?\d+)")


def download(url: str, cache: dict) -> bytes:
    if url not in cache:
        print(f"  downloading {url}", flush=True)
        req = urllib.request.Request(url, headers={"User-Agent": "minseeds-fetch"})
        with urllib.request.urlopen(req, timeout=300) as resp:
            cache[url] = resp.read()
    return cache[url]


def extract(blob: bytes, url: str, member: str | None) -> bytes:
    if member is None:
        return gzip.decompress(blob) if url.endswith(".gz") else blob
    if url.endswith(".zip"):
        with zipfile.ZipFile(io.BytesIO(blob)) as zf:
            name = _find(zf.namelist(), member)
            return zf.read(name)
    if url.endswith(".tar.bz2"):
        blob = bz2.decompress(blob)
    elif url.endswith(".tar.gz"):
        blob = gzip.decompress(blob)
    with tarfile.open(fileobj=io.BytesIO(blob)) as tf:
        name = _find(tf.getnames(), member)
        return tf.extractfile(name).read()


def _find(names: list[str], member: str) -> str:
    if member in names:
        return member
    base = member.rsplit("/", 1)[-1]
    hits = [n for n in names if n.rsplit("/", 1)[-1] == base]
    if len(hits) != 1:
        raise SystemExit(f"archive member {member!r} not found (candidates: {hits or names[:10]})")
    return hits[0]


def convert(raw: bytes, kind: str) -> str:
    text = raw.decode("utf-8", errors="replace")
    lines = []
    if kind == "gml":
        lines = [f"{u} {v}" for u, v in _GML_EDGE.findall(text)]
    elif kind == "mtx":
        body = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("%")]
        lines = [" ".join(ln.split()[:2]) for ln in body[1:]]
    elif kind in ("csv", "csv-noheader"):
        body = [ln for ln in text.splitlines() if ln.strip()]
        if kind == "csv":
            body = body[1:]
        lines = [" ".join(ln.replace(",", " ").split()[:2]) for ln in body]
    else:
        for ln in text.splitlines():
            s = ln.strip()
            if s and s[0] not in "#%":
                lines.append(" ".join(s.split()[:2]))
    return "\n".join(lines) + "\n"


def sha256(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        h.update(fh.read())
    return h.hexdigest()


def read_sums() -> dict[str, str]:
    if not os.path.exists(SUMS):
        return {}
    out = {}
    with open(SUMS) as fh:
        for line in fh:
            digest, name = line.split()
            out[name] = digest
    return out


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("names", nargs="*")
    parser.add_argument("--all", action="store_true")
    args = parser.parse_args(argv)
    names = list(SOURCES) if args.all else (args.names or DESK)
    unknown = [n for n in names if n not in SOURCES]
    if unknown:
        parser.error(f"unknown dataset(s): {', '.join(unknown)}")

    sys.path.insert(0, os.path.join(ROOT, "src"))
    from minseeds.bench import load_expected_stats
    from minseeds.graph import load_graph

    expected = load_expected_stats()
    os.makedirs(OUT, exist_ok=True)
    sums = read_sums()
    cache: dict = {}
    status = 0
    for name in names:
        url, member, kind = SOURCES[name]
        print(f"{name}:")
        text = convert(extract(download(url, cache), url, member), kind)
        path = os.path.join(OUT, f"{name}.txt")
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        digest = sha256(path)
        fname = os.path.basename(path)
        if fname in sums and sums[fname] != digest:
            print(f"  CHECKSUM MISMATCH: expected {sums[fname]}, got {digest}")
            status = 1
        sums[fname] = digest
        g = load_graph(path)
        want = expected.get(name, {})
        ok = g.n == want.get("nodes") and g.m == want.get("edges")
        print(f"  n={g.n} m={g.m} (reference n={want.get('nodes', 0):.0f} m={want.get('edges', 0):.0f})"
              f" {'ok' if ok else 'DIFFERS'}")
        status |= 0 if ok else 1
    with open(SUMS, "w") as fh:
        for fname in sorted(sums):
            fh.write(f"{sums[fname]}  {fname}\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
