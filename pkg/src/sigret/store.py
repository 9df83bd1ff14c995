"""Line-oriented ``.sigdb`` persistence.

The first line is a JSON header ``{"version", "transform", "params",
"dim", "count"}``; each following line is one record
``{"id", "writer", "source", "vector"}``. Records are written sorted by
id and floats use the shortest repr that round-trips exactly, so saving
the same database twice produces identical bytes.
"""
from __future__ import annotations

import json
import math
from pathlib import Path

from .errors import DimensionMismatch, ParseError, VersionMismatch
from .features import FeatureVector, Layout, Transform
from .retrieval import FeatureDB, FeatureRecord

FORMAT_VERSION = 1
SUFFIX = ".sigdb"


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)


def save_db(db: FeatureDB, path) -> None:
    header = {
        "version": FORMAT_VERSION,
        "transform": db.layout.transform,
        "params": db.layout.params,
        "dim": db.layout.dim,
        "count": len(db.records),
    }
    lines = [_dumps(header)]
    for rec in sorted(db.records, key=lambda r: r.id):
        lines.append(_dumps({
            "id": rec.id,
            "writer": rec.writer,
            "source": rec.source,
            "vector": [float(v) for v in rec.vector.values],
        }))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _parse_line(line: str, lineno: int) -> dict:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {lineno}: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise ParseError(f"line {lineno}: expected a JSON object")
    return obj


def load_db(path) -> FeatureDB:
    text = Path(path).read_text(encoding="utf-8")
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty database file")
    header = _parse_line(lines[0], 1)
    missing = {"version", "transform", "params", "dim", "count"} - header.keys()
    if missing:
        raise ParseError(f"header is missing {sorted(missing)}")
    if header["version"] != FORMAT_VERSION:
        raise VersionMismatch(
            f"unsupported format version {header['version']!r}, expected {FORMAT_VERSION}")

    transform = Transform(header["transform"], header["params"])
    try:
        n = transform.subband_count()
    except Exception as exc:
        raise ParseError(f"bad transform descriptor: {exc}") from None
    layout = Layout(transform.name, dict(transform.params), n)
    if header["dim"] != layout.dim:
        raise DimensionMismatch(
            f"header dim {header['dim']} disagrees with transform ({layout.dim})")
    if header["count"] != len(lines) - 1:
        raise ParseError(f"header count {header['count']} but {len(lines) - 1} record lines")

    records = []
    for lineno, line in enumerate(lines[1:], start=2):
        obj = _parse_line(line, lineno)
        try:
            vec = obj["vector"]
            rid, writer, source = obj["id"], obj["writer"], obj["source"]
        except KeyError as exc:
            raise ParseError(f"line {lineno}: missing field {exc}") from None
        if not isinstance(vec, list) or not all(isinstance(v, (int, float)) for v in vec):
            raise ParseError(f"line {lineno}: vector must be a list of numbers")
        if len(vec) != layout.dim:
            raise DimensionMismatch(
                f"line {lineno}: vector length {len(vec)} != header dim {layout.dim}")
        if not all(math.isfinite(v) for v in vec):
            raise ParseError(f"line {lineno}: non-finite value")
        records.append(FeatureRecord(str(rid), str(writer), str(source),
                                     FeatureVector(vec, layout)))
    try:
        return FeatureDB(layout, records)
    except Exception as exc:
        raise ParseError(str(exc)) from None
