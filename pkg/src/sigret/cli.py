"""``sigret`` command line: synth, index, query and eval subcommands."""
from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import __version__
from .curvelet import CurveletConfig
from .errors import SigretError
from .evaluation import DEFAULT_CUTS, emit_comparison, run_benchmark
from .features import Transform, extract_features
from .image_io import load_image, preprocess
from .retrieval import FeatureDB, FeatureRecord, query
from .store import load_db, save_db
from .synth import Jitter, SynthSpec, generate_corpus, write_corpus

IMAGE_SUFFIXES = {".pgm", ".ppm", ".pnm", ".png", ".tif", ".tiff", ".bmp", ".jpg", ".jpeg"}


def _add_transform_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--transform", choices=("dwt", "curvelet"), default="curvelet")
    p.add_argument("--levels", type=int, default=3, help="DWT decomposition levels")
    p.add_argument("--wavelet", default="db4", help="DWT filter family (haar, db2, db4)")
    p.add_argument("--scales", type=int, default=5, help="curvelet scales, coarsest included")
    p.add_argument("--angles", type=int, default=16, help="wedges at the second coarsest scale")
    p.add_argument("--finest", choices=("wavelet", "curvelet"), default="wavelet",
                   help="treatment of the finest curvelet scale")


def _transform(ns) -> Transform:
    if ns.transform == "dwt":
        return Transform.dwt(ns.levels, ns.wavelet)
    return Transform.curvelet(CurveletConfig(ns.scales, ns.angles, ns.finest == "wavelet"))


def _cuts(text: str) -> tuple[int, ...]:
    try:
        cuts = tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad cut list {text!r}") from None
    if not cuts or min(cuts) < 1:
        raise argparse.ArgumentTypeError("cuts must be positive integers")
    return cuts


def discover(corpus: Path) -> list[tuple[Path, str, str]]:
    """(path, writer, id) triples from a manifest CSV or a writer-per-folder tree."""
    if corpus.is_file():
        with open(corpus, newline="", encoding="utf-8") as fh:
            rows = list(csv.DictReader(fh))
        base = corpus.parent
        return [(base / r["path"], r["writer"], r.get("sample") or Path(r["path"]).stem)
                for r in rows]
    items = []
    for path in sorted(corpus.rglob("*")):
        if path.is_file() and path.suffix.lower() in IMAGE_SUFFIXES:
            rel = path.relative_to(corpus)
            writer = rel.parts[0] if len(rel.parts) > 1 else path.stem
            items.append((path, writer, rel.with_suffix("").as_posix()))
    return items


def cmd_synth(ns) -> int:
    spec = SynthSpec(ns.writers, ns.samples, ns.seed, ns.side,
                     Jitter(ns.jitter_points, ns.jitter_shift, ns.jitter_width))
    manifest = write_corpus(generate_corpus(spec), ns.out)
    print(f"wrote {spec.writers * spec.samples_per_writer} images; manifest {manifest}")
    return 0


def cmd_index(ns) -> int:
    corpus = Path(ns.corpus)
    if not corpus.exists():
        raise SigretError(f"{corpus} does not exist")
    items = discover(corpus)
    if not items:
        raise SigretError("no images found")
    transform = _transform(ns)
    records = []
    for path, writer, rid in items:
        img = preprocess(load_image(path), ns.size)
        records.append(FeatureRecord(rid, writer, path.as_posix(), extract_features(img, transform)))
    db = FeatureDB(records[0].vector.layout, records)
    save_db(db, ns.db)
    print(f"indexed {len(db)} records (dim {db.layout.dim}) into {ns.db}")
    return 0


def cmd_query(ns) -> int:
    db = load_db(ns.db)
    transform = Transform(db.layout.transform, db.layout.params)
    if ns.transform is not None:
        transform = _transform(ns)
    img = preprocess(load_image(ns.image), ns.size)
    ranked = query(db, extract_features(img, transform), ns.k)
    out = csv.writer(sys.stdout, delimiter="\t", lineterminator="\n")
    out.writerow(["rank", "id", "writer", "distance", "source"])
    for rank, e in enumerate(ranked, start=1):
        out.writerow([rank, e.id, e.writer, repr(e.distance), e.source])
    return 0


def cmd_eval(ns) -> int:
    if len(ns.db) > 2:
        raise SigretError("eval takes one or two databases")
    reports = []
    for path in ns.db:
        report = run_benchmark(load_db(path), ns.cuts, ns.seed, not ns.leave_out)
        reports.append(report)
        print(report.table())
        print()
    if ns.report:
        Path(ns.report).write_text(
            json.dumps([r.to_dict() for r in reports], indent=1, sort_keys=True) + "\n",
            encoding="utf-8")
    if len(reports) == 2:
        a, b = reports
        labels = (a.transform, b.transform) if a.transform != b.transform else ("A", "B")
        emit_comparison(a, b, ns.csv, labels)
        print(f"comparison written to {ns.csv}")
        ahead = [k for k, pa, pb in zip(a.cuts, a.precision, b.precision) if k >= 2 and pb >= pa]
        behind = [k for k in a.cuts if k >= 2 and k not in ahead]
        print(f"trend: {labels[1]} precision >= {labels[0]} at cuts {ahead or 'none'}"
              + (f"; below at {behind}" if behind else ""))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sigret", description="Signature retrieval with subband texture features.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="generate a synthetic signature corpus")
    p.add_argument("--out", default="corpus")
    p.add_argument("--writers", type=int, default=16)
    p.add_argument("--samples", type=int, default=12)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--side", type=int, default=256)
    p.add_argument("--jitter-points", type=float, default=Jitter.points)
    p.add_argument("--jitter-shift", type=float, default=Jitter.shift)
    p.add_argument("--jitter-width", type=float, default=Jitter.width)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("index", help="extract features for a corpus into a .sigdb file")
    p.add_argument("corpus", help="manifest CSV or directory with one folder per writer")
    p.add_argument("--db", required=True)
    p.add_argument("--size", type=int, default=256)
    _add_transform_flags(p)
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("query", help="rank database records against an image")
    p.add_argument("image")
    p.add_argument("--db", required=True)
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--size", type=int, default=256)
    _add_transform_flags(p)
    # transform flags are only honored when --transform is given explicitly
    p.set_defaults(func=cmd_query, transform=None)

    p = sub.add_parser("eval", help="precision/recall at top-k cuts")
    p.add_argument("--db", action="append", required=True,
                   help="database to evaluate; give twice to compare")
    p.add_argument("--cuts", type=_cuts, default=DEFAULT_CUTS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--leave-out", action="store_true",
                   help="remove each query from the database before ranking")
    p.add_argument("--csv", default="comparison.csv", help="comparison CSV path (two dbs)")
    p.add_argument("--report", help="also write the full reports as JSON")
    p.set_defaults(func=cmd_eval)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        return ns.func(ns)
    except (SigretError, OSError, ValueError) as exc:
        print(f"sigret {ns.command}: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
