"""Precision/recall at top-k cuts, averaged over one random query per writer."""
from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import CutMismatch, EmptyRanking, InsufficientData
from .retrieval import FeatureDB, RankedList, query

DEFAULT_CUTS = (1, 2, 5, 8, 10, 12)


def _relevant_in_top(ranked: RankedList, writer: str, k: int) -> tuple[int, int]:
    if not ranked:
        raise EmptyRanking("ranking is empty")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    top = ranked[:k]
    return sum(e.writer == writer for e in top), len(top)


def precision_at_k(ranked: RankedList, relevant_writer: str, k: int) -> float:
    hits, retrieved = _relevant_in_top(ranked, relevant_writer, k)
    return hits / retrieved


def recall_at_k(ranked: RankedList, relevant_writer: str, total_relevant: int, k: int) -> float:
    if total_relevant < 1:
        raise ValueError("total_relevant must be >= 1")
    hits, _ = _relevant_in_top(ranked, relevant_writer, k)
    return hits / total_relevant


@dataclass
class QueryRow:
    query_id: str
    writer: str
    k: int
    relevant_retrieved: int
    retrieved: int
    total_relevant: int


@dataclass
class EvalReport:
    transform: str
    params: dict
    cuts: tuple[int, ...]
    precision: list[float]  # mean percentage per cut
    recall: list[float]
    rows: list[QueryRow] = field(default_factory=list)
    seed: int = 0
    query_in_db: bool = True

    def table(self) -> str:
        """Plain-text table shaped like the usual top-k precision/recall summary."""
        lines = [f"{self.transform} {self.params}",
                 f"{'Top k':>6}  {'Precision %':>11}  {'Recall %':>9}"]
        for k, p, r in zip(self.cuts, self.precision, self.recall):
            lines.append(f"{k:>6}  {p:>11.2f}  {r:>9.2f}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "transform": self.transform,
            "params": self.params,
            "cuts": list(self.cuts),
            "precision": self.precision,
            "recall": self.recall,
            "seed": self.seed,
            "query_in_db": self.query_in_db,
            "rows": [vars(r) for r in self.rows],
        }


def pick_query(db: FeatureDB, writer: str, seed: int):
    """Seeded choice keyed by writer label, independent of iteration order."""
    members = db.writers()[writer]
    rng = random.Random(f"{seed}:{writer}")
    return members[rng.randrange(len(members))]


def run_benchmark(db: FeatureDB, cuts=DEFAULT_CUTS, seed: int = 0,
                  query_in_db: bool = True) -> EvalReport:
    cuts = tuple(int(k) for k in cuts)
    if not cuts or min(cuts) < 1:
        raise ValueError(f"cuts must be positive, got {cuts}")
    groups = db.writers()
    if len(groups) < 2:
        raise InsufficientData(f"need at least 2 writers, found {len(groups)}")
    min_members = 1 if query_in_db else 2
    thin = [w for w, recs in groups.items() if len(recs) < min_members]
    if thin:
        raise InsufficientData(f"writers with too few samples: {thin}")

    kmax = max(cuts)
    rows = []
    prec = np.zeros((len(groups), len(cuts)))
    rec = np.zeros_like(prec)
    for i, (writer, members) in enumerate(groups.items()):
        probe = pick_query(db, writer, seed)
        target = db if query_in_db else db.without(probe.id)
        total = len(members) if query_in_db else len(members) - 1
        ranked = query(target, probe.vector, kmax)
        for j, k in enumerate(cuts):
            hits, retrieved = _relevant_in_top(ranked, writer, k)
            prec[i, j] = hits / retrieved
            rec[i, j] = hits / total
            rows.append(QueryRow(probe.id, writer, k, hits, retrieved, total))

    return EvalReport(
        transform=db.layout.transform,
        params=dict(db.layout.params),
        cuts=cuts,
        precision=[float(v) for v in 100.0 * prec.mean(axis=0)],
        recall=[float(v) for v in 100.0 * rec.mean(axis=0)],
        rows=rows,
        seed=seed,
        query_in_db=query_in_db,
    )


def comparison_csv(a: EvalReport, b: EvalReport, labels=("A", "B")) -> str:
    if tuple(a.cuts) != tuple(b.cuts):
        raise CutMismatch(f"cuts differ: {a.cuts} vs {b.cuts}")
    la, lb = labels
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(["k", f"precision_{la}", f"recall_{la}", f"precision_{lb}", f"recall_{lb}"])
    for j, k in enumerate(a.cuts):
        out.writerow([k] + [f"{v:.1f}" for v in
                            (a.precision[j], a.recall[j], b.precision[j], b.recall[j])])
    return buf.getvalue()


def emit_comparison(a: EvalReport, b: EvalReport, path, labels=("A", "B")) -> None:
    """Write the side-by-side precision/recall CSV for two reports."""
    text = comparison_csv(a, b, labels)
    Path(path).write_text(text, encoding="utf-8")
