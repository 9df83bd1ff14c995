"""Canberra-distance ranking over a feature database."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch, EmptyDatabase, LayoutMismatch, SigretError
from .features import FeatureVector, Layout


def canberra(x, y) -> float:
    """sum |x_i - y_i| / (|x_i| + |y_i|), where a 0/0 term counts as 0."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1 or x.size == 0:
        raise DimensionMismatch(f"cannot compare shapes {x.shape} and {y.shape}")
    return float(canberra_many(x[None, :], y)[0])


def canberra_many(rows: np.ndarray, probe: np.ndarray) -> np.ndarray:
    """Canberra distance from ``probe`` to every row of ``rows``."""
    num = np.abs(rows - probe)
    den = np.abs(rows) + np.abs(probe)
    terms = np.divide(num, den, out=np.zeros_like(num), where=den > 0)
    return terms.sum(axis=1)


@dataclass
class FeatureRecord:
    id: str
    writer: str
    source: str
    vector: FeatureVector


@dataclass
class FeatureDB:
    layout: Layout
    records: list[FeatureRecord] = field(default_factory=list)

    def __post_init__(self):
        seen = set()
        for rec in self.records:
            if rec.id in seen:
                raise SigretError(f"duplicate record id {rec.id!r}")
            seen.add(rec.id)
            if rec.vector.layout != self.layout:
                raise LayoutMismatch(f"record {rec.id!r} does not match the database layout")
        self._matrix = None

    def __len__(self):
        return len(self.records)

    @property
    def matrix(self) -> np.ndarray:
        if self._matrix is None or self._matrix.shape[0] != len(self.records):
            if self.records:
                self._matrix = np.stack([r.vector.values for r in self.records])
            else:
                self._matrix = np.zeros((0, self.layout.dim))
        return self._matrix

    def writers(self) -> dict[str, list[FeatureRecord]]:
        groups: dict[str, list[FeatureRecord]] = {}
        for rec in sorted(self.records, key=lambda r: r.id):
            groups.setdefault(rec.writer, []).append(rec)
        return dict(sorted(groups.items()))

    def without(self, record_id: str) -> "FeatureDB":
        return FeatureDB(self.layout, [r for r in self.records if r.id != record_id])


class RankedEntry(NamedTuple):
    id: str
    writer: str
    distance: float
    source: str = ""


RankedList = list[RankedEntry]


def query(db: FeatureDB, probe: FeatureVector, k: int = 10) -> RankedList:
    """Return the ``k`` records nearest to ``probe``, ties broken by ascending id."""
    if probe.layout != db.layout:
        raise LayoutMismatch(
            f"probe layout {probe.layout.transform}{probe.layout.params} does not match "
            f"database layout {db.layout.transform}{db.layout.params}")
    if not db.records:
        raise EmptyDatabase("database has no records")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    dist = canberra_many(db.matrix, probe.values)
    order = sorted(range(len(db.records)), key=lambda i: (dist[i], db.records[i].id))
    return [
        RankedEntry(db.records[i].id, db.records[i].writer, float(dist[i]), db.records[i].source)
        for i in order[:k]
    ]
