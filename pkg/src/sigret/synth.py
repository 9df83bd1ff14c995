"""Deterministic synthetic signature corpus.

Each writer gets a seeded "style": a few cursive strokes built from a
looping trochoid path (slant, loop frequency, loop size and pen width
vary by writer). The path's control points are joined by Catmull-Rom
cubics and rendered as antialiased dark ink on white. Every sample of
a writer perturbs the control points, shifts the whole signature and
scales the pen width by the jitter amplitudes.
"""
from __future__ import annotations

import csv
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import BadSpec
from .image_io import GrayImage, save_pgm

INK = 0.08


@dataclass(frozen=True)
class Jitter:
    points: float = 3.0     # px, std of control point displacement
    shift: float = 12.0     # px, max translation per axis
    width: float = 0.15     # relative std of pen width


@dataclass(frozen=True)
class SynthSpec:
    writers: int = 16
    samples_per_writer: int = 12
    seed: int = 0
    side: int = 256
    jitter: Jitter = Jitter()

    def validate(self):
        if self.writers < 2:
            raise BadSpec(f"need at least 2 writers, got {self.writers}")
        if self.samples_per_writer < 1:
            raise BadSpec(f"need at least 1 sample per writer, got {self.samples_per_writer}")
        if self.seed < 0:
            raise BadSpec(f"seed must be nonnegative, got {self.seed}")
        if self.side < 32:
            raise BadSpec(f"side must be >= 32, got {self.side}")
        j = self.jitter
        if min(j.points, j.shift, j.width) < 0:
            raise BadSpec("jitter amplitudes must be nonnegative")


@dataclass(frozen=True)
class _Style:
    strokes: tuple[np.ndarray, ...]  # control points in unit canvas coords (x, y)
    pen: float                       # pen radius as a fraction of side


def writer_label(i: int) -> str:
    return f"w{i:02d}"


def _style(rng: np.random.Generator) -> _Style:
    slant = rng.uniform(-0.6, 0.6)
    loops = rng.uniform(2.5, 9.0)
    loop_r = rng.uniform(0.03, 0.09)
    height = rng.uniform(0.04, 0.14)
    pen = rng.uniform(0.004, 0.014)
    n_strokes = int(rng.integers(1, 4))
    strokes = []
    x0 = rng.uniform(0.12, 0.25)
    span = rng.uniform(0.55, 0.75) / n_strokes
    for _ in range(n_strokes):
        n_pts = int(rng.integers(10, 22))
        t = np.linspace(0.0, 1.0, n_pts)
        phase = rng.uniform(0, 2 * np.pi)
        y_base = 0.5 + rng.uniform(-0.08, 0.08) + height * np.sin(2 * np.pi * rng.uniform(0.3, 1.2) * t)
        x = x0 + span * t + loop_r * np.cos(2 * np.pi * loops * t + phase)
        y = y_base + loop_r * 1.3 * np.sin(2 * np.pi * loops * t + phase)
        x = x + slant * (0.5 - y)
        strokes.append(np.column_stack([x, y]))
        x0 += span + rng.uniform(0.0, 0.04)
    return _Style(tuple(strokes), pen)


def _catmull_rom(points: np.ndarray, step: float) -> np.ndarray:
    """Points along a uniform Catmull-Rom spline through ``points``, about ``step`` apart."""
    p = np.vstack([points[0], points, points[-1]])
    out = []
    for i in range(1, len(p) - 2):
        p0, p1, p2, p3 = p[i - 1], p[i], p[i + 1], p[i + 2]
        seg = np.linalg.norm(p2 - p1)
        n = max(2, int(np.ceil(seg / step)) + 1)
        t = np.linspace(0.0, 1.0, n, endpoint=(i == len(p) - 3))[:, None]
        out.append(0.5 * ((2 * p1) + (-p0 + p2) * t
                          + (2 * p0 - 5 * p1 + 4 * p2 - p3) * t ** 2
                          + (-p0 + 3 * p1 - 3 * p2 + p3) * t ** 3))
    return np.vstack(out)


def render_strokes(strokes, radius: float, side: int) -> np.ndarray:
    """Antialiased pen coverage in [0, 1] for pixel-space control polylines."""
    cover = np.zeros((side, side))
    pts = np.vstack([_catmull_rom(s, 0.35) for s in strokes])
    reach = int(np.ceil(radius + 1))
    cx = np.floor(pts[:, 0]).astype(int)
    cy = np.floor(pts[:, 1]).astype(int)
    for dy in range(-reach, reach + 1):
        for dx in range(-reach, reach + 1):
            px, py = cx + dx, cy + dy
            ok = (px >= 0) & (px < side) & (py >= 0) & (py < side)
            # pixel centers sit at integer + 0.5
            d = np.hypot(px + 0.5 - pts[:, 0], py + 0.5 - pts[:, 1])
            c = np.clip(radius + 0.5 - d, 0.0, 1.0)
            np.maximum.at(cover, (py[ok], px[ok]), c[ok])
    return cover


def render_sample(style: _Style, rng: np.random.Generator, spec: SynthSpec) -> np.ndarray:
    side = spec.side
    j = spec.jitter
    shift = rng.uniform(-j.shift, j.shift, size=2)
    radius = max(0.5, style.pen * side * (1.0 + j.width * rng.standard_normal()))
    strokes = []
    for s in style.strokes:
        pts = s * side + j.points * rng.standard_normal(s.shape) + shift
        strokes.append(pts)
    cover = render_strokes(strokes, radius, side)
    return 1.0 - (1.0 - INK) * cover


def generate_corpus(spec: SynthSpec) -> list[tuple[GrayImage, str, str]]:
    """Render ``writers * samples_per_writer`` images as (image, writer, sample id)."""
    spec.validate()
    out = []
    for w in range(spec.writers):
        style = _style(np.random.default_rng([spec.seed, w, 0]))
        label = writer_label(w)
        for s in range(spec.samples_per_writer):
            rng = np.random.default_rng([spec.seed, w, s + 1])
            img = GrayImage(render_sample(style, rng, spec))
            out.append((img, label, f"{label}_s{s:02d}"))
    return out


def write_corpus(corpus, outdir) -> Path:
    """Write ``<outdir>/<writer>/<sample>.pgm`` files and ``manifest.csv``."""
    outdir = Path(outdir)
    rows = []
    for img, writer, sample in corpus:
        rel = Path(writer) / f"{sample}.pgm"
        save_pgm(img, outdir / rel)
        rows.append((rel.as_posix(), writer, sample))
    manifest = outdir / "manifest.csv"
    os.makedirs(outdir, exist_ok=True)
    with open(manifest, "w", newline="", encoding="utf-8") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(["path", "writer", "sample"])
        out.writerows(rows)
    return manifest
