"""Fast discrete curvelet transform via frequency wrapping.

The unitary 2-D DFT of the image is split by smooth windows into a
coarse lowpass tile, a sequence of dyadic coronae cut into angular
wedges, and (by default) an isotropic finest ring. The squared windows
sum to one at every frequency, so the transform is a tight frame and
its adjoint is its inverse.

Each windowed wedge is wrapped (periodized) onto a rectangle whose
sides are the wedge's radial extent and its largest cross-section. No
two support points are congruent modulo that rectangle, so wrapping is
lossless; the inverse DFT of the rectangle is the coefficient tile.

Wedge count starts at ``angles`` on the second coarsest scale and
doubles every second scale after it, while the corona radius doubles
every scale, which gives the parabolic width ~ length**2 scaling.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .dwt import Subband
from .errors import BadConfig, BadDimensions, MalformedCoeffs
from .image_io import as_raster

# half-width of the angular transition band, as a fraction of a wedge
ANGULAR_OVERLAP = 0.25


@dataclass(frozen=True)
class CurveletConfig:
    scales: int = 5
    angles: int = 16
    finest_is_wavelet: bool = True

    def __post_init__(self):
        if self.scales < 2:
            raise BadConfig(f"need at least 2 scales, got {self.scales}")
        if self.angles < 4 or self.angles % 4:
            raise BadConfig(f"angles must be a positive multiple of 4, got {self.angles}")

    @classmethod
    def for_side(cls, side: int, **kwargs) -> "CurveletConfig":
        """Default config for a ``side`` x ``side`` image: log2(side) - 3 scales."""
        return cls(scales=max(2, int(math.log2(side)) - 3), **kwargs)

    def orientations(self) -> list[int]:
        """Number of wedges per scale, coarsest first."""
        counts = [1] + [self.angles * 2 ** ((s - 1) // 2) for s in range(1, self.scales)]
        if self.finest_is_wavelet:
            counts[-1] = 1
        return counts

    def to_params(self) -> dict:
        return {
            "scales": self.scales,
            "angles_at_second_coarsest": self.angles,
            "finest_is_wavelet": self.finest_is_wavelet,
        }

    @classmethod
    def from_params(cls, params: dict) -> "CurveletConfig":
        return cls(
            scales=int(params["scales"]),
            angles=int(params["angles_at_second_coarsest"]),
            finest_is_wavelet=bool(params["finest_is_wavelet"]),
        )


@dataclass
class CurveletCoeffs:
    """Complex coefficient tiles, ``tiles[scale][wedge]``, coarsest scale first."""

    config: CurveletConfig
    tiles: list[list[np.ndarray]]
    source_side: int

    def __iter__(self):
        for s, row in enumerate(self.tiles):
            for w, tile in enumerate(row):
                yield s, w, tile


@dataclass(frozen=True)
class _Wedge:
    scale: int
    index: int
    rows: np.ndarray      # frequency-grid positions of the window support
    cols: np.ndarray
    weights: np.ndarray   # window values on the support
    tile_rows: np.ndarray  # wrapped positions inside the tile
    tile_cols: np.ndarray
    shape: tuple[int, int]
    center_angle: float = field(default=float("nan"))


# -- windows ------------------------------------------------------------------

def _meyer_ramp(t):
    """Smooth step from 0 to 1 on [0, 1] with nu(t) + nu(1 - t) == 1."""
    t = np.clip(t, 0.0, 1.0)
    return t ** 4 * (35 - 84 * t + 70 * t ** 2 - 20 * t ** 3)


def _taper(t):
    """cos(pi/2 nu(t)) with exact 0 for t >= 1, so supports stay compact."""
    v = _meyer_ramp(t)
    return np.where(v >= 1.0, 0.0, np.cos(0.5 * np.pi * v))


def _lowpass_1d(w, radius):
    """1 for |w| <= radius, 0 for |w| >= 2 radius, smooth in between."""
    return _taper(np.abs(w) / radius - 1.0)


def _angular(theta, center, width):
    d = np.angle(np.exp(1j * (theta - center))) / width
    lo = 0.5 - ANGULAR_OVERLAP
    return _taper((np.abs(d) - lo) / (2 * ANGULAR_OVERLAP))


def _radii(side: int, scales: int) -> list[float]:
    # the last lowpass reaches zero at side/3, safely inside the Nyquist box
    top = side / 6.0
    return [top / 2 ** (scales - 2 - s) for s in range(scales - 1)]


def _wrap(rows_f, cols_f, axis):
    """Smallest alias-free tile for a support whose long side runs along ``axis``."""
    major, minor = (rows_f, cols_f) if axis == 0 else (cols_f, rows_f)
    length = int(major.max() - major.min() + 1)
    width = 1
    for m in np.unique(major):
        sel = minor[major == m]
        width = max(width, int(sel.max() - sel.min() + 1))
    return (length, width) if axis == 0 else (width, length)


@lru_cache(maxsize=16)
def _wedges(side: int, config: CurveletConfig) -> tuple[tuple[_Wedge, ...], ...]:
    freq = np.fft.fftfreq(side) * side
    w_r, w_c = np.meshgrid(freq, freq, indexing="ij")
    radii = _radii(side, config.scales)
    low = [np.outer(_lowpass_1d(freq, r), _lowpass_1d(freq, r)) for r in radii]
    theta = np.arctan2(w_r, w_c)
    counts = config.orientations()

    def make(scale, index, window, angle=float("nan")):
        rows, cols = np.nonzero(window > 0)
        if rows.size == 0:
            raise BadConfig(
                f"wedge {index} at scale {scale} is empty for side {side}; "
                "use fewer scales or angles")
        rf, cf = w_r[rows, cols].astype(int), w_c[rows, cols].astype(int)
        if scale == config.scales - 1 and counts[scale] == 1:
            shape = (side, side)
        else:
            options = [_wrap(rf, cf, 0), _wrap(rf, cf, 1)]
            shape = min(options, key=lambda s: (s[0] * s[1], s))
        return _Wedge(
            scale=scale, index=index, rows=rows, cols=cols,
            weights=window[rows, cols],
            tile_rows=rf % shape[0], tile_cols=cf % shape[1],
            shape=shape, center_angle=angle,
        )

    out = [(make(0, 0, low[0]),)]
    for s in range(1, config.scales):
        outer = low[s] if s < config.scales - 1 else np.ones_like(low[0])
        ring = np.sqrt(np.clip(outer ** 2 - low[s - 1] ** 2, 0.0, None))
        n = counts[s]
        if n == 1:
            out.append((make(s, 0, ring),))
            continue
        width = 2 * np.pi / n
        wedges = []
        for i in range(n):
            center = i * width
            wedges.append(make(s, i, ring * _angular(theta, center, width), center))
        out.append(tuple(wedges))
    return tuple(out)


def _check_side(x: np.ndarray, config: CurveletConfig) -> int:
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise BadDimensions(f"expected a square raster, got shape {x.shape}")
    side = x.shape[0]
    if side & (side - 1) or side < 2 ** config.scales:
        raise BadDimensions(
            f"side must be a power of two >= 2**{config.scales}, got {side}")
    return side


def window_energy(side: int, config: CurveletConfig) -> np.ndarray:
    """Sum of squared windows over the frequency grid (identically 1 for a tight frame)."""
    total = np.zeros((side, side))
    for scale in _wedges(side, config):
        for wedge in scale:
            total[wedge.rows, wedge.cols] += wedge.weights ** 2
    return total


def wedge_angles(side: int, config: CurveletConfig, scale: int) -> np.ndarray:
    """Center angle (radians, frequency plane) of each wedge at ``scale``."""
    return np.array([w.center_angle for w in _wedges(side, config)[scale]])


# -- transforms ---------------------------------------------------------------

def fdct_forward(img, config: CurveletConfig | None = None) -> CurveletCoeffs:
    x = as_raster(img)
    if config is None:
        config = CurveletConfig.for_side(x.shape[0]) if x.ndim == 2 else CurveletConfig()
    side = _check_side(x, config)
    spectrum = np.fft.fft2(x, norm="ortho")
    tiles = []
    for scale in _wedges(side, config):
        row = []
        for wedge in scale:
            wrapped = np.zeros(wedge.shape, dtype=complex)
            wrapped[wedge.tile_rows, wedge.tile_cols] = (
                wedge.weights * spectrum[wedge.rows, wedge.cols])
            row.append(np.fft.ifft2(wrapped, norm="ortho"))
        tiles.append(row)
    return CurveletCoeffs(config=config, tiles=tiles, source_side=side)


def fdct_inverse(coeffs: CurveletCoeffs) -> np.ndarray:
    """Adjoint of :func:`fdct_forward`, which for this tight frame is its inverse."""
    side = coeffs.source_side
    try:
        layout = _wedges(side, coeffs.config)
    except BadConfig as exc:
        raise MalformedCoeffs(str(exc)) from None
    if [len(r) for r in coeffs.tiles] != [len(r) for r in layout]:
        raise MalformedCoeffs("tile counts do not match the configured schedule")
    spectrum = np.zeros((side, side), dtype=complex)
    for scale, tile_row in zip(layout, coeffs.tiles):
        for wedge, tile in zip(scale, tile_row):
            tile = np.asarray(tile)
            if tile.shape != wedge.shape:
                raise MalformedCoeffs(
                    f"tile ({wedge.scale}, {wedge.index}) has shape {tile.shape}, "
                    f"expected {wedge.shape}")
            wrapped = np.fft.fft2(tile, norm="ortho")
            spectrum[wedge.rows, wedge.cols] += (
                wedge.weights * wrapped[wedge.tile_rows, wedge.tile_cols])
    return np.fft.ifft2(spectrum, norm="ortho").real


def curvelet_subbands(coeffs: CurveletCoeffs) -> list[Subband]:
    """Flatten tiles scale-major, coarsest first, as real magnitude subbands."""
    return [Subband(np.abs(tile), s, w) for s, w, tile in coeffs]
