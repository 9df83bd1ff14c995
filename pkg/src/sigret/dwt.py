"""Separable 2-D discrete wavelet transform with periodic extension.

A decomposition with ``levels`` = N yields 3N + 1 subbands, ordered
coarse to fine as ``[LL_N, LH_N, HL_N, HH_N, LH_{N-1}, ..., HH_1]``.
The first letter names the filter applied along the horizontal axis and
the second the filter along the vertical axis, so LH responds to
horizontal edges, HL to vertical edges and HH to diagonals.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionNotDivisible, MalformedPyramid, UnknownWavelet
from .image_io import as_raster

_S2 = np.sqrt(2.0)

# orthonormal scaling (lowpass synthesis) filters
WAVELETS = {
    "haar": np.array([1.0 / _S2, 1.0 / _S2]),
    "db2": np.array([
        0.48296291314469025, 0.836516303737469,
        0.22414386804185735, -0.12940952255092145,
    ]),
    "db4": np.array([
        0.23037781330885523, 0.7148465705525415,
        0.6308807679295904, -0.02798376941698385,
        -0.18703481171888114, 0.030841381835986965,
        0.032883011666982945, -0.010597401784997278,
    ]),
}

ORIENTATIONS = ("approx", "horizontal", "vertical", "diagonal")


def filter_pair(wavelet: str) -> tuple[np.ndarray, np.ndarray]:
    """Return the (lowpass, highpass) quadrature mirror pair for ``wavelet``."""
    try:
        h = WAVELETS[wavelet]
    except KeyError:
        raise UnknownWavelet(f"unknown wavelet {wavelet!r}; choose from {sorted(WAVELETS)}") from None
    g = h[::-1] * (-1.0) ** np.arange(len(h))
    return h, g


@dataclass
class Subband:
    """One coefficient grid W_k with its (level, orientation) label.

    ``level`` counts from 1 (finest) for DWT bands; curvelet bands use the
    scale index and store the wedge index in ``orientation``.
    """

    coeffs: np.ndarray
    level: int
    orientation: str | int

    @property
    def rows(self) -> int:
        return self.coeffs.shape[0]

    @property
    def cols(self) -> int:
        return self.coeffs.shape[1]

    @property
    def label(self) -> tuple:
        return (self.level, self.orientation)


@dataclass
class WaveletPyramid:
    levels: int
    wavelet: str
    subbands: list[Subband] = field(default_factory=list)

    def band(self, level: int, orientation: str) -> Subband:
        for sb in self.subbands:
            if sb.level == level and sb.orientation == orientation:
                return sb
        raise KeyError((level, orientation))


def _analyze(x: np.ndarray, h: np.ndarray, g: np.ndarray, axis: int):
    x = np.moveaxis(x, axis, -1)
    n = x.shape[-1]
    idx = (2 * np.arange(n // 2)[:, None] + np.arange(len(h))[None, :]) % n
    windows = x[..., idx]
    lo = windows @ h
    hi = windows @ g
    return np.moveaxis(lo, -1, axis), np.moveaxis(hi, -1, axis)


def _synthesize(lo: np.ndarray, hi: np.ndarray, h: np.ndarray, g: np.ndarray, axis: int):
    lo = np.moveaxis(lo, axis, -1)
    hi = np.moveaxis(hi, axis, -1)
    half = lo.shape[-1]
    n = 2 * half
    out = np.zeros(lo.shape[:-1] + (n,))
    pos = 2 * np.arange(half)
    for k in range(len(h)):
        # adjoint of the analysis gather; targets are distinct for fixed k
        out[..., (pos + k) % n] += h[k] * lo + g[k] * hi
    return np.moveaxis(out, -1, axis)


def dwt2_forward(img, levels: int = 3, wavelet: str = "db4") -> WaveletPyramid:
    """Multi-level 2-D DWT; recursion is applied to the approximation band only."""
    x = as_raster(img)
    h, g = filter_pair(wavelet)
    if levels < 1:
        raise DimensionNotDivisible(f"levels must be >= 1, got {levels}")
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise DimensionNotDivisible(f"expected a square raster, got shape {x.shape}")
    if x.shape[0] % (2 ** levels):
        raise DimensionNotDivisible(
            f"side {x.shape[0]} is not divisible by 2**{levels}")

    details = []
    approx = x
    for level in range(1, levels + 1):
        # rows index the vertical axis (0), columns the horizontal axis (1)
        lo_h, hi_h = _analyze(approx, h, g, axis=1)
        ll, lh = _analyze(lo_h, h, g, axis=0)
        hl, hh = _analyze(hi_h, h, g, axis=0)
        details.append((level, lh, hl, hh))
        approx = ll

    bands = [Subband(approx, levels, "approx")]
    for level, lh, hl, hh in reversed(details):
        bands += [
            Subband(lh, level, "horizontal"),
            Subband(hl, level, "vertical"),
            Subband(hh, level, "diagonal"),
        ]
    return WaveletPyramid(levels=levels, wavelet=wavelet, subbands=bands)


def _check_pyramid(pyr: WaveletPyramid) -> None:
    n = pyr.levels
    if n < 1 or len(pyr.subbands) != 3 * n + 1:
        raise MalformedPyramid(f"expected {3 * n + 1} subbands, got {len(pyr.subbands)}")
    expected = [(n, "approx")]
    for level in range(n, 0, -1):
        expected += [(level, o) for o in ORIENTATIONS[1:]]
    if [sb.label for sb in pyr.subbands] != expected:
        raise MalformedPyramid("subbands are not in canonical order")
    side = pyr.subbands[0].rows
    for sb in pyr.subbands:
        want = side * 2 ** (n - sb.level)
        if sb.coeffs.ndim != 2 or sb.coeffs.shape != (want, want):
            raise MalformedPyramid(
                f"band {sb.label} has shape {sb.coeffs.shape}, expected {(want, want)}")


def dwt2_inverse(pyr: WaveletPyramid) -> np.ndarray:
    """Synthesis filter bank; exact inverse of :func:`dwt2_forward`."""
    _check_pyramid(pyr)
    h, g = filter_pair(pyr.wavelet)
    approx = np.asarray(pyr.subbands[0].coeffs, dtype=np.float64)
    for i in range(pyr.levels):
        lh, hl, hh = (np.asarray(sb.coeffs, dtype=np.float64)
                      for sb in pyr.subbands[1 + 3 * i:4 + 3 * i])
        lo_h = _synthesize(approx, lh, h, g, axis=0)
        hi_h = _synthesize(hl, hh, h, g, axis=0)
        approx = _synthesize(lo_h, hi_h, h, g, axis=1)
    return approx


def dwt_subbands(pyr: WaveletPyramid) -> list[Subband]:
    return list(pyr.subbands)
