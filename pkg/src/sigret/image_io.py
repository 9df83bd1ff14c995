"""Loading, saving and normalizing grayscale signature rasters.

PGM/PPM (P2, P3, P5, P6) are read natively. PNG and other formats go
through Pillow when it is installed.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import CorruptImage, UnsupportedFormat

# ITU-R BT.601 luma weights
_LUMA = np.array([0.299, 0.587, 0.114])

BACKGROUND = 1.0


@dataclass(frozen=True, eq=False)
class GrayImage:
    """Grayscale raster with intensities in [0, 1], stored as (height, width)."""

    pixels: np.ndarray

    def __post_init__(self):
        px = np.asarray(self.pixels, dtype=np.float64)
        if px.ndim != 2 or px.shape[0] < 1 or px.shape[1] < 1:
            raise CorruptImage(f"expected a non-empty 2-D raster, got shape {px.shape}")
        if not np.all(np.isfinite(px)) or px.min() < 0.0 or px.max() > 1.0:
            raise CorruptImage("intensities must lie in [0, 1]")
        px.setflags(write=False)
        object.__setattr__(self, "pixels", px)

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.pixels if dtype is None else self.pixels.astype(dtype)

    def __eq__(self, other):
        if not isinstance(other, GrayImage):
            return NotImplemented
        return np.array_equal(self.pixels, other.pixels)


def as_raster(img) -> np.ndarray:
    """Return the float64 2-D array behind a GrayImage or array-like."""
    if isinstance(img, GrayImage):
        return img.pixels
    return np.asarray(img, dtype=np.float64)


# -- PNM ---------------------------------------------------------------------

def _pnm_tokens(data: bytes, count: int):
    """Read ``count`` whitespace separated header tokens, skipping comments.

    Returns the tokens and the offset just past the single whitespace byte
    that terminates the last one.
    """
    tokens = []
    pos = 0
    n = len(data)
    while len(tokens) < count:
        while pos < n and data[pos:pos + 1].isspace():
            pos += 1
        if pos < n and data[pos:pos + 1] == b"#":
            while pos < n and data[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < n and not data[pos:pos + 1].isspace() and data[pos:pos + 1] != b"#":
            pos += 1
        if start == pos:
            raise CorruptImage("truncated PNM header")
        tokens.append(data[start:pos])
    return tokens, pos + 1


def _read_pnm(data: bytes) -> np.ndarray:
    magic = data[:2]
    if magic not in (b"P2", b"P3", b"P5", b"P6"):
        raise UnsupportedFormat(f"unsupported PNM magic {magic!r}")
    channels = 3 if magic in (b"P3", b"P6") else 1
    try:
        tokens, offset = _pnm_tokens(data[2:], 3)
        width, height, maxval = (int(t) for t in tokens)
    except ValueError as exc:
        raise CorruptImage(f"bad PNM header: {exc}") from None
    offset += 2
    if width < 1 or height < 1 or not 0 < maxval < 65536:
        raise CorruptImage(f"bad PNM header values {width}x{height} maxval {maxval}")
    expected = width * height * channels

    if magic in (b"P2", b"P3"):
        body = data[offset:].split()
        try:
            raw = np.array([int(v) for v in body if not v.startswith(b"#")], dtype=np.float64)
        except ValueError:
            raise CorruptImage("non-integer sample in ASCII PNM body") from None
    else:
        dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
        nbytes = expected * dtype.itemsize
        if len(data) - offset < nbytes:
            raise CorruptImage(f"expected {expected} samples, file is truncated")
        raw = np.frombuffer(data, dtype=dtype, count=expected, offset=offset).astype(np.float64)

    if raw.size != expected:
        raise CorruptImage(f"expected {expected} samples, found {raw.size}")
    if raw.max(initial=0) > maxval:
        raise CorruptImage("sample exceeds maxval")
    raw = raw.reshape(height, width, channels) if channels == 3 else raw.reshape(height, width)
    if channels == 3:
        raw = raw @ _LUMA
    return raw / maxval


def _read_with_pillow(path: Path) -> np.ndarray:
    try:
        from PIL import Image
    except ImportError:
        raise UnsupportedFormat(f"{path.suffix} needs Pillow, which is not installed") from None
    try:
        with Image.open(path) as im:
            im.load()
            if im.mode in ("1", "L", "P", "LA", "PA", "RGB", "RGBA"):
                if im.mode == "P" or im.mode == "PA":
                    im = im.convert("RGBA")
                arr = np.asarray(im, dtype=np.float64)
                maxval = 1.0 if im.mode == "1" else 255.0
            elif im.mode in ("I;16", "I;16B", "I;16L", "I"):
                arr = np.asarray(im, dtype=np.float64)
                maxval = 65535.0
            else:
                raise UnsupportedFormat(f"unsupported image mode {im.mode}")
    except (OSError, SyntaxError) as exc:
        raise UnsupportedFormat(f"cannot decode {path}: {exc}") from None
    if arr.ndim == 3:
        arr = arr[..., :3] @ _LUMA if arr.shape[2] >= 3 else arr[..., 0]
    return np.clip(arr / maxval, 0.0, 1.0)


def load_image(path) -> GrayImage:
    """Load a grayscale (or color, reduced to luma) raster normalized to [0, 1]."""
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(path)
    data = path.read_bytes()
    if data[:1] == b"P" and data[1:2] in (b"2", b"3", b"5", b"6"):
        return GrayImage(_read_pnm(data))
    if data[:1] == b"P" and data[1:2] in (b"1", b"4"):
        raise UnsupportedFormat("bitmap PNM (P1/P4) is not supported")
    return GrayImage(_read_with_pillow(path))


def save_pgm(img, path, maxval: int = 255, ascii: bool = False) -> None:
    """Write ``img`` as a P5 (or P2 with ``ascii=True``) PGM file."""
    px = as_raster(img)
    samples = np.rint(np.clip(px, 0.0, 1.0) * maxval).astype(np.int64)
    h, w = px.shape
    header = f"{'P2' if ascii else 'P5'}\n{w} {h}\n{maxval}\n".encode("ascii")
    if ascii:
        body = "\n".join(" ".join(str(v) for v in row) for row in samples).encode("ascii") + b"\n"
    else:
        body = samples.astype(">u2" if maxval > 255 else "u1").tobytes()
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "wb") as fh:
        fh.write(header + body)


# -- geometry -----------------------------------------------------------------

def _area_matrix(n_in: int, n_out: int) -> np.ndarray:
    """Resampling matrix whose rows average the input cells each output cell covers."""
    edges = np.arange(n_out + 1) * (n_in / n_out)
    lo, hi = edges[:-1, None], edges[1:, None]
    cells = np.arange(n_in)[None, :]
    overlap = np.clip(np.minimum(hi, cells + 1) - np.maximum(lo, cells), 0.0, None)
    return overlap / overlap.sum(axis=1, keepdims=True)


def area_resize(px: np.ndarray, height: int, width: int) -> np.ndarray:
    """Downscale by exact area averaging (box filter with fractional overlaps)."""
    rows = _area_matrix(px.shape[0], height)
    cols = _area_matrix(px.shape[1], width)
    return rows @ px @ cols.T


def preprocess(img: GrayImage, target: int = 256) -> GrayImage:
    """Fit ``img`` onto a ``target`` x ``target`` white canvas.

    Larger images are shrunk by area averaging so the long side equals
    ``target``; the result is centered and padded with background white.
    """
    px = as_raster(img)
    h, w = px.shape
    if h == target and w == target:
        return img if isinstance(img, GrayImage) else GrayImage(px)
    if max(h, w) > target:
        scale = target / max(h, w)
        nh = min(target, max(1, round(h * scale)))
        nw = min(target, max(1, round(w * scale)))
        px = np.clip(area_resize(px, nh, nw), 0.0, 1.0)
        h, w = nh, nw
    out = np.full((target, target), BACKGROUND)
    top, left = (target - h) // 2, (target - w) // 2
    out[top:top + h, left:left + w] = px
    return GrayImage(out)
