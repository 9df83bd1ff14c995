"""Per-subband texture statistics and the combined feature vector.

For every subband W_k of size M x N::

    E_k     = 1/(M N) * sum |W_k(i, j)|
    sigma_k = sqrt(1/(M N) * sum (W_k(i, j) - mu_k)**2)

and the image is described by ``[sigma_1 .. sigma_n, E_1 .. E_n]``.
E_k is the mean absolute coefficient, not the mean square.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .curvelet import CurveletConfig, curvelet_subbands, fdct_forward
from .dwt import Subband, dwt2_forward
from .errors import EmptySubband, SigretError


@dataclass(frozen=True)
class Transform:
    """Transform descriptor: ``name`` is ``"dwt"`` or ``"curvelet"``."""

    name: str
    params: dict = field(default_factory=dict, hash=False)

    @classmethod
    def dwt(cls, levels: int = 3, wavelet: str = "db4") -> "Transform":
        return cls("dwt", {"levels": levels, "wavelet": wavelet})

    @classmethod
    def curvelet(cls, config: CurveletConfig | None = None) -> "Transform":
        return cls("curvelet", (config or CurveletConfig()).to_params())

    def subband_count(self) -> int:
        if self.name == "dwt":
            return 3 * self.params["levels"] + 1
        if self.name == "curvelet":
            return sum(CurveletConfig.from_params(self.params).orientations())
        raise SigretError(f"unknown transform {self.name!r}")

    def subbands(self, img) -> list[Subband]:
        if self.name == "dwt":
            return dwt2_forward(img, self.params["levels"], self.params["wavelet"]).subbands
        if self.name == "curvelet":
            config = CurveletConfig.from_params(self.params)
            return curvelet_subbands(fdct_forward(img, config))
        raise SigretError(f"unknown transform {self.name!r}")


@dataclass(frozen=True)
class Layout:
    transform: str
    params: dict = field(hash=False)
    n_subbands: int

    @property
    def dim(self) -> int:
        return 2 * self.n_subbands


@dataclass(eq=False)
class FeatureVector:
    values: np.ndarray
    layout: Layout

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.shape != (self.layout.dim,):
            raise SigretError(
                f"vector length {self.values.size} does not match layout dim {self.layout.dim}")

    @property
    def std(self) -> np.ndarray:
        return self.values[:self.layout.n_subbands]

    @property
    def energy(self) -> np.ndarray:
        return self.values[self.layout.n_subbands:]

    def __len__(self):
        return self.values.size

    def __eq__(self, other):
        if not isinstance(other, FeatureVector):
            return NotImplemented
        return self.layout == other.layout and np.array_equal(self.values, other.values)


def _coeffs(band) -> np.ndarray:
    w = np.asarray(band.coeffs if isinstance(band, Subband) else band, dtype=np.float64)
    if w.size == 0:
        raise EmptySubband("subband has no coefficients")
    return w


def subband_energy(band) -> float:
    return float(np.mean(np.abs(_coeffs(band))))


def subband_std(band) -> float:
    # population form, divides by M*N
    return float(np.std(_coeffs(band)))


def extract_features(img, transform: Transform) -> FeatureVector:
    bands = transform.subbands(img)
    stds = [subband_std(b) for b in bands]
    energies = [subband_energy(b) for b in bands]
    layout = Layout(transform.name, dict(transform.params), len(bands))
    return FeatureVector(np.array(stds + energies), layout)
