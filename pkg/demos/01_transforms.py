"""
Wavelet and curvelet subbands of a signature
============================================

Render one synthetic signature, decompose it with a 3-level db4 DWT and
a 5-scale curvelet transform, and check that both decompositions keep
the image energy and invert exactly.
"""

import numpy as np

from sigret import CurveletConfig, SynthSpec, dwt2_forward, dwt2_inverse, fdct_forward, fdct_inverse
from sigret.synth import generate_corpus

img, writer, sample = generate_corpus(SynthSpec(writers=2, samples_per_writer=1, seed=3))[0]
x = img.pixels
print(f"{sample}: {x.shape[1]}x{x.shape[0]}, ink fraction {(x < 1).mean():.3f}")

# DWT: one approximation band plus horizontal/vertical/diagonal details per level
pyr = dwt2_forward(img, levels=3, wavelet="db4")
for sb in pyr.subbands:
    print(f"  dwt level {sb.level} {sb.orientation:<10} {sb.rows:>3}x{sb.cols:<3}"
          f" mean|W| = {np.abs(sb.coeffs).mean():.4f}")
energy = sum((sb.coeffs ** 2).sum() for sb in pyr.subbands)
print(f"DWT energy ratio {energy / (x ** 2).sum():.12f}, "
      f"max reconstruction error {np.abs(dwt2_inverse(pyr) - x).max():.2e}")

# curvelets: wedge count grows with scale, each wedge lives on a small wrapped tile
cfg = CurveletConfig.for_side(256)
coeffs = fdct_forward(img, cfg)
print(f"curvelet wedges per scale {cfg.orientations()}")
for s, row in enumerate(coeffs.tiles):
    shapes = sorted({t.shape for t in row})
    e = sum((np.abs(t) ** 2).sum() for t in row)
    print(f"  scale {s}: {len(row):>2} wedges, tile shapes {shapes[:3]}, energy {e:.1f}")
energy = sum((np.abs(t) ** 2).sum() for _, _, t in coeffs)
print(f"curvelet energy ratio {energy / (x ** 2).sum():.12f}, "
      f"max reconstruction error {np.abs(fdct_inverse(coeffs) - x).max():.2e}")
