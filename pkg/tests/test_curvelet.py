import numpy as np
import pytest

from sigret.curvelet import (
    CurveletCoeffs, CurveletConfig, curvelet_subbands, fdct_forward, fdct_inverse,
    wedge_angles, window_energy,
)
from sigret.errors import BadConfig, BadDimensions, MalformedCoeffs
from sigret.synth import render_strokes


def _energy(coeffs):
    return sum(float((np.abs(t) ** 2).sum()) for _, _, t in coeffs)


def stroke_image(angle_deg, side=256, half_length=90, radius=1.5):
    t = np.deg2rad(angle_deg)
    c = side / 2
    d = half_length * np.array([np.cos(t), np.sin(t)])
    return 1.0 - 0.9 * render_strokes([np.array([[c, c] - d, [c, c] + d])], radius, side)


def test_schedule():
    assert CurveletConfig(4, 16).orientations() == [1, 16, 16, 1]
    assert CurveletConfig(5, 16).orientations() == [1, 16, 16, 32, 1]
    assert CurveletConfig(6, 8).orientations() == [1, 8, 8, 16, 16, 1]
    assert CurveletConfig(4, 16, finest_is_wavelet=False).orientations() == [1, 16, 16, 32]
    assert CurveletConfig.for_side(256).scales == 5


@pytest.mark.parametrize("kwargs", [dict(scales=1), dict(angles=6), dict(angles=0)])
def test_bad_config(kwargs):
    with pytest.raises(BadConfig):
        CurveletConfig(**kwargs)


def test_tile_counts_for_four_scales(rng):
    c = fdct_forward(rng.random((256, 256)), CurveletConfig(4, 16))
    assert [len(r) for r in c.tiles] == [1, 16, 16, 1]
    assert all(t.size > 0 for _, _, t in c)
    # wrapped tiles are much smaller than the image, except the finest ring
    assert max(t.size for t in c.tiles[1]) < 256 * 256 / 50
    assert c.tiles[-1][0].shape == (256, 256)


@pytest.mark.parametrize("side", [64, 128, 256])
@pytest.mark.parametrize("finest_is_wavelet", [True, False])
def test_windows_partition_unity(side, finest_is_wavelet):
    cfg = CurveletConfig.for_side(side, finest_is_wavelet=finest_is_wavelet)
    np.testing.assert_allclose(window_energy(side, cfg), 1.0, atol=1e-12)


@pytest.mark.parametrize("side", [64, 128, 256])
def test_parseval(rng, side):
    x = rng.random((side, side))
    ratio = _energy(fdct_forward(x, CurveletConfig.for_side(side))) / float((x ** 2).sum())
    assert ratio == pytest.approx(1.0, rel=1e-6)


@pytest.mark.parametrize("side", [64, 128, 256])
@pytest.mark.parametrize("finest_is_wavelet", [True, False])
def test_reconstruction(rng, side, finest_is_wavelet):
    x = rng.random((side, side))
    cfg = CurveletConfig.for_side(side, finest_is_wavelet=finest_is_wavelet)
    back = fdct_inverse(fdct_forward(x, cfg))
    assert np.abs(back - x).max() < 1e-6 * np.abs(x).max()


def test_adjoint_identity(rng):
    # Re <F x, c> == <x, Re F* c> for real x and arbitrary complex c
    cfg = CurveletConfig(3, 8)
    x = rng.standard_normal((32, 32))
    fx = fdct_forward(x, cfg)
    c = CurveletCoeffs(cfg, [[rng.standard_normal(t.shape) + 1j * rng.standard_normal(t.shape)
                              for t in row] for row in fx.tiles], 32)
    lhs = sum(np.vdot(t, u) for (_, _, t), (_, _, u) in zip(fx, c))
    rhs = np.vdot(x, fdct_inverse(c))
    assert lhs.real == pytest.approx(rhs, rel=1e-9)


def test_zero_image_and_zero_coeffs():
    cfg = CurveletConfig(4, 16)
    c = fdct_forward(np.zeros((64, 64)), cfg)
    assert all(not t.any() for _, _, t in c)
    assert not fdct_inverse(c).any()
    bands = curvelet_subbands(c)
    assert len(bands) == 34 and all(not b.coeffs.any() for b in bands)


def test_linearity(rng):
    cfg = CurveletConfig(4, 16)
    x, y = rng.standard_normal((2, 64, 64))
    a, b = 2.5, -0.75
    lhs = fdct_forward(a * x + b * y, cfg)
    fx, fy = fdct_forward(x, cfg), fdct_forward(y, cfg)
    for (_, _, t), (_, _, tx), (_, _, ty) in zip(lhs, fx, fy):
        np.testing.assert_allclose(t, a * tx + b * ty, atol=1e-6)


def test_subbands_are_magnitudes():
    cfg = CurveletConfig(2, 4)
    c = fdct_forward(np.zeros((8, 8)), cfg)
    c.tiles[0][0] = np.full(c.tiles[0][0].shape, 3 + 4j)
    bands = curvelet_subbands(c)
    np.testing.assert_array_equal(bands[0].coeffs, 5.0)
    assert [b.label for b in bands] == [(0, 0), (1, 0)]


def test_canonical_order():
    c = fdct_forward(np.zeros((64, 64)), CurveletConfig(4, 16))
    labels = [b.label for b in curvelet_subbands(c)]
    assert labels == [(0, 0)] + [(1, i) for i in range(16)] + [(2, i) for i in range(16)] + [(3, 0)]


def test_stroke_energy_preserved():
    x = stroke_image(30)
    back = fdct_inverse(fdct_forward(x, CurveletConfig.for_side(256)))
    assert float((back ** 2).sum()) == pytest.approx(float((x ** 2).sum()), rel=1e-6)


@pytest.mark.parametrize("angle", [0, 20, 45, 65, 90, 110, 135, 160])
def test_directional_selectivity(angle):
    side = 256
    cfg = CurveletConfig.for_side(side)
    c = fdct_forward(stroke_image(angle, side), cfg)
    energy = np.array([float((np.abs(t) ** 2).sum()) for t in c.tiles[1]])
    n = len(energy)
    folded = energy[:n // 2] + energy[n // 2:]
    # a stroke at angle a concentrates its spectrum along the normal a + 90 deg
    normal = np.deg2rad(angle + 90) % np.pi
    expected = int(round(normal / (2 * np.pi / n))) % (n // 2)
    best = int(np.argmax(folded))
    assert min((best - expected) % (n // 2), (expected - best) % (n // 2)) <= 1


def test_wedge_angles_span_circle():
    ang = wedge_angles(128, CurveletConfig(4, 16), 1)
    np.testing.assert_allclose(np.diff(ang), 2 * np.pi / 16)


def test_bad_dimensions():
    cfg = CurveletConfig(4, 16)
    with pytest.raises(BadDimensions):
        fdct_forward(np.zeros((96, 96)), cfg)
    with pytest.raises(BadDimensions):
        fdct_forward(np.zeros((64, 32)), cfg)
    with pytest.raises(BadDimensions):
        fdct_forward(np.zeros((8, 8)), cfg)


def test_schedule_too_fine_for_side():
    with pytest.raises(BadConfig):
        fdct_forward(np.zeros((16, 16)), CurveletConfig(4, 64, finest_is_wavelet=False))


def test_malformed_coeffs(rng):
    c = fdct_forward(rng.random((64, 64)), CurveletConfig(3, 8))
    c.tiles[1] = c.tiles[1][:-1]
    with pytest.raises(MalformedCoeffs):
        fdct_inverse(c)
    c = fdct_forward(rng.random((64, 64)), CurveletConfig(3, 8))
    c.tiles[1][0] = np.zeros((2, 2))
    with pytest.raises(MalformedCoeffs):
        fdct_inverse(c)
