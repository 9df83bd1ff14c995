import csv
from itertools import combinations

import numpy as np
import pytest

from sigret.curvelet import CurveletConfig
from sigret.errors import BadSpec
from sigret.features import Transform, extract_features
from sigret.image_io import load_image
from sigret.retrieval import canberra
from sigret.synth import Jitter, SynthSpec, generate_corpus, write_corpus


@pytest.fixture(scope="module")
def small_corpus():
    return generate_corpus(SynthSpec(writers=4, samples_per_writer=5, seed=5))


def test_counts_and_labels():
    corpus = generate_corpus(SynthSpec(writers=16, samples_per_writer=12, seed=7, side=64))
    assert len(corpus) == 192
    writers = [w for _, w, _ in corpus]
    assert {writers.count(w) for w in set(writers)} == {12}
    assert len({sid for _, _, sid in corpus}) == 192


def test_deterministic(small_corpus):
    again = generate_corpus(SynthSpec(writers=4, samples_per_writer=5, seed=5))
    for (a, wa, sa), (b, wb, sb) in zip(small_corpus, again):
        assert (wa, sa) == (wb, sb)
        assert a.pixels.tobytes() == b.pixels.tobytes()


def test_seed_changes_output(small_corpus):
    other = generate_corpus(SynthSpec(writers=4, samples_per_writer=5, seed=6))
    assert not np.array_equal(small_corpus[0][0].pixels, other[0][0].pixels)


def test_images_are_sparse_ink(small_corpus):
    for img, _, _ in small_corpus:
        px = img.pixels
        assert px.shape == (256, 256)
        assert 0.0 <= px.min() and px.max() <= 1.0
        assert (px == 1.0).mean() > 0.5
        assert px.min() < 0.5  # some ink was drawn


@pytest.mark.parametrize("spec", [
    SynthSpec(writers=1), SynthSpec(samples_per_writer=0), SynthSpec(seed=-1),
    SynthSpec(jitter=Jitter(points=-1.0)),
])
def test_bad_spec(spec):
    with pytest.raises(BadSpec):
        generate_corpus(spec)


def test_write_corpus(tmp_path, small_corpus):
    manifest = write_corpus(small_corpus, tmp_path / "corpus")
    with open(manifest, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 20
    assert rows[0] == {"path": "w00/w00_s00.pgm", "writer": "w00", "sample": "w00_s00"}
    back = load_image(tmp_path / "corpus" / rows[0]["path"]).pixels
    assert np.abs(back - small_corpus[0][0].pixels).max() <= 1 / 510 + 1e-12


def test_intra_writer_closer_than_inter(small_corpus):
    # oracle: brute-force all-pairs distances over curvelet features
    t = Transform.curvelet(CurveletConfig.for_side(256))
    feats = [(w, extract_features(img, t).values) for img, w, _ in small_corpus]
    intra, inter = [], []
    for (wa, a), (wb, b) in combinations(feats, 2):
        (intra if wa == wb else inter).append(canberra(a, b))
    assert np.mean(intra) < np.mean(inter)
