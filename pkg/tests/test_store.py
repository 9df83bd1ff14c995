import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sigret.errors import DimensionMismatch, ParseError, VersionMismatch
from sigret.features import FeatureVector, Layout, Transform
from sigret.retrieval import FeatureDB, FeatureRecord
from sigret.store import load_db, save_db

HAAR1 = Layout("dwt", {"levels": 1, "wavelet": "haar"}, 4)


def random_db(rng, n, layout=HAAR1):
    recs = [FeatureRecord(f"id{int(i):05d}", f"w{int(rng.integers(4))}", "synthetic",
                          FeatureVector(rng.random(layout.dim) * 10 ** rng.uniform(-8, 8), layout))
            for i in rng.permutation(10_000)[:n]]
    return FeatureDB(layout, recs)


def test_golden_fixture(fixtures):
    db = load_db(fixtures / "golden.sigdb")
    assert db.layout == HAAR1
    assert [(r.id, r.writer, r.source) for r in db.records] == [
        ("a01", "alice", "synthetic"), ("b07", "bob", "scans/bob/7.pgm")]
    np.testing.assert_array_equal(db.records[0].vector.values,
                                  [0.5, 0.25, 0.125, 0.0, 1.0, 0.75, 0.5, 0.0])
    np.testing.assert_array_equal(db.records[1].vector.values,
                                  [1.5, 0.1, 0.2, 0.3, 2.0, 0.4, 0.6, 0.8])


def test_golden_fixture_rewrites_identically(fixtures, tmp_path):
    save_db(load_db(fixtures / "golden.sigdb"), tmp_path / "x.sigdb")
    assert (tmp_path / "x.sigdb").read_bytes() == (fixtures / "golden.sigdb").read_bytes()


def test_roundtrip_and_determinism(rng, tmp_path):
    db = random_db(rng, 25)
    save_db(db, tmp_path / "a.sigdb")
    save_db(FeatureDB(db.layout, list(reversed(db.records))), tmp_path / "b.sigdb")
    assert (tmp_path / "a.sigdb").read_bytes() == (tmp_path / "b.sigdb").read_bytes()
    back = load_db(tmp_path / "a.sigdb")
    assert back == FeatureDB(db.layout, sorted(db.records, key=lambda r: r.id))


def test_empty_db(tmp_path):
    save_db(FeatureDB(HAAR1, []), tmp_path / "e.sigdb")
    lines = (tmp_path / "e.sigdb").read_text().splitlines()
    assert len(lines) == 1 and '"count":0' in lines[0]
    assert len(load_db(tmp_path / "e.sigdb")) == 0


@settings(max_examples=30, deadline=None)
@given(st.lists(st.floats(allow_nan=False, allow_infinity=False, width=64),
                min_size=8, max_size=8))
def test_exact_float_roundtrip(tmp_path_factory, values):
    path = tmp_path_factory.mktemp("rt") / "f.sigdb"
    db = FeatureDB(HAAR1, [FeatureRecord("x", "w", "s", FeatureVector(values, HAAR1))])
    save_db(db, path)
    assert load_db(path).records[0].vector.values.tobytes() == np.asarray(values).tobytes()


def _mutate(fixtures, tmp_path, old, new):
    text = (fixtures / "golden.sigdb").read_text().replace(old, new, 1)
    p = tmp_path / "m.sigdb"
    p.write_text(text)
    return p


def test_rejects_bad_dimension(fixtures, tmp_path):
    with pytest.raises(DimensionMismatch):
        load_db(_mutate(fixtures, tmp_path, "0.125,0.0,", "0.125,"))
    with pytest.raises(DimensionMismatch):
        load_db(_mutate(fixtures, tmp_path, '"dim":8', '"dim":9'))


def test_rejects_version(fixtures, tmp_path):
    with pytest.raises(VersionMismatch):
        load_db(_mutate(fixtures, tmp_path, '"version":1', '"version":7'))


@pytest.mark.parametrize("old,new", [
    ('"count":2', '"count":3'),
    ('{"id":"a01"', '{"id":"a01",'),
    ('"writer":"bob"', '"writr":"bob"'),
    ('"id":"b07"', '"id":"a01"'),
    ('"transform":"dwt"', '"transform":"fft"'),
])
def test_rejects_malformed(fixtures, tmp_path, old, new):
    with pytest.raises(ParseError):
        load_db(_mutate(fixtures, tmp_path, old, new))


def test_real_transform_layouts_roundtrip(rng, tmp_path):
    for t in (Transform.dwt(3, "db4"), Transform.curvelet()):
        layout = Layout(t.name, dict(t.params), t.subband_count())
        db = random_db(rng, 3, layout)
        save_db(db, tmp_path / "t.sigdb")
        assert load_db(tmp_path / "t.sigdb").layout == layout
