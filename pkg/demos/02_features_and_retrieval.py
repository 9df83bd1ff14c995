"""
Texture features and Canberra ranking
=====================================

Index a small synthetic corpus with curvelet features, then query it
with one of the stored signatures. The query comes back first at
distance 0, followed mostly by samples of the same writer.
"""

from sigret import (
    CurveletConfig, FeatureDB, FeatureRecord, SynthSpec, Transform, extract_features,
    generate_corpus, query,
)

corpus = generate_corpus(SynthSpec(writers=6, samples_per_writer=6, seed=11))
transform = Transform.curvelet(CurveletConfig(scales=4, angles=16))

records = [FeatureRecord(sid, writer, "synthetic", extract_features(img, transform))
           for img, writer, sid in corpus]
db = FeatureDB(records[0].vector.layout, records)
print(f"{len(db)} records, {db.layout.n_subbands} subbands -> {db.layout.dim} features")

# the vector is [std_1 .. std_n, energy_1 .. energy_n]
fv = records[0].vector
print("first std values   ", fv.std[:4].round(4))
print("first energy values", fv.energy[:4].round(4))

probe = records[8]
print(f"\nquery {probe.id} (writer {probe.writer})")
for rank, e in enumerate(query(db, probe.vector, k=8), start=1):
    mark = "*" if e.writer == probe.writer else " "
    print(f"{rank:>3} {mark} {e.id:<10} {e.distance:8.4f}")
