"""Offline signature retrieval from DWT and curvelet subband statistics."""

from .curvelet import CurveletCoeffs, CurveletConfig, curvelet_subbands, fdct_forward, fdct_inverse
from .dwt import Subband, WaveletPyramid, dwt2_forward, dwt2_inverse
from .evaluation import EvalReport, emit_comparison, precision_at_k, recall_at_k, run_benchmark
from .features import FeatureVector, Layout, Transform, extract_features, subband_energy, subband_std
from .image_io import GrayImage, load_image, preprocess, save_pgm
from .retrieval import FeatureDB, FeatureRecord, RankedEntry, canberra, query
from .store import load_db, save_db
from .synth import Jitter, SynthSpec, generate_corpus, write_corpus

__version__ = "0.1.0"

__all__ = [
    "CurveletCoeffs", "CurveletConfig", "curvelet_subbands", "fdct_forward", "fdct_inverse",
    "Subband", "WaveletPyramid", "dwt2_forward", "dwt2_inverse",
    "EvalReport", "emit_comparison", "precision_at_k", "recall_at_k", "run_benchmark",
    "FeatureVector", "Layout", "Transform", "extract_features", "subband_energy", "subband_std",
    "GrayImage", "load_image", "preprocess", "save_pgm",
    "FeatureDB", "FeatureRecord", "RankedEntry", "canberra", "query",
    "load_db", "save_db",
    "Jitter", "SynthSpec", "generate_corpus", "write_corpus",
]
