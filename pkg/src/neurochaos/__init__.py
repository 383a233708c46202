"""Neurochaos learning: chaotic feature extraction and classification.

Each attribute of a normalized dataset drives a 1D piecewise-linear chaotic
neuron; the firing episode per (instance, attribute) cell yields a 4-feature
block (firing time, firing rate, energy, symbol entropy). The resulting
feature matrix feeds either the cosine-similarity ChaosNet classifier or a
conventional back-end (k-NN, Gaussian naive Bayes).
"""

from .chaosnet import MeanRepresentation, cosine_similarity, predict, train
from .classifiers import GnbModel, gnb_fit, gnb_predict, knn_predict
from .data import (
    DatasetSpec,
    LabeledDataset,
    SplitSpec,
    load_csv,
    load_dataset,
    load_manifest,
    low_regime_sample,
    stratified_split,
)
from .experiment import ExperimentResult, compare, run_high, run_low
from .features import (
    NormalizationMode,
    NormalizationParams,
    export_csv,
    fire_features,
    load_feature_csv,
    normalize_apply,
    normalize_fit,
    rescale_features,
    transform,
)
from .metrics import boost, confusion, macro_f1, per_class_prf
from .neuron import (
    ChaosConfig,
    CfxFeature,
    MapKind,
    NeuralTrace,
    extract_features,
    fire,
    iterate_map,
)
from .tuning import Grid, GridSearchResult, Pipeline, grid_search, kfold_indices

__version__ = "0.1.0"

__all__ = [
    "ChaosConfig",
    "CfxFeature",
    "DatasetSpec",
    "ExperimentResult",
    "GnbModel",
    "Grid",
    "GridSearchResult",
    "LabeledDataset",
    "MapKind",
    "MeanRepresentation",
    "NeuralTrace",
    "NormalizationMode",
    "NormalizationParams",
    "Pipeline",
    "SplitSpec",
    "boost",
    "compare",
    "confusion",
    "cosine_similarity",
    "export_csv",
    "extract_features",
    "fire",
    "fire_features",
    "gnb_fit",
    "gnb_predict",
    "grid_search",
    "iterate_map",
    "kfold_indices",
    "knn_predict",
    "load_csv",
    "load_dataset",
    "load_feature_csv",
    "load_manifest",
    "low_regime_sample",
    "macro_f1",
    "normalize_apply",
    "normalize_fit",
    "per_class_prf",
    "predict",
    "rescale_features",
    "run_high",
    "run_low",
    "stratified_split",
    "train",
    "transform",
]
