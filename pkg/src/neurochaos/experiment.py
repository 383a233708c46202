"""End-to-end experiment protocols: high-sample 80/20 runs, low-sample trial
sweeps, and the hybrid-vs-baseline improvement report.

Result documents are bitwise reproducible for a fixed (manifest, config,
seed): JSON serialisation is key-sorted and excludes wall-clock timings.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass

import numpy as np

from . import chaosnet
from .classifiers import gnb_fit, gnb_predict, knn_predict
from .data import LabeledDataset, low_regime_sample, stratified_split
from .errors import DomainError, ProvenanceMismatchError
from .features import (
    NormalizationMode,
    normalize_apply,
    normalize_fit,
    rescale_features,
    transform,
)
from .metrics import boost, confusion, macro_f1
from .neuron import ChaosConfig, DEFAULT_MAX_ITERATIONS, MapKind

SCHEMA_VERSION = 1
LOW_REGIME_TRIALS = 150

ALGORITHMS = ("chaosnet", "knn", "gnb", "cfx_knn", "cfx_gnb")
CHAOS_ALGORITHMS = ("chaosnet", "cfx_knn", "cfx_gnb")


@dataclass(frozen=True)
class ExperimentResult:
    """One (dataset, algorithm, regime) outcome with full provenance."""

    dataset_id: str
    algorithm: str
    regime: str                    # "high" or "low"
    n_per_class: int | None
    macro_f1_mean: float
    trial_f1: tuple[float, ...] | None
    params: dict
    seed: int
    normalization_mode: str
    n_train: int
    n_test: int
    wall_seconds: float            # not serialised: timings break bitwise determinism

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "dataset_id": self.dataset_id,
            "algorithm": self.algorithm,
            "regime": self.regime,
            "n_per_class": self.n_per_class,
            "macro_f1_mean": self.macro_f1_mean,
            "trial_f1": list(self.trial_f1) if self.trial_f1 is not None else None,
            "params": dict(self.params),
            "seed": self.seed,
            "normalization_mode": self.normalization_mode,
            "n_train": self.n_train,
            "n_test": self.n_test,
        }

    @staticmethod
    def from_dict(d: dict) -> "ExperimentResult":
        return ExperimentResult(
            dataset_id=d["dataset_id"],
            algorithm=d["algorithm"],
            regime=d["regime"],
            n_per_class=d["n_per_class"],
            macro_f1_mean=d["macro_f1_mean"],
            trial_f1=tuple(d["trial_f1"]) if d["trial_f1"] is not None else None,
            params=dict(d["params"]),
            seed=d["seed"],
            normalization_mode=d["normalization_mode"],
            n_train=d["n_train"],
            n_test=d["n_test"],
            wall_seconds=0.0,
        )


def _chaos_config(params: dict, max_iterations: int, map_kind: MapKind) -> ChaosConfig:
    try:
        return ChaosConfig(
            q=float(params["q"]),
            b=float(params["b"]),
            epsilon=float(params["epsilon"]),
            map_kind=map_kind,
            max_iterations=max_iterations,
        )
    except KeyError as exc:
        raise DomainError(f"chaos pipelines need q, b, epsilon; missing {exc}") from None


def _fit_predict(algorithm, params, features_train, y_train, features_test, n_classes):
    if algorithm == "chaosnet":
        means = chaosnet.train(features_train, y_train, n_classes)
        return chaosnet.predict(features_test, means)
    if algorithm in ("knn", "cfx_knn"):
        k = int(params.get("k", 1))
        return knn_predict(features_train, y_train, features_test, k)
    if algorithm in ("gnb", "cfx_gnb"):
        return gnb_predict(gnb_fit(features_train, y_train, n_classes), features_test)
    raise DomainError(f"unknown algorithm {algorithm!r}; expected one of {ALGORITHMS}")


def _prepare_features(ds, algorithm, params, mode, train_rows, max_iterations, map_kind):
    """Normalize, transform (chaos pipelines), and rescale (chaosnet) in one place.

    Returns the full feature matrix; callers slice rows. In WHOLE_DATASET
    mode every statistic is fitted on all rows, matching the reference protocol;
    in TRAIN_ONLY mode fitting is restricted to ``train_rows``.
    """
    fit_rows = None if mode is NormalizationMode.WHOLE_DATASET else train_rows
    norm = normalize_fit(ds.X, mode, train_rows=fit_rows)
    Xn = normalize_apply(ds.X, norm)
    if algorithm not in CHAOS_ALGORITHMS:
        return Xn
    config = _chaos_config(params, max_iterations, map_kind)
    M = transform(Xn, config)
    if algorithm == "chaosnet":
        # cosine similarity is scale-sensitive; bring N and E in range with R and H
        M = rescale_features(M, fit_rows=fit_rows)
    return M


def run_high(
    ds: LabeledDataset,
    algorithm: str,
    params: dict,
    seed: int,
    normalization_mode: NormalizationMode = NormalizationMode.WHOLE_DATASET,
    train_fraction: float = 0.8,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
    map_kind: MapKind = MapKind.SKEW_TENT,
) -> ExperimentResult:
    """One stratified 80/20 split; train on the large side, score test macro-F1."""
    start = time.perf_counter()
    split = stratified_split(ds, train_fraction=train_fraction, seed=seed)
    M = _prepare_features(
        ds, algorithm, params, normalization_mode, split.train_rows, max_iterations, map_kind
    )
    pred = _fit_predict(
        algorithm, params, M[split.train_rows], ds.y[split.train_rows],
        M[split.test_rows], ds.n_classes,
    )
    score = macro_f1(confusion(ds.y[split.test_rows], pred, ds.n_classes))
    return ExperimentResult(
        dataset_id=ds.dataset_id,
        algorithm=algorithm,
        regime="high",
        n_per_class=None,
        macro_f1_mean=score,
        trial_f1=None,
        params=dict(params),
        seed=seed,
        normalization_mode=normalization_mode.value,
        n_train=int(split.train_rows.size),
        n_test=int(split.test_rows.size),
        wall_seconds=time.perf_counter() - start,
    )


def run_low(
    ds: LabeledDataset,
    algorithm: str,
    params: dict,
    n_per_class: int,
    master_seed: int,
    normalization_mode: NormalizationMode = NormalizationMode.WHOLE_DATASET,
    holdout_test: bool = False,
    n_trials: int = LOW_REGIME_TRIALS,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
    map_kind: MapKind = MapKind.SKEW_TENT,
) -> ExperimentResult:
    """n_trials random draws of n_per_class training rows per class.

    By default each trial tests on every non-sampled row. With
    ``holdout_test`` the test slice is the fixed 20% side of a stratified
    split seeded with master_seed, and training rows are drawn from the 80%
    side only.
    """
    start = time.perf_counter()
    if not 1 <= n_per_class <= 9:
        raise DomainError(f"n_per_class must lie in 1..9, got {n_per_class}")
    pool_rows = None
    fixed_test = None
    if holdout_test:
        holdout = stratified_split(ds, train_fraction=0.8, seed=master_seed)
        pool_rows = holdout.train_rows
        fixed_test = holdout.test_rows

    whole = normalization_mode is NormalizationMode.WHOLE_DATASET
    if whole:
        M = _prepare_features(
            ds, algorithm, params, normalization_mode, None, max_iterations, map_kind
        )

    scores = []
    for trial in range(n_trials):
        split = low_regime_sample(ds, n_per_class, trial, master_seed, pool_rows=pool_rows)
        test_rows = fixed_test if fixed_test is not None else split.test_rows
        if not whole:
            M = _prepare_features(
                ds, algorithm, params, normalization_mode, split.train_rows,
                max_iterations, map_kind,
            )
        pred = _fit_predict(
            algorithm, params, M[split.train_rows], ds.y[split.train_rows],
            M[test_rows], ds.n_classes,
        )
        scores.append(macro_f1(confusion(ds.y[test_rows], pred, ds.n_classes)))
    return ExperimentResult(
        dataset_id=ds.dataset_id,
        algorithm=algorithm,
        regime="low",
        n_per_class=n_per_class,
        macro_f1_mean=float(np.mean(scores)),
        trial_f1=tuple(scores),
        params=dict(params),
        seed=master_seed,
        normalization_mode=normalization_mode.value,
        n_train=n_per_class * ds.n_classes,
        n_test=int(fixed_test.size) if fixed_test is not None else ds.n_rows - n_per_class * ds.n_classes,
        wall_seconds=time.perf_counter() - start,
    )


def _check_comparable(hybrid: ExperimentResult, baseline: ExperimentResult) -> None:
    if hybrid.dataset_id != baseline.dataset_id:
        raise ProvenanceMismatchError(
            f"datasets differ: {hybrid.dataset_id} vs {baseline.dataset_id}"
        )
    if hybrid.regime != baseline.regime or hybrid.n_per_class != baseline.n_per_class:
        raise ProvenanceMismatchError("regimes differ")
    if hybrid.seed != baseline.seed:
        raise ProvenanceMismatchError(f"seeds differ: {hybrid.seed} vs {baseline.seed}")
    if hybrid.normalization_mode != baseline.normalization_mode:
        raise ProvenanceMismatchError("normalization modes differ")


def compare(hybrid_results, baseline_results) -> dict:
    """Improvement report: single percentage for high runs, per-n plus
    (min, max) for low-regime sweeps. Results pair by (regime, n_per_class)."""
    if isinstance(hybrid_results, ExperimentResult):
        hybrid_results = [hybrid_results]
    if isinstance(baseline_results, ExperimentResult):
        baseline_results = [baseline_results]
    by_key = {(r.regime, r.n_per_class): r for r in baseline_results}
    pairs = []
    for h in hybrid_results:
        key = (h.regime, h.n_per_class)
        if key not in by_key:
            raise ProvenanceMismatchError(f"no baseline result for regime/n {key}")
        b = by_key[key]
        _check_comparable(h, b)
        pairs.append(
            {
                "regime": h.regime,
                "n_per_class": h.n_per_class,
                "f1_hybrid": h.macro_f1_mean,
                "f1_baseline": b.macro_f1_mean,
                "boost_percent": boost(h.macro_f1_mean, b.macro_f1_mean),
            }
        )
    report = {
        "schema_version": SCHEMA_VERSION,
        "dataset_id": hybrid_results[0].dataset_id,
        "hybrid_algorithm": hybrid_results[0].algorithm,
        "baseline_algorithm": baseline_results[0].algorithm,
        "pairs": pairs,
    }
    boosts = [p["boost_percent"] for p in pairs]
    report["boost_min"] = min(boosts)
    report["boost_max"] = max(boosts)
    return report


def results_to_json(results: list[ExperimentResult]) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "results": [r.to_dict() for r in results],
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def results_from_json(text: str) -> list[ExperimentResult]:
    doc = json.loads(text)
    return [ExperimentResult.from_dict(d) for d in doc["results"]]


def summary_csv(results: list[ExperimentResult]) -> str:
    lines = ["dataset,algo,regime,n,mean_f1,seed"]
    for r in results:
        n = "" if r.n_per_class is None else r.n_per_class
        lines.append(
            f"{r.dataset_id},{r.algorithm},{r.regime},{n},{r.macro_f1_mean:.17g},{r.seed}"
        )
    return "\n".join(lines) + "\n"
