"""Five-fold cross-validated grid search over chaos and classifier hyperparameters."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import chaosnet
from .classifiers import gnb_fit, gnb_predict, knn_predict
from .errors import NonConvergenceError, TooFewRowsError
from .features import rescale_features, transform
from .metrics import confusion, macro_f1
from .neuron import ChaosConfig, DEFAULT_MAX_ITERATIONS, MapKind


class Pipeline(str, Enum):
    CHAOSNET = "chaosnet"
    CFX_KNN = "cfx_knn"
    CFX_GNB = "cfx_gnb"
    RAW_KNN = "knn"
    RAW_GNB = "gnb"


CHAOS_PIPELINES = {Pipeline.CHAOSNET, Pipeline.CFX_KNN, Pipeline.CFX_GNB}
KNN_PIPELINES = {Pipeline.CFX_KNN, Pipeline.RAW_KNN}


def _steps(start: float, stop: float, step: float) -> tuple[float, ...]:
    n = int(round((stop - start) / step)) + 1
    return tuple(round(start + i * step, 10) for i in range(n))


@dataclass(frozen=True)
class Grid:
    """Ordered value lists per hyperparameter.

    Iteration order is q outer, then b, then epsilon, then k; ties in mean
    validation score resolve to the earliest point in that order.
    """

    q: tuple[float, ...] = ()
    b: tuple[float, ...] = ()
    epsilon: tuple[float, ...] = ()
    k: tuple[int, ...] = (1, 3, 5)

    @staticmethod
    def default() -> "Grid":
        # Full sweep; ~4.9M chaos points. Coarsen for anything interactive.
        return Grid(
            q=_steps(0.01, 0.99, 0.01),
            b=_steps(0.01, 0.99, 0.01),
            epsilon=_steps(0.001, 0.499, 0.001),
        )

    def chaos_points(self):
        for q in self.q:
            for b in self.b:
                for eps in self.epsilon:
                    yield q, b, eps


@dataclass(frozen=True)
class GridPoint:
    params: dict
    fold_f1: tuple[float, ...]
    mean_f1: float
    error: str | None = None


@dataclass(frozen=True)
class GridSearchResult:
    best_params: dict
    best_mean_f1: float
    trace: tuple[GridPoint, ...] = field(repr=False)


def kfold_indices(n_rows: int, y: np.ndarray, k_folds: int = 5, seed: int = 0):
    """Stratified folds: each class's shuffled rows are dealt round-robin.

    Classes smaller than k_folds appear in fewer validation folds (each of
    their rows in a distinct fold). Validation sets are disjoint and cover
    every row.
    """
    y = np.asarray(y)
    if n_rows < k_folds:
        raise TooFewRowsError(f"{n_rows} rows with {k_folds} folds")
    rng = np.random.default_rng(seed)
    folds = [[] for _ in range(k_folds)]
    for c in range(int(y.max()) + 1):
        members = rng.permutation(np.flatnonzero(y == c))
        for i, row in enumerate(members):
            folds[i % k_folds].append(int(row))
    all_rows = np.arange(n_rows)
    pairs = []
    for f in folds:
        val = np.sort(np.array(f, dtype=np.int64))
        train = np.setdiff1d(all_rows, val)
        pairs.append((train, val))
    return pairs


def _cv_score(predict_fold, X_rows: int, y: np.ndarray, n_classes: int, folds) -> tuple:
    scores = []
    for train_idx, val_idx in folds:
        pred = predict_fold(train_idx, val_idx)
        scores.append(macro_f1(confusion(y[val_idx], pred, n_classes)))
    return tuple(scores)


def grid_search(
    X_norm: np.ndarray,
    y: np.ndarray,
    n_classes: int,
    grid: Grid,
    pipeline: Pipeline,
    seed: int = 0,
    k_folds: int = 5,
    map_kind: MapKind = MapKind.SKEW_TENT,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
    skip_nonconvergent: bool = False,
) -> GridSearchResult:
    """Score every grid point by mean validation macro-F1 and return the argmax.

    X_norm is the (already normalized) training matrix. Chaos pipelines
    transform it once per (q, b, epsilon) point; folds then slice rows, which
    is sound because the transform is row-independent. A NonConvergenceError
    at some point propagates with the point attached unless
    ``skip_nonconvergent`` is set, in which case the point scores 0.
    """
    X_norm = np.asarray(X_norm, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    pipeline = Pipeline(pipeline)
    folds = kfold_indices(X_norm.shape[0], y, k_folds=k_folds, seed=seed)
    trace: list[GridPoint] = []

    def knn_points(M, chaos_params):
        for k in grid.k:
            params = dict(chaos_params, k=k)
            fold_f1 = _cv_score(
                lambda tr, va: knn_predict(M[tr], y[tr], M[va], k),
                M.shape[0], y, n_classes, folds,
            )
            trace.append(GridPoint(params, fold_f1, float(np.mean(fold_f1))))

    if pipeline in CHAOS_PIPELINES:
        for q, b, eps in grid.chaos_points():
            chaos_params = {"q": q, "b": b, "epsilon": eps}
            config = ChaosConfig(
                q=q, b=b, epsilon=eps, map_kind=map_kind, max_iterations=max_iterations
            )
            try:
                M = transform(X_norm, config)
            except NonConvergenceError as exc:
                if not skip_nonconvergent:
                    raise NonConvergenceError(
                        f"grid point {chaos_params} failed to converge: {exc}",
                        cells=exc.cells,
                    ) from None
                if pipeline is Pipeline.CFX_KNN:
                    for k in grid.k:
                        trace.append(GridPoint(dict(chaos_params, k=k), (), 0.0, str(exc)))
                else:
                    trace.append(GridPoint(chaos_params, (), 0.0, str(exc)))
                continue
            if pipeline is Pipeline.CHAOSNET:
                Mn = rescale_features(M)
                fold_f1 = _cv_score(
                    lambda tr, va: chaosnet.predict(
                        Mn[va], chaosnet.train(Mn[tr], y[tr], n_classes)
                    ),
                    Mn.shape[0], y, n_classes, folds,
                )
                trace.append(GridPoint(chaos_params, fold_f1, float(np.mean(fold_f1))))
            elif pipeline is Pipeline.CFX_KNN:
                knn_points(M, chaos_params)
            else:
                fold_f1 = _cv_score(
                    lambda tr, va: gnb_predict(gnb_fit(M[tr], y[tr], n_classes), M[va]),
                    M.shape[0], y, n_classes, folds,
                )
                trace.append(GridPoint(chaos_params, fold_f1, float(np.mean(fold_f1))))
    elif pipeline is Pipeline.RAW_KNN:
        knn_points(X_norm, {})
    else:
        fold_f1 = _cv_score(
            lambda tr, va: gnb_predict(gnb_fit(X_norm[tr], y[tr], n_classes), X_norm[va]),
            X_norm.shape[0], y, n_classes, folds,
        )
        trace.append(GridPoint({}, fold_f1, float(np.mean(fold_f1))))

    best = trace[0]
    for point in trace[1:]:
        if point.mean_f1 > best.mean_f1:
            best = point
    return GridSearchResult(
        best_params=dict(best.params),
        best_mean_f1=best.mean_f1,
        trace=tuple(trace),
    )


def trace_to_csv(result: GridSearchResult, path) -> None:
    """One row per grid point: parameters, per-fold scores, mean."""
    param_names = sorted({name for p in result.trace for name in p.params})
    n_folds = max((len(p.fold_f1) for p in result.trace), default=0)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(param_names + [f"fold{i}_f1" for i in range(n_folds)] + ["mean_f1"])
        for p in result.trace:
            row = [p.params.get(name, "") for name in param_names]
            row += [f"{v:.17g}" for v in p.fold_f1]
            row += [""] * (n_folds - len(p.fold_f1))
            row.append(f"{p.mean_f1:.17g}")
            writer.writerow(row)
