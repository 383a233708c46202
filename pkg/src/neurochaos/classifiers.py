"""Native hybrid back-ends: k-nearest neighbours and Gaussian naive Bayes.

Both run on raw or chaotic features. Deterministic tie handling throughout:
distance ties prefer the lower training-row index, vote and posterior ties
prefer the lowest class id.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyClassError, KTooLargeError, ShapeMismatchError

GNB_SMOOTHING_SCALE = 1e-9


def knn_predict(
    train_M: np.ndarray,
    train_y: np.ndarray,
    test_M: np.ndarray,
    k: int,
) -> np.ndarray:
    """Majority vote among the k nearest training rows (Euclidean distance)."""
    train_M = np.asarray(train_M, dtype=np.float64)
    test_M = np.asarray(test_M, dtype=np.float64)
    train_y = np.asarray(train_y, dtype=np.int64)
    if train_M.ndim != 2 or test_M.ndim != 2 or train_M.shape[1] != test_M.shape[1]:
        raise ShapeMismatchError(
            f"train width {train_M.shape} vs test width {test_M.shape}"
        )
    if train_M.shape[0] != train_y.size:
        raise ShapeMismatchError(f"{train_M.shape[0]} rows vs {train_y.size} labels")
    if not 1 <= k <= train_M.shape[0]:
        raise KTooLargeError(f"k={k} with {train_M.shape[0]} training rows")
    n_classes = int(train_y.max()) + 1
    out = np.empty(test_M.shape[0], dtype=np.int64)
    for i, row in enumerate(test_M):
        d2 = ((train_M - row) ** 2).sum(axis=1)
        # stable sort keeps the lower training index first on exact ties
        nearest = np.argsort(d2, kind="stable")[:k]
        votes = np.bincount(train_y[nearest], minlength=n_classes)
        out[i] = int(votes.argmax())
    return out


@dataclass(frozen=True)
class GnbModel:
    priors: np.ndarray
    means: np.ndarray       # (n_classes, n_features)
    variances: np.ndarray   # (n_classes, n_features), floored at smoothing
    smoothing: float


def gnb_fit(train_M: np.ndarray, train_y: np.ndarray, n_classes: int | None = None) -> GnbModel:
    """Empirical priors plus per-class feature means and floored variances.

    The variance floor is 1e-9 times the largest whole-train per-feature
    variance (or 1e-9 if every feature is constant); chaotic feature columns
    are frequently constant within a class, and an unsmoothed zero variance
    would degenerate the log-density.
    """
    train_M = np.asarray(train_M, dtype=np.float64)
    train_y = np.asarray(train_y, dtype=np.int64)
    if train_M.shape[0] != train_y.size:
        raise ShapeMismatchError(f"{train_M.shape[0]} rows vs {train_y.size} labels")
    if n_classes is None:
        n_classes = int(train_y.max()) + 1
    global_var = train_M.var(axis=0)
    top = float(global_var.max()) if global_var.size else 0.0
    smoothing = GNB_SMOOTHING_SCALE * top if top > 0.0 else GNB_SMOOTHING_SCALE
    priors = np.empty(n_classes)
    means = np.empty((n_classes, train_M.shape[1]))
    variances = np.empty((n_classes, train_M.shape[1]))
    for c in range(n_classes):
        rows = train_M[train_y == c]
        if rows.shape[0] == 0:
            raise EmptyClassError(f"class {c} has no training rows")
        priors[c] = rows.shape[0] / train_M.shape[0]
        means[c] = rows.mean(axis=0)
        variances[c] = np.maximum(rows.var(axis=0), smoothing)
    return GnbModel(priors=priors, means=means, variances=variances, smoothing=smoothing)


def gnb_predict(model: GnbModel, test_M: np.ndarray) -> np.ndarray:
    """argmax over classes of log prior + sum of per-feature log normal densities."""
    test_M = np.asarray(test_M, dtype=np.float64)
    if test_M.ndim != 2 or test_M.shape[1] != model.means.shape[1]:
        raise ShapeMismatchError(
            f"test width {test_M.shape} vs model width {model.means.shape[1]}"
        )
    n_classes = model.priors.size
    scores = np.empty((test_M.shape[0], n_classes))
    for c in range(n_classes):
        var = model.variances[c]
        log_density = -0.5 * (
            np.log(2.0 * np.pi * var) + (test_M - model.means[c]) ** 2 / var
        ).sum(axis=1)
        scores[:, c] = np.log(model.priors[c]) + log_density
    return scores.argmax(axis=1).astype(np.int64)
