"""Confusion matrix, macro-averaged F1, and the relative improvement metric."""

from __future__ import annotations

import numpy as np

from .errors import EmptyMatrixError, LabelOutOfRangeError, ShapeMismatchError, ZeroBaselineError


def confusion(y_true, y_pred, n_classes: int) -> np.ndarray:
    """Count matrix with entry (i, j) = instances of true class i predicted as j."""
    y_true = np.asarray(y_true, dtype=np.int64)
    y_pred = np.asarray(y_pred, dtype=np.int64)
    if y_true.size != y_pred.size:
        raise ShapeMismatchError(f"{y_true.size} true vs {y_pred.size} predicted")
    for name, arr in (("true", y_true), ("predicted", y_pred)):
        if arr.size and (arr.min() < 0 or arr.max() >= n_classes):
            raise LabelOutOfRangeError(f"{name} labels outside 0..{n_classes - 1}")
    cm = np.zeros((n_classes, n_classes), dtype=np.int64)
    np.add.at(cm, (y_true, y_pred), 1)
    return cm


def per_class_prf(cm: np.ndarray):
    """One-vs-rest precision, recall, F1 per class; 0/0 counts as 0."""
    cm = np.asarray(cm)
    tp = np.diag(cm).astype(np.float64)
    fp = cm.sum(axis=0) - tp
    fn = cm.sum(axis=1) - tp
    precision = np.divide(tp, tp + fp, out=np.zeros_like(tp), where=(tp + fp) > 0)
    recall = np.divide(tp, tp + fn, out=np.zeros_like(tp), where=(tp + fn) > 0)
    psum = precision + recall
    f1 = np.divide(2 * precision * recall, psum, out=np.zeros_like(tp), where=psum > 0)
    return precision, recall, f1


def macro_f1(cm: np.ndarray) -> float:
    """Unweighted mean of per-class F1 over all declared classes.

    Classes absent from the evaluated slice still count with F1 = 0, which
    keeps the metric comparable across low-sample trials.
    """
    cm = np.asarray(cm)
    if cm.sum() == 0:
        raise EmptyMatrixError("confusion matrix has zero total count")
    _, _, f1 = per_class_prf(cm)
    return float(f1.mean())


def boost(f1_hybrid: float, f1_baseline: float) -> float:
    """Relative macro-F1 improvement of the hybrid over the baseline, in percent."""
    if f1_baseline <= 0.0:
        raise ZeroBaselineError("baseline macro-F1 must be positive")
    return (f1_hybrid - f1_baseline) / f1_baseline * 100.0
