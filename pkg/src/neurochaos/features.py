"""Dataset-level chaotic feature extraction and min-max normalization.

``transform`` fires one neuron per (instance, attribute) cell of a normalized
matrix and lays the four features out in per-attribute blocks: for attribute
k, columns [4k..4k+3] hold (N, R, E, H). The firing loop is vectorised over
all cells simultaneously; results are bitwise identical to the per-cell
``neuron.fire`` / ``neuron.extract_features`` pair.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    ConstantAttributeError,
    DomainError,
    NonConvergenceError,
    ShapeMismatchError,
)
from .neuron import ONE_BELOW, ChaosConfig, MapKind

FEATURES_PER_ATTRIBUTE = 4
FEATURE_NAMES = ("N", "R", "E", "H")


class NormalizationMode(str, Enum):
    """Where the min-max statistics are fitted.

    WHOLE_DATASET matches the reference benchmark protocol (fit before
    splitting); TRAIN_ONLY is the leakage-free variant, in which test values
    outside the fitted range are clamped to [0, 1].
    """

    WHOLE_DATASET = "whole_dataset"
    TRAIN_ONLY = "train_only"


@dataclass(frozen=True)
class NormalizationParams:
    """Per-attribute minimum and maximum, in original units."""

    minimum: np.ndarray
    maximum: np.ndarray

    @property
    def n_attributes(self) -> int:
        return int(self.minimum.size)


def normalize_fit(
    X: np.ndarray,
    mode: NormalizationMode = NormalizationMode.WHOLE_DATASET,
    train_rows: np.ndarray | None = None,
) -> NormalizationParams:
    """Fit per-attribute min/max over all rows or over ``train_rows`` only.

    Raises ConstantAttributeError (with column indices) when an attribute has
    zero range in the fitted rows; the caller decides to drop or abort.
    """
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.size == 0:
        raise ShapeMismatchError(f"expected a non-empty 2D matrix, got shape {X.shape}")
    if mode is NormalizationMode.TRAIN_ONLY:
        if train_rows is None:
            raise DomainError("TRAIN_ONLY normalization requires train_rows")
        fitted = X[np.asarray(train_rows)]
    else:
        fitted = X
    lo = fitted.min(axis=0)
    hi = fitted.max(axis=0)
    constant = np.flatnonzero(hi == lo)
    if constant.size:
        raise ConstantAttributeError(constant.tolist())
    return NormalizationParams(minimum=lo, maximum=hi)


def normalize_apply(X: np.ndarray, params: NormalizationParams) -> np.ndarray:
    """Map each cell by (x - min) / (max - min), clamped to [0, 1].

    Clamping only matters in TRAIN_ONLY mode, where test values may fall
    outside the fitted range; neurons require stimuli in [0, 1].
    """
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != params.n_attributes:
        raise ShapeMismatchError(
            f"matrix has {X.shape[1] if X.ndim == 2 else '?'} attributes, "
            f"params expect {params.n_attributes}"
        )
    out = (X - params.minimum) / (params.maximum - params.minimum)
    np.clip(out, 0.0, 1.0, out=out)
    return out


def fire_features(stimuli: np.ndarray, config: ChaosConfig):
    """Vectorised firing over a flat stimulus vector.

    Returns (N, R, E, H) as four float64 arrays. All active cells advance one
    map step per loop iteration; recognised cells retire. Accumulation order
    per cell matches the scalar implementation, so the values agree bitwise.
    """
    x = np.asarray(stimuli, dtype=np.float64).ravel()
    if x.size and (np.min(x) < 0.0 or np.max(x) > 1.0 or not np.all(np.isfinite(x))):
        bad = np.flatnonzero(~((x >= 0.0) & (x <= 1.0)))
        raise DomainError(f"stimuli must lie in [0, 1]; offending indices {bad[:10].tolist()}")
    m = x.size
    b = config.b
    eps = config.epsilon
    tent = config.map_kind is MapKind.SKEW_TENT

    n = np.zeros(m, dtype=np.int64)
    ones = np.zeros(m, dtype=np.int64)
    energy = np.zeros(m)

    # cells not recognised at z(0)=q keep firing
    idx = np.flatnonzero(np.abs(config.q - x) >= eps)
    z = np.full(idx.size, config.q)
    for _ in range(config.max_iterations):
        if idx.size == 0:
            break
        # accumulate the pre-step state: the window is z(0)..z(N-1)
        energy[idx] += z * z
        ones[idx] += z >= b
        n[idx] += 1
        left = z < b
        if tent:
            nxt = np.where(left, z / b, (1.0 - z) / (1.0 - b))
        else:
            nxt = np.where(left, z / b, (z - b) / (1.0 - b))
        np.minimum(nxt, ONE_BELOW, out=nxt)
        live = np.abs(nxt - x[idx]) >= eps
        idx = idx[live]
        z = nxt[live]
    if idx.size:
        raise NonConvergenceError(
            f"{idx.size} cell(s) did not converge within "
            f"{config.max_iterations} iterations",
            cells=idx.tolist(),
        )

    rate = np.divide(ones, n, out=np.zeros(m), where=n > 0)
    zeros_count = n - ones
    p1 = np.divide(ones, n, out=np.zeros(m), where=n > 0)
    p0 = np.divide(zeros_count, n, out=np.zeros(m), where=n > 0)
    h = -(
        np.where(zeros_count > 0, p0 * np.log2(np.where(zeros_count > 0, p0, 1.0)), 0.0)
        + np.where(ones > 0, p1 * np.log2(np.where(ones > 0, p1, 1.0)), 0.0)
    )
    return n.astype(np.float64), rate, energy, h


def transform(X_norm: np.ndarray, config: ChaosConfig) -> np.ndarray:
    """Fire every (instance, attribute) cell; return the (rows, 4n) feature matrix.

    Deterministic; row i depends only on row i of the input. Propagates
    NonConvergenceError with (row, attribute) context.
    """
    X_norm = np.asarray(X_norm, dtype=np.float64)
    if X_norm.ndim != 2:
        raise ShapeMismatchError(f"expected a 2D matrix, got shape {X_norm.shape}")
    rows, n_attr = X_norm.shape
    out = np.empty((rows, FEATURES_PER_ATTRIBUTE * n_attr))
    if rows == 0:
        return out
    try:
        n, r, e, h = fire_features(X_norm.ravel(), config)
    except NonConvergenceError as exc:
        cells = [(flat // n_attr, flat % n_attr) for flat in (exc.cells or [])]
        raise NonConvergenceError(
            f"non-convergent cells (row, attribute): {cells[:10]}"
            + ("..." if len(cells) > 10 else ""),
            cells=cells,
        ) from None
    out[:, 0::4] = n.reshape(rows, n_attr)
    out[:, 1::4] = r.reshape(rows, n_attr)
    out[:, 2::4] = e.reshape(rows, n_attr)
    out[:, 3::4] = h.reshape(rows, n_attr)
    return out


def rescale_features(M: np.ndarray, fit_rows: np.ndarray | None = None) -> np.ndarray:
    """Min-max rescale each feature column to [0, 1].

    Applied by the ChaosNet pipeline between transform and classification so
    the cosine rule is not dominated by the unbounded N and E columns.
    Constant columns map to zero. ``fit_rows`` restricts the fitted rows
    (leakage-free mode); out-of-range values are clamped.
    """
    M = np.asarray(M, dtype=np.float64)
    fitted = M if fit_rows is None else M[np.asarray(fit_rows)]
    lo = fitted.min(axis=0)
    hi = fitted.max(axis=0)
    span = hi - lo
    span[span == 0] = 1.0
    out = (M - lo) / span
    np.clip(out, 0.0, 1.0, out=out)
    return out


def feature_header(n_attributes: int) -> list[str]:
    return [
        f"f{k}_{name}"
        for k in range(n_attributes)
        for name in FEATURE_NAMES
    ]


def export_csv(M: np.ndarray, labels: np.ndarray, path) -> None:
    """Write the feature matrix plus a label column.

    Header: f0_N,f0_R,f0_E,f0_H,f1_N,...,label. Floats are written with 17
    significant digits, so a reload reproduces the matrix bitwise.
    """
    M = np.asarray(M, dtype=np.float64)
    labels = np.asarray(labels)
    if M.shape[0] != labels.size:
        raise ShapeMismatchError(
            f"{M.shape[0]} feature rows vs {labels.size} labels"
        )
    if M.shape[1] % FEATURES_PER_ATTRIBUTE:
        raise ShapeMismatchError(f"width {M.shape[1]} is not a multiple of 4")
    n_attr = M.shape[1] // FEATURES_PER_ATTRIBUTE
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(feature_header(n_attr) + ["label"])
        for row, label in zip(M, labels):
            writer.writerow([f"{v:.17g}" for v in row] + [int(label)])


def load_feature_csv(path):
    """Reload an exported feature CSV; returns (matrix, labels)."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = list(reader)
    width = len(header) - 1
    M = np.empty((len(rows), width))
    labels = np.empty(len(rows), dtype=np.int64)
    for i, row in enumerate(rows):
        M[i] = [float(v) for v in row[:width]]
        labels[i] = int(row[width])
    return M, labels
