"""ChaosNet: per-class mean feature vectors and a cosine-similarity decision rule."""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .errors import EmptyClassError, ShapeMismatchError


@dataclass(frozen=True)
class MeanRepresentation:
    """The column-mean feature vector of one class."""

    class_id: int
    vector: np.ndarray


def train(M: np.ndarray, y: np.ndarray, n_classes: int | None = None) -> list[MeanRepresentation]:
    """Compute one mean representation per class 0..C-1.

    Raises EmptyClassError if any class in 0..C-1 has no training rows.
    """
    M = np.asarray(M, dtype=np.float64)
    y = np.asarray(y)
    if M.shape[0] != y.size:
        raise ShapeMismatchError(f"{M.shape[0]} rows vs {y.size} labels")
    if n_classes is None:
        n_classes = int(y.max()) + 1 if y.size else 0
    means = []
    for c in range(n_classes):
        rows = M[y == c]
        if rows.shape[0] == 0:
            raise EmptyClassError(f"class {c} has no training rows")
        means.append(MeanRepresentation(class_id=c, vector=rows.mean(axis=0)))
    return means


def cosine_similarity(a: np.ndarray, b: np.ndarray) -> float:
    """a.b / (|a||b|), with 0.0 when either vector has zero norm."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ShapeMismatchError(f"widths differ: {a.shape} vs {b.shape}")
    denom = np.linalg.norm(a) * np.linalg.norm(b)
    if denom == 0.0:
        return 0.0
    return float(np.dot(a, b) / denom)


def predict(M: np.ndarray, means: list[MeanRepresentation]) -> np.ndarray:
    """Assign each row the class whose mean vector is most cosine-similar.

    Ties (including all-zero rows, which score 0 against every class) break
    to the lowest class id.
    """
    M = np.asarray(M, dtype=np.float64)
    if not means:
        raise EmptyClassError("no mean representations")
    width = means[0].vector.size
    if M.ndim != 2 or M.shape[1] != width:
        raise ShapeMismatchError(
            f"rows of width {M.shape[1] if M.ndim == 2 else '?'} vs means of width {width}"
        )
    out = np.empty(M.shape[0], dtype=np.int64)
    vectors = [m.vector for m in means]
    for i, row in enumerate(M):
        sims = [cosine_similarity(row, v) for v in vectors]
        out[i] = int(np.argmax(sims))
    return out


def save_means(means: list[MeanRepresentation], path) -> None:
    """Serialise mean representations to CSV (class_id followed by the vector)."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        for m in means:
            writer.writerow([m.class_id] + [f"{v:.17g}" for v in m.vector])


def load_means(path) -> list[MeanRepresentation]:
    means = []
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.reader(fh):
            means.append(
                MeanRepresentation(
                    class_id=int(row[0]),
                    vector=np.array([float(v) for v in row[1:]]),
                )
            )
    return means
