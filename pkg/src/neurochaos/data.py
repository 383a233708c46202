"""CSV ingestion with label recoding, reproducible splits, and low-sample trials.

Randomness contract: every split derives from ``numpy.random.default_rng``
seeded either directly (stratified splits) or through a SeedSequence over
(master_seed, n_per_class, trial) for low-sample trials, so any trial can be
regenerated in isolation on any platform.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    ClassTooSmallError,
    ParseError,
    ShapeMismatchError,
    UnknownLabelError,
)


@dataclass(frozen=True)
class LabeledDataset:
    """Attribute matrix with contiguous integer labels 0..C-1."""

    dataset_id: str
    X: np.ndarray
    y: np.ndarray
    n_classes: int
    attribute_names: tuple[str, ...]

    @property
    def n_rows(self) -> int:
        return int(self.X.shape[0])

    @property
    def n_attributes(self) -> int:
        return int(self.X.shape[1])

    def class_counts(self) -> np.ndarray:
        return np.bincount(self.y, minlength=self.n_classes)


@dataclass(frozen=True)
class SplitSpec:
    """Disjoint train/test row indices plus the seed that generated them."""

    train_rows: np.ndarray
    test_rows: np.ndarray
    seed: int


def load_csv(
    path,
    label_column,
    label_map: dict[str, int],
    has_header: bool = False,
    dataset_id: str | None = None,
) -> LabeledDataset:
    """Parse a CSV into a LabeledDataset.

    ``label_column`` selects by header name (when has_header) or by integer
    index. Every raw label must appear in ``label_map``, whose values must
    cover 0..C-1. Attribute cells must parse as finite floats; failures carry
    row/column context.
    """
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        rows = [row for row in reader if row]
    if not rows:
        raise ParseError(f"{path}: empty file")

    if has_header:
        header = rows[0]
        rows = rows[1:]
        if isinstance(label_column, str):
            try:
                label_idx = header.index(label_column)
            except ValueError:
                raise ParseError(f"{path}: no column named {label_column!r}") from None
        else:
            label_idx = int(label_column)
        names = [h for i, h in enumerate(header) if i != label_idx]
    else:
        if isinstance(label_column, str):
            raise ParseError(f"{path}: label column by name requires a header")
        label_idx = int(label_column)
        names = None

    width = len(rows[0])
    if label_idx < 0:
        label_idx += width
    if names is None:
        names = [f"attr{i}" for i in range(width - 1)]

    codes = sorted(set(label_map.values()))
    if codes != list(range(len(codes))):
        raise ParseError(f"label_map values must cover 0..C-1, got {codes}")
    n_classes = len(codes)

    X = np.empty((len(rows), width - 1))
    y = np.empty(len(rows), dtype=np.int64)
    for i, row in enumerate(rows):
        if len(row) != width:
            raise ParseError(f"{path}: row {i} has {len(row)} fields, expected {width}", row=i)
        raw_label = row[label_idx].strip()
        if raw_label not in label_map:
            raise UnknownLabelError(f"{path}: row {i}: label {raw_label!r} not in label map")
        y[i] = label_map[raw_label]
        col = 0
        for j, cell in enumerate(row):
            if j == label_idx:
                continue
            try:
                value = float(cell)
            except ValueError:
                raise ParseError(
                    f"{path}: row {i}, column {j}: cannot parse {cell!r}", row=i, column=j
                ) from None
            if not np.isfinite(value):
                raise ParseError(
                    f"{path}: row {i}, column {j}: non-finite value", row=i, column=j
                )
            X[i, col] = value
            col += 1
    return LabeledDataset(
        dataset_id=dataset_id or path.stem,
        X=X,
        y=y,
        n_classes=n_classes,
        attribute_names=tuple(names),
    )


def stratified_split(ds: LabeledDataset, train_fraction: float = 0.8, seed: int = 0) -> SplitSpec:
    """Per-class random partition: floor(train_fraction * count) to train, rest to test."""
    if not 0.0 < train_fraction < 1.0:
        raise ShapeMismatchError(f"train_fraction must lie in (0, 1), got {train_fraction}")
    counts = ds.class_counts()
    small = np.flatnonzero(counts < 2)
    if small.size:
        raise ClassTooSmallError(f"class(es) {small.tolist()} have fewer than 2 rows")
    rng = np.random.default_rng(seed)
    train, test = [], []
    for c in range(ds.n_classes):
        members = np.flatnonzero(ds.y == c)
        perm = rng.permutation(members)
        n_train = int(np.floor(train_fraction * members.size))
        train.append(perm[:n_train])
        test.append(perm[n_train:])
    return SplitSpec(
        train_rows=np.sort(np.concatenate(train)),
        test_rows=np.sort(np.concatenate(test)),
        seed=seed,
    )


def low_regime_sample(
    ds: LabeledDataset,
    n_per_class: int,
    trial: int,
    master_seed: int,
    pool_rows: np.ndarray | None = None,
) -> SplitSpec:
    """Draw exactly n_per_class training rows per class; test on the remainder.

    The child generator is seeded from (master_seed, n_per_class, trial), so
    the 150-trial schedule can be enumerated in any order. ``pool_rows``
    restricts the rows the training sample may come from (the remainder still
    excludes only the sampled rows).
    """
    if n_per_class < 1:
        raise ClassTooSmallError(f"n_per_class must be >= 1, got {n_per_class}")
    pool = np.arange(ds.n_rows) if pool_rows is None else np.asarray(pool_rows)
    rng = np.random.default_rng(np.random.SeedSequence([master_seed, n_per_class, trial]))
    train = []
    for c in range(ds.n_classes):
        members = pool[ds.y[pool] == c]
        if members.size <= n_per_class:
            raise ClassTooSmallError(
                f"class {c} has {members.size} candidate rows, need more than {n_per_class}"
            )
        train.append(rng.choice(members, size=n_per_class, replace=False))
    train = np.sort(np.concatenate(train))
    test = np.setdiff1d(np.arange(ds.n_rows), train)
    return SplitSpec(train_rows=train, test_rows=test, seed=master_seed)


@dataclass(frozen=True)
class DatasetSpec:
    """One manifest entry: where a dataset lives and how to decode it."""

    dataset_id: str
    path: Path
    label_column: object
    label_map: dict[str, int]
    has_header: bool


def load_manifest(path) -> dict[str, DatasetSpec]:
    """Read a manifest JSON mapping dataset ids to CSV descriptors.

    Relative CSV paths resolve against the manifest's directory.
    """
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    specs = {}
    for dataset_id, entry in raw.items():
        csv_path = Path(entry["path"])
        if not csv_path.is_absolute():
            csv_path = path.parent / csv_path
        specs[dataset_id] = DatasetSpec(
            dataset_id=dataset_id,
            path=csv_path,
            label_column=entry["label_column"],
            label_map={str(k): int(v) for k, v in entry["label_map"].items()},
            has_header=bool(entry.get("has_header", False)),
        )
    return specs


def load_dataset(spec: DatasetSpec) -> LabeledDataset:
    return load_csv(
        spec.path,
        label_column=spec.label_column,
        label_map=spec.label_map,
        has_header=spec.has_header,
        dataset_id=spec.dataset_id,
    )
