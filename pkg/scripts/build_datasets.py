#!/usr/bin/env python3
"""Materialise the benchmark CSVs under datasets/.

Iris, Wine and Breast Cancer Wisconsin come from scikit-learn's bundled
copies (written with their conventional raw label strings so loading
exercises label recoding). Haberman's Survival, Ionosphere, Bank Note
Authentication and Seeds are downloaded from the jbrownlee/Datasets mirror of
the UCI originals and validated against their published class distributions
before being written verbatim.

Needs scikit-learn, and network access for the downloaded files. The
repository ships the outputs, so running this is only required to rebuild
from scratch. SHA-256 checksums of the shipped files live in
datasets/checksums.sha256.
"""

import csv
import sys
import urllib.request
from collections import Counter
from pathlib import Path

MIRROR = "https://raw.githubusercontent.com/jbrownlee/Datasets/master"
DOWNLOADS = {
    # file on mirror -> (local name, expected rows, label position, expected class counts)
    "haberman.csv": ("haberman.csv", 306, -1, {"1": 225, "2": 81}),
    "ionosphere.csv": ("ionosphere.csv", 351, -1, {"b": 126, "g": 225}),
    "banknote_authentication.csv": ("banknote.csv", 1372, -1, {"0": 762, "1": 610}),
    "wheat-seeds.csv": ("seeds.csv", 210, -1, {"1": 70, "2": 70, "3": 70}),
}


def write_sklearn_datasets(out_dir: Path) -> None:
    from sklearn.datasets import load_breast_cancer, load_iris, load_wine

    iris = load_iris()
    species = ["Iris-setosa", "Iris-versicolor", "Iris-virginica"]
    with open(out_dir / "iris.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["sepal_length", "sepal_width", "petal_length", "petal_width", "species"])
        for row, target in zip(iris.data, iris.target):
            w.writerow([f"{v:g}" for v in row] + [species[target]])

    wine = load_wine()
    with open(out_dir / "wine.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([name.replace("/", "_") for name in wine.feature_names] + ["class"])
        for row, target in zip(wine.data, wine.target):
            w.writerow([f"{v:g}" for v in row] + [target + 1])

    bc = load_breast_cancer()
    with open(out_dir / "breast_cancer_wisconsin.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([name.replace(" ", "_") for name in bc.feature_names] + ["diagnosis"])
        for row, target in zip(bc.data, bc.target):
            # scikit-learn encodes malignant as 0, benign as 1
            w.writerow([f"{v:.17g}" for v in row] + ["M" if target == 0 else "B"])


def download_and_validate(out_dir: Path) -> None:
    for remote, (local, n_rows, label_pos, expected) in DOWNLOADS.items():
        url = f"{MIRROR}/{remote}"
        print(f"fetching {url}")
        raw = urllib.request.urlopen(url, timeout=60).read()
        text = raw.decode("utf-8")
        rows = [r for r in csv.reader(text.splitlines()) if r]
        if len(rows) != n_rows:
            sys.exit(f"{remote}: expected {n_rows} rows, got {len(rows)}")
        counts = Counter(r[label_pos] for r in rows)
        if dict(counts) != expected:
            sys.exit(f"{remote}: class counts {dict(counts)} != expected {expected}")
        (out_dir / local).write_bytes(raw)
        print(f"  -> {local}: {len(rows)} rows, classes {dict(counts)}")


def main() -> None:
    out_dir = Path(__file__).resolve().parent.parent / "datasets"
    out_dir.mkdir(exist_ok=True)
    write_sklearn_datasets(out_dir)
    download_and_validate(out_dir)
    print("done")


if __name__ == "__main__":
    main()
