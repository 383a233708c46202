"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
report. Criterion 4 is known to sit above what these hyperparameters can
deliver on random stratified splits (see notes in the failure message); it is
asserted faithfully rather than weakened.
"""

import json
import subprocess
import sys
import time

import numpy as np
import pytest

from neurochaos.chaosnet import MeanRepresentation, cosine_similarity, predict
from neurochaos.data import load_dataset, load_manifest, stratified_split
from neurochaos.errors import NonConvergenceError
from neurochaos.experiment import run_high, run_low
from neurochaos.features import export_csv, load_feature_csv, normalize_apply, normalize_fit, transform
from neurochaos.metrics import confusion, macro_f1
from neurochaos.neuron import ChaosConfig, MapKind, extract_features, fire

from conftest import MANIFEST_PATH
from oracles import naive_features, naive_fire, naive_macro_f1

IRIS_PARAMS = {"q": 0.141, "b": 0.499, "epsilon": 0.147}
WINE_PARAMS = {"q": 0.790, "b": 0.499, "epsilon": 0.262}
HABERMAN_PARAMS = {"q": 0.810, "b": 0.140, "epsilon": 0.003}

# tuned (b, epsilon) pairs with epsilon >= 0.01, for the halting-rate check
TUNED_B_EPS = [
    (0.499, 0.147), (0.969, 0.164), (0.499, 0.262), (0.250, 0.233),
    (0.490, 0.159), (0.060, 0.170), (0.070, 0.238), (0.499, 0.178),
]


def report(criterion: int, ok: bool, detail: str) -> None:
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {criterion:>2}: {status} - {detail}")


def test_criterion_01_firing_oracle():
    """Optimized fire/extract agree with the naive reference on 10^4 tuples."""
    rng = np.random.default_rng(20240817)
    start = time.perf_counter()
    worst_feature_gap = 0.0
    for _ in range(10_000):
        stimulus = float(rng.uniform(0.0, 1.0))
        q = float(rng.uniform(0.01, 0.99))
        b = float(rng.uniform(0.01, 0.99))
        eps = float(rng.uniform(0.01, 0.5))
        kind = MapKind.SKEW_TENT if rng.integers(2) == 0 else MapKind.SKEW_BINARY
        cfg = ChaosConfig(q=q, b=b, epsilon=eps, map_kind=kind)
        trace = fire(stimulus, cfg)
        values = naive_fire(stimulus, q, b, eps, kind.value)
        assert trace.values.tolist() == values
        feats = extract_features(trace, cfg)
        n, r, e, h = naive_features(stimulus, q, b, eps, kind.value)
        assert feats.firing_time == n
        gaps = (
            abs(feats.firing_rate - r), abs(feats.energy - e), abs(feats.entropy - h)
        )
        assert max(gaps) <= 1e-12
        worst_feature_gap = max(worst_feature_gap, *gaps)
    elapsed = time.perf_counter() - start
    ok = elapsed < 10.0
    report(1, ok, f"10000 tuples agree (worst gap {worst_feature_gap:.2e}) in {elapsed:.2f}s")
    assert ok, f"runtime {elapsed:.2f}s exceeds 10s"


def test_criterion_02_hand_traces():
    """The three hand-derived tent-map firing episodes are exact."""
    cfg1 = ChaosConfig(q=0.1, b=0.5, epsilon=0.05)
    t1 = fire(0.4, cfg1)
    f1 = extract_features(t1, cfg1)
    assert t1.values.tolist() == [0.2, 0.4]
    assert f1.firing_time == 2 and f1.firing_rate == 0.0 and f1.entropy == 0.0
    assert abs(f1.energy - 0.05) < 1e-12      # window 0.1, 0.2

    cfg2 = ChaosConfig(q=0.3, b=0.5, epsilon=0.1)
    t2 = fire(0.85, cfg2)
    f2 = extract_features(t2, cfg2)
    assert t2.values.tolist() == [0.6, 0.8]
    assert f2.firing_time == 2 and f2.firing_rate == 0.5 and f2.entropy == 1.0
    assert abs(f2.energy - 0.45) < 1e-12      # window 0.3, 0.6

    cfg3 = ChaosConfig(q=0.141, b=0.499, epsilon=0.147)
    t3 = fire(0.14, cfg3)
    f3 = extract_features(t3, cfg3)
    assert t3.firing_time == 0
    assert (f3.firing_time, f3.firing_rate, f3.energy, f3.entropy) == (0, 0.0, 0.0, 0.0)
    report(2, True, "three hand traces exact (N, R, E, H)")


def test_criterion_03_metric_oracle():
    """macro_f1 matches brute force on 1000 random 3-class vectors."""
    hand = macro_f1(np.array([[8, 2], [3, 7]]))
    assert abs(hand - 0.74937) <= 1e-5
    rng = np.random.default_rng(77)
    worst = 0.0
    for _ in range(1000):
        n = int(rng.integers(1, 80))
        y_true = rng.integers(0, 3, size=n)
        y_pred = rng.integers(0, 3, size=n)
        got = macro_f1(confusion(y_true, y_pred, 3))
        want = naive_macro_f1(y_true.tolist(), y_pred.tolist(), 3)
        gap = abs(got - want)
        worst = max(worst, gap)
        assert gap <= 1e-12
    report(3, True, f"hand case 0.74937 ok; 1000 random vectors, worst gap {worst:.2e}")


def _chaosnet_scores(dataset_id, params, seeds=range(10)):
    ds = load_dataset(load_manifest(MANIFEST_PATH)[dataset_id])
    return np.array(
        [run_high(ds, "chaosnet", params, seed=s).macro_f1_mean for s in seeds]
    )


def test_criterion_04_iris_reproduction():
    """Tuned Iris triple should reach macro-F1 >= 0.95 on 8 of 10 seeds."""
    start = time.perf_counter()
    scores = _chaosnet_scores("iris", IRIS_PARAMS)
    elapsed = time.perf_counter() - start
    count = int((scores >= 0.95).sum())
    ok = count >= 8 and elapsed < 30.0
    report(4, ok, f"{count}/10 seeds >= 0.95 (scores {np.round(scores, 3).tolist()}) in {elapsed:.1f}s")
    assert elapsed < 30.0
    assert count >= 8, (
        f"only {count}/10 seeds reached 0.95. With these hyperparameters the "
        "feature transform maps 20 overlapping rows (14 versicolor, 6 virginica) "
        "to one identical feature vector, so at least 7 of 150 rows are "
        "misclassified by any decision rule; random 30-row test slices then "
        "contain >=2 such rows about 40% of the time. A perfect 1.000 is "
        "attainable on individual lucky splits (3 of these 10 seeds reach it) "
        "but not on 8 of 10. See notes/decisions.md."
    )


def test_criterion_05_wine_reproduction():
    start = time.perf_counter()
    scores = _chaosnet_scores("wine", WINE_PARAMS)
    elapsed = time.perf_counter() - start
    median = float(np.median(scores))
    ok = abs(median - 0.976) <= 0.06 and elapsed < 30.0
    report(5, ok, f"median {median:.4f} vs 0.976 +/- 0.06 in {elapsed:.1f}s")
    assert elapsed < 30.0
    assert abs(median - 0.976) <= 0.06


def test_criterion_06_haberman_reproduction():
    scores = _chaosnet_scores("haberman", HABERMAN_PARAMS)
    median = float(np.median(scores))
    ok = abs(median - 0.560) <= 0.12
    report(6, ok, f"median {median:.4f} vs 0.560 +/- 0.12")
    assert ok


def test_criterion_07_low_regime_boost_direction():
    """CFX features should lift k-NN on Haberman for most n in 1..9."""
    start = time.perf_counter()
    ds = load_dataset(load_manifest(MANIFEST_PATH)["haberman"])
    wins = 0
    per_n = []
    for n in range(1, 10):
        cfx = run_low(ds, "cfx_knn", dict(HABERMAN_PARAMS, k=1), n, master_seed=42)
        raw = run_low(ds, "knn", {"k": 1}, n, master_seed=42)
        win = cfx.macro_f1_mean > raw.macro_f1_mean
        wins += win
        per_n.append(f"n={n}:{'+' if win else '-'}")
    elapsed = time.perf_counter() - start
    ok = wins >= 5 and elapsed < 300.0
    report(7, ok, f"{wins}/9 wins ({' '.join(per_n)}) in {elapsed:.1f}s")
    assert elapsed < 300.0
    assert wins >= 5


def test_criterion_08_cli_determinism(tmp_path):
    """Two identical invocations produce byte-identical JSON, 150 trials included."""
    outputs = []
    for name in ("first", "second"):
        out = tmp_path / f"{name}.json"
        proc = subprocess.run(
            [
                sys.executable, "-m", "neurochaos.cli", "run",
                "--manifest", str(MANIFEST_PATH), "--dataset", "iris",
                "--algo", "chaosnet", "--regime", "low", "--n", "3",
                "--seed", "21", "--out", str(out),
            ],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0, proc.stderr
        outputs.append(out.read_bytes())
    identical = outputs[0] == outputs[1]
    n_trials = len(json.loads(outputs[0])["results"][0]["trial_f1"])
    ok = identical and n_trials == 150
    report(8, ok, f"byte-identical JSON with {n_trials} trial values")
    assert ok


def test_criterion_09_invariant_suite():
    """Bounds, scale invariance, split discipline, relabeling invariance."""
    rng = np.random.default_rng(5150)

    # feature bounds on random firing episodes
    for _ in range(150):
        cfg = ChaosConfig(
            q=float(rng.uniform(0.01, 0.99)),
            b=float(rng.uniform(0.05, 0.95)),
            epsilon=float(rng.uniform(0.02, 0.5)),
            map_kind=MapKind.SKEW_TENT if rng.integers(2) == 0 else MapKind.SKEW_BINARY,
        )
        feats = extract_features(fire(float(rng.uniform(0, 1)), cfg), cfg)
        assert 0.0 <= feats.firing_rate <= 1.0
        assert 0.0 <= feats.energy <= feats.firing_time
        assert 0.0 <= feats.entropy <= 1.0

    # argmax scale invariance of the cosine rule
    checked = 0
    while checked < 100:
        row = rng.random(8)
        means = [MeanRepresentation(i, rng.random(8)) for i in range(3)]
        sims = sorted((cosine_similarity(row, m.vector) for m in means), reverse=True)
        if sims[0] - sims[1] <= 1e-9:
            continue
        c = float(rng.uniform(0.001, 1000.0))
        assert predict(row[None, :], means) == predict((c * row)[None, :], means)
        checked += 1

    # split disjointness and exact stratification
    from neurochaos.data import LabeledDataset

    for _ in range(100):
        counts = rng.integers(5, 40, size=3)
        y = np.repeat(np.arange(3), counts)
        ds = LabeledDataset("r", rng.random((y.size, 2)), y, 3, ("a", "b"))
        split = stratified_split(ds, seed=int(rng.integers(2**31)))
        assert np.intersect1d(split.train_rows, split.test_rows).size == 0
        merged = np.sort(np.concatenate([split.train_rows, split.test_rows]))
        assert np.array_equal(merged, np.arange(y.size))
        for c, count in enumerate(counts):
            assert (y[split.train_rows] == c).sum() == int(np.floor(0.8 * count))

    # macro-F1 invariance under consistent relabeling
    for _ in range(100):
        n = int(rng.integers(5, 60))
        y_true = rng.integers(0, 4, size=n)
        y_pred = rng.integers(0, 4, size=n)
        relabel = rng.permutation(4)
        base = macro_f1(confusion(y_true, y_pred, 4))
        mapped = macro_f1(confusion(relabel[y_true], relabel[y_pred], 4))
        assert abs(base - mapped) <= 1e-12

    # halting statistics across the tuned configurations
    failures = 0
    total = 10_000
    per_config = total // len(TUNED_B_EPS)
    for b, eps in TUNED_B_EPS:
        for _ in range(per_config):
            cfg = ChaosConfig(
                q=float(rng.uniform(0.01, 0.99)), b=b, epsilon=eps,
            )
            try:
                fire(float(rng.uniform(0, 1)), cfg)
            except NonConvergenceError:
                failures += 1
    rate = failures / total
    assert rate < 0.001, f"non-convergence rate {rate:.4%}"
    report(9, True, f"all invariant families hold; halting failure rate {rate:.4%}")


def test_criterion_10_cfx_export_round_trip(tmp_path):
    """The exported Iris feature CSV reloads bitwise-identically."""
    ds = load_dataset(load_manifest(MANIFEST_PATH)["iris"])
    Xn = normalize_apply(ds.X, normalize_fit(ds.X))
    M = transform(Xn, ChaosConfig(**IRIS_PARAMS))
    path = tmp_path / "iris_cfx.csv"
    export_csv(M, ds.y, path)
    M2, y2 = load_feature_csv(path)
    ok = np.array_equal(M, M2) and np.array_equal(ds.y, y2)
    report(10, ok, f"{M.shape[0]}x{M.shape[1]} matrix round-trips bitwise")
    assert ok
