"""Command-line driver: ``nl run``, ``nl tune``, ``nl compare``.

Exit codes: 0 success, 2 non-convergent neural traces, 3 data errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .data import load_dataset, load_manifest
from .errors import (
    ClassTooSmallError,
    ConstantAttributeError,
    DomainError,
    NeurochaosError,
    NonConvergenceError,
    ParseError,
    UnknownLabelError,
)
from .experiment import (
    ALGORITHMS,
    CHAOS_ALGORITHMS,
    ExperimentResult,
    compare,
    results_from_json,
    results_to_json,
    run_high,
    run_low,
    summary_csv,
)
from .features import NormalizationMode, export_csv, normalize_apply, normalize_fit, transform
from .neuron import ChaosConfig, DEFAULT_MAX_ITERATIONS, MapKind
from .presets import REFERENCE_CHAOS_PARAMS
from .tuning import Grid, Pipeline, grid_search, trace_to_csv

EXIT_OK = 0
EXIT_NONCONVERGENCE = 2
EXIT_DATA = 3


def _parse_grid_axis(text: str, integer: bool = False):
    """Accept 'start:stop:step' or a comma-separated list."""
    if ":" in text:
        start, stop, step = (float(v) for v in text.split(":"))
        values = []
        v = start
        while v <= stop + 1e-12:
            values.append(round(v, 10))
            v += step
        return tuple(int(x) for x in values) if integer else tuple(values)
    parts = [p for p in text.split(",") if p]
    return tuple(int(p) if integer else float(p) for p in parts)


def _chaos_params(args, dataset_id: str) -> dict:
    params = {}
    if args.q is not None:
        params.update(q=args.q, b=args.b, epsilon=args.epsilon)
        if None in (args.q, args.b, args.epsilon):
            raise DomainError("--q, --b and --epsilon must be given together")
    elif dataset_id in REFERENCE_CHAOS_PARAMS:
        params.update(REFERENCE_CHAOS_PARAMS[dataset_id])
    return params


def _cmd_run(args) -> int:
    manifest = load_manifest(args.manifest)
    if args.dataset not in manifest:
        raise ParseError(f"dataset {args.dataset!r} not in manifest ({sorted(manifest)})")
    ds = load_dataset(manifest[args.dataset])
    mode = NormalizationMode.TRAIN_ONLY if args.no_leak else NormalizationMode.WHOLE_DATASET
    map_kind = MapKind(args.map)

    params = {}
    if args.algo in CHAOS_ALGORITHMS:
        params = _chaos_params(args, args.dataset)
        if not params:
            raise DomainError(
                f"{args.algo} needs --q/--b/--epsilon (no reference values for {args.dataset!r})"
            )
    if args.algo in ("knn", "cfx_knn"):
        params["k"] = args.k

    results: list[ExperimentResult] = []
    if args.regime == "high":
        results.append(
            run_high(
                ds, args.algo, params, seed=args.seed, normalization_mode=mode,
                max_iterations=args.max_iterations, map_kind=map_kind,
            )
        )
    else:
        n_values = range(1, 10) if args.n == 0 else [args.n]
        for n in n_values:
            results.append(
                run_low(
                    ds, args.algo, params, n_per_class=n, master_seed=args.seed,
                    normalization_mode=mode, holdout_test=args.holdout_test,
                    max_iterations=args.max_iterations, map_kind=map_kind,
                )
            )

    if args.export_cfx:
        chaos = _chaos_params(args, args.dataset)
        if not chaos:
            raise DomainError("--export-cfx needs chaos parameters")
        config = ChaosConfig(
            q=chaos["q"], b=chaos["b"], epsilon=chaos["epsilon"],
            map_kind=map_kind, max_iterations=args.max_iterations,
        )
        Xn = normalize_apply(ds.X, normalize_fit(ds.X))
        export_csv(transform(Xn, config), ds.y, args.export_cfx)
        print(f"chaotic features written to {args.export_cfx}", file=sys.stderr)

    doc = results_to_json(results)
    if args.out:
        out = Path(args.out)
        out.write_text(doc, encoding="utf-8")
        out.with_suffix(".csv").write_text(summary_csv(results), encoding="utf-8")
        print(f"results written to {out} and {out.with_suffix('.csv')}", file=sys.stderr)
    else:
        sys.stdout.write(doc)
    for r in results:
        n = "" if r.n_per_class is None else f" n={r.n_per_class}"
        print(
            f"{r.dataset_id} {r.algorithm} {r.regime}{n}: "
            f"macro-F1 {r.macro_f1_mean:.4f} ({r.wall_seconds:.2f}s)",
            file=sys.stderr,
        )
    return EXIT_OK


def _cmd_tune(args) -> int:
    manifest = load_manifest(args.manifest)
    if args.dataset not in manifest:
        raise ParseError(f"dataset {args.dataset!r} not in manifest ({sorted(manifest)})")
    ds = load_dataset(manifest[args.dataset])
    pipeline = Pipeline(args.pipeline)
    default = Grid.default()
    grid = Grid(
        q=_parse_grid_axis(args.q_grid) if args.q_grid else default.q,
        b=_parse_grid_axis(args.b_grid) if args.b_grid else default.b,
        epsilon=_parse_grid_axis(args.epsilon_grid) if args.epsilon_grid else default.epsilon,
        k=_parse_grid_axis(args.k_grid, integer=True) if args.k_grid else (1, 3, 5),
    )
    split_rows = None
    if args.train_fraction < 1.0:
        from .data import stratified_split

        split_rows = stratified_split(ds, args.train_fraction, args.seed).train_rows
    X = ds.X if split_rows is None else ds.X[split_rows]
    y = ds.y if split_rows is None else ds.y[split_rows]
    Xn = normalize_apply(X, normalize_fit(X))
    result = grid_search(
        Xn, y, ds.n_classes, grid, pipeline, seed=args.seed,
        map_kind=MapKind(args.map), max_iterations=args.max_iterations,
        skip_nonconvergent=args.skip_nonconvergent,
    )
    if args.trace_csv:
        trace_to_csv(result, args.trace_csv)
        print(f"trace written to {args.trace_csv}", file=sys.stderr)
    doc = {
        "dataset_id": ds.dataset_id,
        "pipeline": pipeline.value,
        "seed": args.seed,
        "best_params": result.best_params,
        "best_mean_f1": result.best_mean_f1,
        "n_points": len(result.trace),
    }
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_compare(args) -> int:
    hybrid = results_from_json(Path(args.hybrid).read_text(encoding="utf-8"))
    baseline = results_from_json(Path(args.baseline).read_text(encoding="utf-8"))
    report = compare(hybrid, baseline)
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nl",
        description="Chaotic feature extraction and classification experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one experiment protocol")
    run.add_argument("--manifest", required=True)
    run.add_argument("--dataset", required=True)
    run.add_argument("--algo", required=True, choices=ALGORITHMS)
    run.add_argument("--regime", required=True, choices=("high", "low"))
    run.add_argument("--n", type=int, default=0,
                     help="low regime: training rows per class (0 sweeps 1..9)")
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--q", type=float)
    run.add_argument("--b", type=float)
    run.add_argument("--epsilon", type=float)
    run.add_argument("--k", type=int, default=1, help="neighbours for knn pipelines")
    run.add_argument("--map", default=MapKind.SKEW_TENT.value,
                     choices=[m.value for m in MapKind])
    run.add_argument("--max-iterations", type=int, default=DEFAULT_MAX_ITERATIONS)
    run.add_argument("--no-leak", action="store_true",
                     help="fit normalization on training rows only")
    run.add_argument("--holdout-test", action="store_true",
                     help="low regime: test on a fixed 20%% holdout instead of the remainder")
    run.add_argument("--export-cfx", metavar="PATH",
                     help="also write the whole-dataset chaotic feature matrix")
    run.add_argument("--out", metavar="PATH", help="write JSON here (plus .csv summary)")
    run.set_defaults(func=_cmd_run)

    tune = sub.add_parser("tune", help="cross-validated grid search")
    tune.add_argument("--manifest", required=True)
    tune.add_argument("--dataset", required=True)
    tune.add_argument("--pipeline", required=True, choices=[p.value for p in Pipeline])
    tune.add_argument("--seed", type=int, default=0)
    tune.add_argument("--train-fraction", type=float, default=0.8,
                      help="tune on this stratified fraction (1.0 = whole dataset)")
    tune.add_argument("--q-grid", help="start:stop:step or comma list")
    tune.add_argument("--b-grid")
    tune.add_argument("--epsilon-grid")
    tune.add_argument("--k-grid")
    tune.add_argument("--map", default=MapKind.SKEW_TENT.value,
                      choices=[m.value for m in MapKind])
    tune.add_argument("--max-iterations", type=int, default=DEFAULT_MAX_ITERATIONS)
    tune.add_argument("--skip-nonconvergent", action="store_true",
                      help="score non-convergent grid points 0 instead of aborting")
    tune.add_argument("--trace-csv", metavar="PATH")
    tune.add_argument("--out", metavar="PATH")
    tune.set_defaults(func=_cmd_tune)

    cmp_ = sub.add_parser("compare", help="improvement report for two result files")
    cmp_.add_argument("hybrid")
    cmp_.add_argument("baseline")
    cmp_.add_argument("--out", metavar="PATH")
    cmp_.set_defaults(func=_cmd_compare)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NonConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except (ParseError, UnknownLabelError, ClassTooSmallError,
            ConstantAttributeError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except NeurochaosError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
