"""Command-line front end: synth, cluster, baseline, sweep, eval.

Every option can also be supplied through an environment variable named
MVSC_<DEST> (e.g. MVSC_LAMBDA1=0.01) or, for cluster/sweep, a key-value
config file passed with --config. Precedence: explicit flag > environment
> config file > built-in default.

Manifests are JSON with the fixed key set {config, dataset, labels,
weights, metrics?, converged, iterations, timing}; metrics render in
percent with 4 decimals. Traces and sweeps are CSV.
"""

from __future__ import annotations

import argparse
import hashlib
import itertools
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

from .data import (
    DatasetFormatError,
    MultiViewDataset,
    SynthSpec,
    generate_synthetic,
    load_dataset,
    normalize,
    save_dataset,
)
from .graph_ops import laplacian
from .metrics import MetricReport, compute_metrics
from .solver import SolverConfig, solve
from .spectral import ncut_baseline

ENV_PREFIX = "MVSC_"

# spec'd CLI tokens for the ablation modes, plus the canonical names
_ABLATION_TOKENS = {
    "full": "full",
    "eq7": "uniform_weights",
    "eq6": "no_spectral_norm",
    "uniform_weights": "uniform_weights",
    "no_spectral_norm": "no_spectral_norm",
}

_SOLVER_KEYS = (
    "lambda1", "lambda2", "lambda3", "mu0", "rho", "mu_max",
    "max_iter", "tol", "k_init", "clusters", "ablation",
    "labels_from", "normalize", "seed",
)


def _read_config_file(path: str) -> dict[str, str]:
    """Parse `key = value` lines; '#' starts a comment."""
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key = value, got {raw.strip()!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in _SOLVER_KEYS:
                raise ValueError(f"{path}:{lineno}: unknown config key {key!r}")
            values[key] = value
    return values


def _apply_overrides(parser: argparse.ArgumentParser, file_values: dict[str, str]) -> None:
    """Layer config-file values then environment variables over parser defaults.

    String defaults pass back through each option's type converter inside
    argparse, so overrides are validated exactly like flag values. A
    required option becomes optional once an override supplies it.
    """
    overrides = dict(file_values)
    for action in parser._actions:
        if not action.option_strings:
            continue
        env = os.environ.get(ENV_PREFIX + action.dest.upper())
        if env is not None:
            overrides[action.dest] = env
    for action in parser._actions:
        if action.dest in overrides and action.option_strings:
            action.required = False
    known = {action.dest for action in parser._actions}
    parser.set_defaults(**{k: v for k, v in overrides.items() if k in known})


def _comma_ints(text: str) -> tuple[int, ...]:
    return tuple(int(part) for part in text.split(","))


def _comma_floats(text: str) -> tuple[float, ...]:
    return tuple(float(part) for part in text.split(","))


def _bool_flag(text) -> bool:
    if isinstance(text, bool):
        return text
    return str(text).strip().lower() in ("1", "true", "yes", "on")


def _dataset_fingerprint(dataset: MultiViewDataset) -> dict:
    digest = hashlib.sha256()
    for view in dataset.views:
        digest.update(np.ascontiguousarray(view.values).tobytes())
    if dataset.labels is not None:
        digest.update(np.ascontiguousarray(dataset.labels).tobytes())
    return {
        "n": dataset.n_samples,
        "view_dims": dataset.dims,
        "sha256": digest.hexdigest(),
    }


def _percent(report: MetricReport) -> dict[str, float]:
    return {name: round(100.0 * value, 4) for name, value in report.as_dict().items()}


def _write_json(path: str, payload: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _write_matrix_csv(path: str, matrix: np.ndarray) -> None:
    np.savetxt(path, matrix, fmt="%.17g", delimiter=",")


def cmd_synth(args: argparse.Namespace) -> int:
    spec = SynthSpec(
        clusters=args.clusters,
        samples_per_cluster=args.per_cluster,
        view_dims=args.dims,
        within_cluster_std=args.within_std,
        between_cluster_separation=args.separation,
        noise_feature_counts=args.noise or (0,) * len(args.dims),
        seed=args.seed,
    )
    dataset = generate_synthetic(spec)
    save_dataset(dataset, args.out)
    print(f"wrote {dataset.n_views} views, n={dataset.n_samples}, to {args.out}")
    return 0


def _solver_config_from_args(args: argparse.Namespace) -> SolverConfig:
    return SolverConfig(
        n_clusters=args.clusters,
        lambda1=args.lambda1,
        lambda2=args.lambda2,
        lambda3=args.lambda3,
        mu0=args.mu0,
        rho=args.rho,
        mu_max=args.mu_max,
        max_iter=args.max_iter,
        tol=args.tol,
        k_init=args.k_init,
        ablation=_ABLATION_TOKENS[args.ablation],
        seed=args.seed,
    )


def _config_echo(config: SolverConfig, labels_from: str, normalize_scheme: str) -> dict:
    return {
        "n_clusters": config.n_clusters,
        "lambda1": config.lambda1,
        "lambda2": config.effective_lambda2,
        "lambda3": config.lambda3,
        "mu0": config.mu0,
        "rho": config.rho,
        "mu_max": config.mu_max,
        "max_iter": config.max_iter,
        "tol": config.tol,
        "k_init": config.k_init,
        "ablation": config.ablation,
        "seed": config.seed,
        "labels_from": labels_from,
        "normalize": normalize_scheme,
    }


def cmd_cluster(args: argparse.Namespace) -> int:
    dataset = load_dataset(args.data_dir)
    dataset = normalize(dataset, args.normalize)
    config = _solver_config_from_args(args)

    start = time.perf_counter()
    result = solve(dataset, config, labels_from=args.labels_from)
    elapsed = time.perf_counter() - start

    manifest = {
        "config": _config_echo(config, args.labels_from, args.normalize),
        "dataset": _dataset_fingerprint(dataset),
        "labels": [int(x) for x in result.labels],
        "weights": [[float(x) for x in w] for w in result.weights],
        "converged": result.converged,
        "iterations": result.iterations,
        "timing": elapsed,
    }
    if dataset.labels is not None:
        manifest["metrics"] = _percent(compute_metrics(dataset.labels, result.labels))

    trace_path = args.trace or str(Path(args.out).with_suffix(".trace.csv"))
    result.trace.write_csv(trace_path)
    if args.similarity_out:
        _write_matrix_csv(args.similarity_out, result.fused_similarity)
    if args.laplacian_out:
        _write_matrix_csv(args.laplacian_out, laplacian(result.fused_similarity))
    _write_json(args.out, manifest)
    print(f"wrote {args.out} (converged={result.converged}, iterations={result.iterations})")
    return 0


def cmd_baseline(args: argparse.Namespace) -> int:
    dataset = load_dataset(args.data_dir)
    start = time.perf_counter()
    labels = ncut_baseline(dataset, args.clusters, seed=args.seed,
                           ratio_cut=_bool_flag(args.ratio_cut))
    elapsed = time.perf_counter() - start

    manifest = {
        "config": {
            "n_clusters": args.clusters,
            "seed": args.seed,
            "ratio_cut": _bool_flag(args.ratio_cut),
        },
        "dataset": _dataset_fingerprint(dataset),
        "labels": [int(x) for x in labels],
        "weights": None,
        "converged": True,
        "iterations": 0,
        "timing": elapsed,
    }
    if dataset.labels is not None:
        manifest["metrics"] = _percent(compute_metrics(dataset.labels, labels))
    _write_json(args.out, manifest)
    print(f"wrote {args.out}")
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    dataset = load_dataset(args.data_dir)
    if dataset.labels is None:
        raise DatasetFormatError(f"{args.data_dir}: sweep requires labels.csv")
    dataset = normalize(dataset, args.normalize)

    grid = list(itertools.product(args.lambda1, args.lambda2, args.lambda3))
    rows = []
    for l1, l2, l3 in grid:
        config = SolverConfig(
            n_clusters=args.clusters, lambda1=l1, lambda2=l2, lambda3=l3,
            mu0=args.mu0, rho=args.rho, mu_max=args.mu_max, max_iter=args.max_iter,
            tol=args.tol, k_init=args.k_init,
            ablation=_ABLATION_TOKENS[args.ablation], seed=args.seed,
        )
        result = solve(dataset, config, labels_from=args.labels_from)
        report = _percent(compute_metrics(dataset.labels, result.labels))
        rows.append((l1, l2, l3, report, result.iterations))

    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write("lambda1,lambda2,lambda3,acc,nmi,ari,precision,fscore,iterations\n")
        for l1, l2, l3, report, iterations in rows:
            fh.write(
                f"{l1:.17g},{l2:.17g},{l3:.17g},"
                f"{report['acc']:.4f},{report['nmi']:.4f},{report['ari']:.4f},"
                f"{report['precision']:.4f},{report['fscore']:.4f},{iterations}\n"
            )
    print(f"wrote {args.out} ({len(rows)} grid points)")
    return 0


def _read_label_file(path: str) -> np.ndarray:
    labels = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                value = float(line)
            except ValueError:
                raise DatasetFormatError(f"{path}:{lineno}: non-numeric label {line!r}") from None
            if not value.is_integer():
                raise DatasetFormatError(f"{path}:{lineno}: label {line!r} is not an integer")
            labels.append(int(value))
    if not labels:
        raise DatasetFormatError(f"{path}: no labels found")
    return np.array(labels, dtype=int)


def cmd_eval(args: argparse.Namespace) -> int:
    truth = _read_label_file(args.truth)
    pred = _read_label_file(args.pred)
    report = compute_metrics(truth, pred)
    payload = {"n": int(truth.size), "metrics": _percent(report)}
    if args.out:
        _write_json(args.out, payload)
        print(f"wrote {args.out}")
    else:
        print(json.dumps(payload, indent=2, sort_keys=True))
    return 0


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--lambda1", type=float, default=SolverConfig.lambda1)
    p.add_argument("--lambda2", type=float, default=SolverConfig.lambda2)
    p.add_argument("--lambda3", type=float, default=SolverConfig.lambda3)
    p.add_argument("--mu0", type=float, default=SolverConfig.mu0)
    p.add_argument("--rho", type=float, default=SolverConfig.rho)
    p.add_argument("--mu-max", type=float, default=SolverConfig.mu_max)
    p.add_argument("--max-iter", type=int, default=SolverConfig.max_iter)
    p.add_argument("--tol", type=float, default=SolverConfig.tol)
    p.add_argument("--k-init", type=int, default=SolverConfig.k_init)
    p.add_argument("--clusters", type=int, required=True, help="number of clusters")
    p.add_argument("--ablation", choices=sorted(_ABLATION_TOKENS), default="full")
    p.add_argument("--labels-from", choices=("embedding", "graph"), default="embedding")
    p.add_argument("--normalize", choices=("none", "unit_l2_per_sample", "minmax_per_feature"),
                   default="none")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--config", default=None, help="key=value file with solver settings")


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(prog="mvsc",
                                     description="multi-view subspace clustering toolkit")
    sub = parser.add_subparsers(dest="command", required=True)
    commands: dict[str, argparse.ArgumentParser] = {}

    p = commands["synth"] = sub.add_parser(
        "synth", help="generate a synthetic multi-view dataset directory")
    p.add_argument("--clusters", type=int, required=True)
    p.add_argument("--per-cluster", type=int, required=True)
    p.add_argument("--dims", type=_comma_ints, required=True,
                   help="comma-separated feature counts per view, e.g. 10,10,10")
    p.add_argument("--within-std", type=float, default=1.0)
    p.add_argument("--separation", type=float, default=5.0)
    p.add_argument("--noise", type=_comma_ints, default=None,
                   help="comma-separated noise feature counts per view")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--out", required=True, help="output directory")
    p.set_defaults(func=cmd_synth)

    p = commands["cluster"] = sub.add_parser(
        "cluster", help="run the solver on a dataset directory")
    p.add_argument("data_dir")
    _add_solver_flags(p)
    p.add_argument("-o", "--out", required=True, help="manifest JSON path")
    p.add_argument("--trace", default=None, help="trace CSV path (default: <out>.trace.csv)")
    p.add_argument("--similarity-out", default=None, help="fused similarity CSV path")
    p.add_argument("--laplacian-out", default=None, help="fused-similarity Laplacian CSV path")
    p.set_defaults(func=cmd_cluster)

    p = commands["baseline"] = sub.add_parser(
        "baseline", help="concatenated-views spectral clustering baseline")
    p.add_argument("data_dir")
    p.add_argument("--clusters", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ratio-cut", action="store_true", default=False,
                   help="unnormalized Laplacian instead of the normalized-cut pipeline")
    p.add_argument("-o", "--out", required=True, help="manifest JSON path")
    p.set_defaults(func=cmd_baseline)

    p = commands["sweep"] = sub.add_parser("sweep", help="grid sweep over lambda values")
    p.add_argument("data_dir")
    _add_solver_flags(p)
    # grids replace the scalar lambda flags
    p.set_defaults(lambda1=(SolverConfig.lambda1,), lambda2=(SolverConfig.lambda2,),
                   lambda3=(SolverConfig.lambda3,))
    for action in p._actions:
        if action.dest in ("lambda1", "lambda2", "lambda3"):
            action.type = _comma_floats
            action.help = "comma-separated grid values"
    p.add_argument("-o", "--out", required=True, help="sweep CSV path")
    p.set_defaults(func=cmd_sweep)

    p = commands["eval"] = sub.add_parser("eval", help="metrics between two label files")
    p.add_argument("truth")
    p.add_argument("pred")
    p.add_argument("-o", "--out", default=None, help="metrics JSON path (default: stdout)")
    p.set_defaults(func=cmd_eval)

    return parser, commands


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser, commands = build_parser()

    # route --config and environment overrides through each subcommand's defaults
    probe = argparse.ArgumentParser(add_help=False)
    probe.add_argument("--config", default=None)
    known, _ = probe.parse_known_args(argv)
    file_values = {}
    if known.config:
        try:
            file_values = _read_config_file(known.config)
        except (OSError, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
    for command in commands.values():
        _apply_overrides(command, file_values)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DatasetFormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
