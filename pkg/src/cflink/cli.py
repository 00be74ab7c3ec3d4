"""Command-line entry point: ``cflink {stats,predict,evaluate,benchmark,sweep}``.

Exit codes: 0 success, 1 runtime or numerical failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from . import report
from .datasets import DatasetRegistry, default_registry, resolve_graph
from .errors import CFLinkError, DatasetError, ParameterError
from .evaluation import (
    LOCAL_SPECS,
    BaselineParams,
    ExperimentConfig,
    compute_index,
    parse_index_spec,
    run_experiment,
    sparsity_sweep,
    summarize_benchmark,
    valid_index_specs,
)
from .graph import pair_keys
from .stats import compute_stats

log = logging.getLogger("cflink")

DEFAULT_SWEEP = tuple(round(0.5 + 0.05 * i, 2) for i in range(10))


class UsageError(Exception):
    pass


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _index_list(text: str) -> list[str]:
    specs = [s.strip().lower() for s in text.split(",") if s.strip()]
    for s in specs:
        try:
            parse_index_spec(s)
        except ParameterError:
            raise argparse.ArgumentTypeError(
                f"unknown index {s!r}; valid: {', '.join(valid_index_specs())}"
            )
    if not specs:
        raise argparse.ArgumentTypeError("empty index list")
    return specs


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--registry", help="extra dataset registry file (id path N M per line)")
    common.add_argument("-v", "--verbose", action="store_true")

    params = argparse.ArgumentParser(add_help=False)
    params.add_argument("--katz-beta", type=float, default=None,
                        help="Katz damping (default min(0.01, 0.5/lambda_max))")
    params.add_argument("--lo-alpha", type=float, default=0.1)
    params.add_argument("--spm-fraction", type=float, default=0.1)
    params.add_argument("--spm-selections", type=int, default=30)
    params.add_argument("--dense-cap", type=int, default=10_000)

    ev = argparse.ArgumentParser(add_help=False, parents=[params])
    ev.add_argument("--probe", type=float, default=0.1, help="probe fraction")
    ev.add_argument("--runs", type=int, default=100)
    ev.add_argument("--seed", type=int, default=0)
    ev.add_argument("--auc", default="exact", help="exact | sampled:N")
    ev.add_argument("--jobs", type=int, default=1, help="worker processes for independent runs")
    ev.add_argument("--out", type=Path, help="directory for report files")
    ev.add_argument("--format", choices=("csv", "json"), help="write only this format (default both)")
    ev.add_argument("--no-timing", action="store_true",
                    help="write seconds as 0 so report files are byte-stable")

    p = argparse.ArgumentParser(prog="cflink", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("stats", parents=[common], help="structural statistics of a network")
    s.add_argument("dataset", help="registered dataset id or edge-list path")
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.add_argument("--out", type=Path)

    s = sub.add_parser("predict", parents=[common, params], help="top-k nonobserved pairs by score")
    s.add_argument("dataset")
    s.add_argument("--index", type=_index_list, default=["ra+scf"])
    s.add_argument("--top", type=int, default=20)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", type=Path)

    s = sub.add_parser("evaluate", parents=[common, ev], help="AUC over repeated train/probe splits")
    s.add_argument("dataset")
    s.add_argument("--indices", type=_index_list, default=list(LOCAL_SPECS))

    s = sub.add_parser("benchmark", parents=[common, ev], help="table of AUCs with winning rates")
    s.add_argument("datasets", nargs="*")
    s.add_argument("--indices", type=_index_list, default=list(LOCAL_SPECS))
    s.add_argument("--decimals", type=int, default=None,
                   help="round AUCs before deciding winners")

    s = sub.add_parser("sweep", parents=[common, ev], help="AUC against training-set size")
    s.add_argument("dataset")
    s.add_argument("--category", default="cn", choices=("cn", "ra", "cra"))
    s.add_argument("--indices", type=_index_list, default=None, help="overrides --category")
    s.add_argument("--fractions", type=_float_list, default=list(DEFAULT_SWEEP),
                   help="training fractions, comma-separated")
    return p


def _registry(args) -> DatasetRegistry:
    reg = default_registry()
    if args.registry:
        reg.update(DatasetRegistry.load(args.registry))
    return reg


def _params(args) -> BaselineParams:
    return BaselineParams(args.katz_beta, args.lo_alpha, args.spm_fraction, args.spm_selections, args.dense_cap)


def _config(args, dataset, indices, probe=None) -> ExperimentConfig:
    return ExperimentConfig(
        dataset=dataset,
        indices=tuple(indices),
        probe_fraction=args.probe if probe is None else probe,
        runs=args.runs,
        master_seed=args.seed,
        auc_mode=args.auc,
        baselines=_params(args),
        jobs=args.jobs,
    )


def _emit(args, files: dict[str, str]):
    """Write ``{filename: text}`` under ``--out``, honouring ``--format``."""
    if not args.out:
        return
    args.out.mkdir(parents=True, exist_ok=True)
    fmt = getattr(args, "format", None)
    for name, text in files.items():
        if fmt and not name.endswith("." + fmt):
            continue
        (args.out / name).write_text(text, encoding="utf-8")
        log.info("wrote %s", args.out / name)


def cmd_stats(args) -> int:
    name, g = resolve_graph(args.dataset, _registry(args))
    st = compute_stats(g)
    text = report.stats_csv(name, st) if args.format == "csv" else report.stats_json(name, st)
    sys.stdout.write(text)
    _emit(args, {f"stats.{args.format}": text})
    return 0


def cmd_predict(args) -> int:
    if args.top < 1:
        raise UsageError("--top must be at least 1")
    if len(args.index) != 1:
        raise UsageError("--index takes a single index spec")
    _, g = resolve_graph(args.dataset, _registry(args))
    scores, _ = compute_index(args.index[0], g, _params(args), args.seed)
    u, v, s = scores.pairs()
    keep = ~np.isin(pair_keys(u, v, g.node_count), g.edge_keys)
    labels = g.labels
    cand = []
    for a, b, x in zip(u[keep], v[keep], s[keep]):
        la, lb = sorted((labels[a], labels[b]))
        cand.append((-x, la, lb))
    cand.sort()
    rows = [(la, lb, -nx) for nx, la, lb in cand[: args.top]]
    text = report.to_csv(("label_u", "label_v", "score"), rows)
    sys.stdout.write(text)
    _emit(args, {"predictions.csv": text})
    return 0


def _summary_table(rows) -> str:
    return report.format_table(
        ("dataset", "index", "auc_mean", "auc_std", "runs"),
        [(r.dataset, r.index, r.auc_mean, r.auc_std, str(r.runs)) for r in rows],
    )


def cmd_evaluate(args) -> int:
    name, g = resolve_graph(args.dataset, _registry(args))
    rows = run_experiment(_config(args, name, args.indices), g)
    timing = not args.no_timing
    sys.stdout.write(_summary_table(rows))
    _emit(args, {
        "evaluation.csv": report.evaluation_csv(rows, timing=timing),
        "evaluation.json": report.evaluation_json(rows, timing=timing),
    })
    return 0


def cmd_benchmark(args) -> int:
    if not args.datasets:
        raise UsageError("benchmark needs at least one dataset")
    reg = _registry(args)
    rows = []
    for ds in args.datasets:
        try:
            name, g = resolve_graph(ds, reg)
        except DatasetError as exc:
            print(f"warning: skipping {ds}: {exc}", file=sys.stderr)
            continue
        rows += run_experiment(_config(args, name, args.indices), g)
    if not rows:
        raise DatasetError("no dataset could be loaded")
    summary = summarize_benchmark(rows, decimals=args.decimals)
    timing = not args.no_timing
    table = report.benchmark_table_csv(summary)
    lines = [[ds] + [summary.table[ds][k] for k in summary.indices] for ds in summary.datasets]
    lines += [["R_c"] + [summary.r_c[k] for k in summary.indices],
              ["R_g"] + [summary.r_g[k] for k in summary.indices],
              ["mean_auc"] + [summary.mean_auc[k] for k in summary.indices]]
    sys.stdout.write(report.format_table(["dataset", *summary.indices], lines))
    _emit(args, {
        "benchmark.csv": table,
        "evaluation.csv": report.evaluation_csv(rows, timing=timing),
        "evaluation.json": report.evaluation_json(rows, timing=timing, summary=summary),
    })
    return 0


def cmd_sweep(args) -> int:
    name, g = resolve_graph(args.dataset, _registry(args))
    indices = args.indices or [args.category, f"{args.category}+cf", f"{args.category}+scf"]
    rows = sparsity_sweep(_config(args, name, indices), g, args.fractions)
    text = report.sweep_csv(rows)
    sys.stdout.write(text)
    _emit(args, {"sweep.csv": text})
    return 0


COMMANDS = {
    "stats": cmd_stats,
    "predict": cmd_predict,
    "evaluate": cmd_evaluate,
    "benchmark": cmd_benchmark,
    "sweep": cmd_sweep,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.error(str(exc))
    except (ParameterError, DatasetError) as exc:
        print(f"cflink: error: {exc}", file=sys.stderr)
        return 2
    except CFLinkError as exc:
        print(f"cflink: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
