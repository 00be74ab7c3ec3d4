"""AUC evaluation, repeated-split experiments and winning rates."""

from __future__ import annotations

import time
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .baselines import (
    BASELINES,
    DEFAULT_DENSE_CAP,
    DEFAULT_LO_ALPHA,
    DEFAULT_SPM_FRACTION,
    DEFAULT_SPM_SELECTIONS,
    katz_scores,
    lo_scores,
    spm_scores,
)
from .enhance import ENHANCEMENTS
from .errors import CFLinkError, NumericalError, ParameterError, ResourceError
from .graph import Graph, TrainProbeSplit, pair_keys, split_train_probe
from .local import LOCAL_INDICES
from .scores import ScoreMatrix

BASE_INDICES = tuple(LOCAL_INDICES) + tuple(BASELINES)
REPORT_COLUMNS = ("dataset", "index", "auc_mean", "auc_std", "runs", "probe_fraction", "seconds")


# ---------------------------------------------------------------------------
# AUC


def _auc_counts(pos: np.ndarray, neg_sorted: np.ndarray, implicit_neg_zeros: int):
    """Count (positive > negative) and ties over all positive/negative pairs."""
    lo = np.searchsorted(neg_sorted, pos, side="left")
    hi = np.searchsorted(neg_sorted, pos, side="right")
    wins = int(lo.sum())
    ties = int((hi - lo).sum())
    if implicit_neg_zeros:
        wins += implicit_neg_zeros * int(np.count_nonzero(pos > 0))
        ties += implicit_neg_zeros * int(np.count_nonzero(pos == 0))
    return wins, ties


def _classify_scores(scores: ScoreMatrix, split: TrainProbeSplit):
    if scores.node_count != split.node_count:
        raise ParameterError("scores and split have different node counts")
    if len(split.probe) == 0:
        raise ParameterError("probe set is empty")
    n = split.node_count
    u, v, s = scores.pairs()
    keys = pair_keys(u, v, n)
    observed = np.isin(keys, split.observed_keys, assume_unique=True)
    neg = np.sort(s[~observed])
    pos = scores.values_at(split.probe[:, 0], split.probe[:, 1])
    implicit = split.nonobserved_count - neg.size
    return pos, neg, implicit


def auc_exact(scores: ScoreMatrix, split: TrainProbeSplit) -> float:
    """AUC over every (probe link, nonobserved pair) comparison.

    A win counts 1 and a tie 0.5. Nonobserved pairs without a stored score
    sit at 0 and are handled as one block, so the ``|E^P| * |U \\ E|``
    comparisons are counted through sorting rather than enumerated.
    """
    pos, neg, implicit = _classify_scores(scores, split)
    total = len(pos) * split.nonobserved_count
    if total == 0:
        raise ParameterError("no nonobserved pairs to compare against")
    wins, ties = _auc_counts(pos, neg, implicit)
    return (2 * wins + ties) / (2 * total)


def sample_nonobserved(split: TrainProbeSplit, size: int, rng: np.random.Generator):
    """Uniform nonobserved pairs (with replacement) by rejection sampling."""
    n = split.node_count
    if split.nonobserved_count == 0:
        raise ParameterError("no nonobserved pairs to sample")
    us, vs = [], []
    have = 0
    while have < size:
        batch = max(2 * (size - have), 64)
        u = rng.integers(0, n, size=batch)
        v = rng.integers(0, n, size=batch)
        ok = u != v
        u, v = u[ok], v[ok]
        ok = ~np.isin(pair_keys(u, v, n), split.observed_keys)
        u, v = u[ok][: size - have], v[ok][: size - have]
        us.append(u)
        vs.append(v)
        have += len(u)
    return np.concatenate(us), np.concatenate(vs)


def auc_sampled(scores: ScoreMatrix, split: TrainProbeSplit, n: int, seed: int) -> float:
    """Monte Carlo AUC from ``n`` independent (probe, nonobserved) draws."""
    if n < 1:
        raise ParameterError("sample count must be at least 1")
    if len(split.probe) == 0:
        raise ParameterError("probe set is empty")
    rng = np.random.default_rng(seed)
    idx = rng.integers(0, len(split.probe), size=n)
    pos = scores.values_at(split.probe[idx, 0], split.probe[idx, 1])
    u, v = sample_nonobserved(split, n, rng)
    neg = scores.values_at(u, v)
    wins = int(np.count_nonzero(pos > neg))
    ties = int(np.count_nonzero(pos == neg))
    return (2 * wins + ties) / (2 * n)


# ---------------------------------------------------------------------------
# index specs


def parse_index_spec(spec: str) -> tuple[str, str | None]:
    """Split ``"ra+scf"`` into ``("ra", "scf")``; plain names map to ``(name, None)``."""
    parts = spec.strip().lower().split("+")
    if len(parts) > 2 or parts[0] not in BASE_INDICES or (
        len(parts) == 2 and parts[1] not in ENHANCEMENTS
    ):
        raise ParameterError(f"unknown index {spec!r}; valid: {', '.join(valid_index_specs())}")
    return parts[0], parts[1] if len(parts) == 2 else None


def valid_index_specs() -> list[str]:
    out = []
    for base in LOCAL_INDICES:
        out += [base] + [f"{base}+{e}" for e in ENHANCEMENTS]
    return out + list(BASELINES)


def category_of(spec: str) -> str:
    return parse_index_spec(spec)[0]


LOCAL_SPECS = tuple(s for s in valid_index_specs() if category_of(s) in LOCAL_INDICES)


@dataclass(frozen=True)
class BaselineParams:
    katz_beta: float | None = None
    lo_alpha: float = DEFAULT_LO_ALPHA
    spm_fraction: float = DEFAULT_SPM_FRACTION
    spm_selections: int = DEFAULT_SPM_SELECTIONS
    dense_cap: int = DEFAULT_DENSE_CAP


def base_scores(name: str, train: Graph, params: BaselineParams, seed: int) -> ScoreMatrix:
    if name in LOCAL_INDICES:
        return LOCAL_INDICES[name](train)
    if name == "katz":
        return katz_scores(train, params.katz_beta, dense_cap=params.dense_cap)
    if name == "lo":
        return lo_scores(train, params.lo_alpha, dense_cap=params.dense_cap)
    if name == "spm":
        return spm_scores(
            train, params.spm_fraction, params.spm_selections, seed, dense_cap=params.dense_cap
        )
    raise ParameterError(f"unknown base index {name!r}")


def compute_index(spec: str, train: Graph, params: BaselineParams = BaselineParams(), seed: int = 0, cache=None):
    """Scores of ``spec`` on ``train``; ``cache`` shares base matrices between specs.

    Returns ``(scores, seconds)`` where the time includes the base index.
    """
    base, enh = parse_index_spec(spec)
    cache = {} if cache is None else cache
    if base not in cache:
        t0 = time.perf_counter()
        cache[base] = (base_scores(base, train, params, seed), time.perf_counter() - t0)
    s, elapsed = cache[base]
    if enh is None:
        return s, elapsed
    t0 = time.perf_counter()
    out = ENHANCEMENTS[enh](train, s)
    return out, elapsed + time.perf_counter() - t0


# ---------------------------------------------------------------------------
# experiments


def run_seed(master_seed: int, run: int) -> int:
    """Seed of run ``run``: first 32-bit word of ``SeedSequence([master_seed, run])``."""
    return int(np.random.SeedSequence([master_seed, run]).generate_state(1)[0])


def parse_auc_mode(mode: str) -> int | None:
    """``"exact"`` gives None; ``"sampled:N"`` gives N."""
    if mode == "exact":
        return None
    if mode.startswith("sampled:"):
        try:
            n = int(mode.split(":", 1)[1])
        except ValueError:
            n = 0
        if n >= 1:
            return n
    raise ParameterError(f"auc mode must be 'exact' or 'sampled:N', got {mode!r}")


@dataclass(frozen=True)
class ExperimentConfig:
    dataset: str
    indices: tuple[str, ...]
    probe_fraction: float = 0.1
    runs: int = 100
    master_seed: int = 0
    auc_mode: str = "exact"
    baselines: BaselineParams = field(default_factory=BaselineParams)
    jobs: int = 1

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(self.indices))
        if not self.indices:
            raise ParameterError("index list is empty")
        for spec in self.indices:
            parse_index_spec(spec)
        if self.runs < 1:
            raise ParameterError("runs must be at least 1")
        if not 0.0 < self.probe_fraction < 1.0:
            raise ParameterError(f"probe_fraction must lie in (0, 1), got {self.probe_fraction}")
        parse_auc_mode(self.auc_mode)


@dataclass(frozen=True)
class EvaluationRow:
    dataset: str
    index: str
    auc_mean: float
    auc_std: float
    runs: int
    probe_fraction: float
    seconds: float

    def as_dict(self) -> dict:
        return asdict(self)


def evaluate_split(cfg: ExperimentConfig, split: TrainProbeSplit, seed: int) -> dict:
    """AUC and seconds for every configured index on one split."""
    samples = parse_auc_mode(cfg.auc_mode)
    cache = {}
    out = {}
    for spec in cfg.indices:
        try:
            scores, seconds = compute_index(spec, split.train, cfg.baselines, seed, cache)
            if samples is None:
                auc = auc_exact(scores, split)
            else:
                auc = auc_sampled(scores, split, samples, seed)
        except Exception as exc:
            raise _tagged(exc, f"dataset {cfg.dataset}, seed {seed}, index {spec}") from exc
        out[spec] = (auc, seconds)
    return out


def _tagged(exc: Exception, where: str) -> Exception:
    msg = f"{where}: {exc}"
    if isinstance(exc, CFLinkError):
        try:
            return type(exc)(msg)
        except TypeError:
            return CFLinkError(msg)
    if isinstance(exc, MemoryError):
        return ResourceError(msg)
    return NumericalError(msg)


def _one_run(args):
    cfg, g, i = args
    seed = run_seed(cfg.master_seed, i)
    split = split_train_probe(g, cfg.probe_fraction, seed)
    return evaluate_split(cfg, split, seed)


def run_experiment(cfg: ExperimentConfig, g: Graph) -> list[EvaluationRow]:
    """Evaluate every index on ``cfg.runs`` independent random splits.

    Run ``i`` splits with :func:`run_seed` ``(master_seed, i)`` and all indices
    share that split. Reported spread is the sample standard deviation
    (0 for a single run). With ``jobs > 1`` runs go to a process pool; results
    are collected in run order so the output does not depend on scheduling.
    """
    tasks = [(cfg, g, i) for i in range(cfg.runs)]
    if cfg.jobs > 1 and cfg.runs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            per_run = list(pool.map(_one_run, tasks))
    else:
        per_run = [_one_run(t) for t in tasks]
    rows = []
    for spec in cfg.indices:
        aucs = np.array([r[spec][0] for r in per_run])
        secs = float(sum(r[spec][1] for r in per_run))
        std = float(np.std(aucs, ddof=1)) if len(aucs) > 1 else 0.0
        rows.append(
            EvaluationRow(cfg.dataset, spec, float(np.mean(aucs)), std, cfg.runs, cfg.probe_fraction, secs)
        )
    return rows


@dataclass(frozen=True)
class SweepRow:
    fraction: float
    index: str
    auc_mean: float
    auc_std: float


def sparsity_sweep(cfg: ExperimentConfig, g: Graph, training_fractions: Sequence[float]) -> list[SweepRow]:
    """Repeat the experiment with ``1 - f`` of the links held out, for each training fraction ``f``."""
    for f in training_fractions:
        if not 0.0 < f < 1.0:
            raise ParameterError(f"training fraction must lie in (0, 1), got {f}")
    out = []
    for f in training_fractions:
        sub = ExperimentConfig(
            cfg.dataset, cfg.indices, round(1.0 - f, 12), cfg.runs, cfg.master_seed,
            cfg.auc_mode, cfg.baselines, cfg.jobs,
        )
        for row in run_experiment(sub, g):
            out.append(SweepRow(float(f), row.index, row.auc_mean, row.auc_std))
    return out


# ---------------------------------------------------------------------------
# winning rates


def _award(scores: Mapping[str, float], names: Sequence[str], decimals: int | None):
    vals = {k: scores[k] if decimals is None else round(scores[k], decimals) for k in names}
    best = max(vals.values())
    winners = [k for k, x in vals.items() if x == best]
    return {k: (1.0 / len(winners) if k in winners else 0.0) for k in names}


def winning_rates(
    table: Mapping[str, Mapping[str, float]],
    categories: Mapping[str, Sequence[str]] | None = None,
    *,
    decimals: int | None = None,
) -> tuple[dict, dict]:
    """Within-category (R_c) and global (R_g) winning rates.

    On every dataset the best index scores 1; ``m`` tied best indices score
    ``1/m`` each. A rate is the total score divided by the number of
    datasets. ``categories`` defaults to grouping specs by their base index.
    ``decimals`` rounds AUCs before comparing, as printed tables do.
    """
    if not table:
        raise ParameterError("no datasets to compare")
    indices = list(next(iter(table.values())).keys())
    for ds, row in table.items():
        missing = [k for k in indices if k not in row]
        if missing:
            raise ParameterError(f"dataset {ds} lacks AUC for {', '.join(missing)}")
    if categories is None:
        grouped = defaultdict(list)
        for k in indices:
            grouped[category_of(k)].append(k)
        categories = grouped
    rc = dict.fromkeys(indices, 0.0)
    rg = dict.fromkeys(indices, 0.0)
    for row in table.values():
        for k, w in _award(row, indices, decimals).items():
            rg[k] += w
        for members in categories.values():
            for k, w in _award(row, list(members), decimals).items():
                rc[k] += w
    n = len(table)
    return {k: v / n for k, v in rc.items()}, {k: v / n for k, v in rg.items()}


@dataclass
class BenchmarkSummary:
    datasets: list[str]
    indices: list[str]
    table: dict  # dataset -> index -> auc_mean
    r_c: dict
    r_g: dict
    mean_auc: dict


def summarize_benchmark(rows: Sequence[EvaluationRow], *, decimals: int | None = None) -> BenchmarkSummary:
    """Pivot evaluation rows into a dataset x index table with winning rates."""
    table: dict = {}
    indices: list[str] = []
    for r in rows:
        table.setdefault(r.dataset, {})[r.index] = r.auc_mean
        if r.index not in indices:
            indices.append(r.index)
    rc, rg = winning_rates(table, decimals=decimals)
    mean = {k: float(np.mean([table[d][k] for d in table])) for k in indices}
    return BenchmarkSummary(list(table), indices, table, rc, rg, mean)
