"""CSV / JSON / plain-text writers for evaluation output."""

from __future__ import annotations

import csv
import io
import json
from typing import Iterable, Sequence

import numpy as np

from .evaluation import REPORT_COLUMNS, BenchmarkSummary, EvaluationRow, SweepRow
from .stats import STATS_COLUMNS, NetworkStats


def _fmt(x):
    if isinstance(x, (float, np.floating)):
        return repr(round(float(x), 10))
    if isinstance(x, np.integer):
        return str(int(x))
    return str(x)


def to_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_fmt(x) for x in r])
    return buf.getvalue()


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _row_values(r: EvaluationRow, timing: bool):
    d = r.as_dict()
    if not timing:
        d["seconds"] = 0.0
    return [d[c] for c in REPORT_COLUMNS]


def evaluation_csv(rows: Sequence[EvaluationRow], *, timing: bool = True) -> str:
    return to_csv(REPORT_COLUMNS, (_row_values(r, timing) for r in rows))


def evaluation_json(rows: Sequence[EvaluationRow], *, timing: bool = True, summary: BenchmarkSummary | None = None) -> str:
    """Nested ``{dataset: {index: {metric: value}}}``, plus winning rates when given."""
    out: dict = {"results": {}}
    for r in rows:
        vals = dict(zip(REPORT_COLUMNS, _row_values(r, timing)))
        ds, idx = vals.pop("dataset"), vals.pop("index")
        out["results"].setdefault(ds, {})[idx] = vals
    if summary is not None:
        out["summary"] = {"R_c": summary.r_c, "R_g": summary.r_g, "mean_auc": summary.mean_auc}
    return _dump(out)


def benchmark_table_csv(summary: BenchmarkSummary) -> str:
    """Wide layout: one row per dataset, then R_c, R_g and mean-AUC rows."""
    rows = [[ds] + [summary.table[ds][k] for k in summary.indices] for ds in summary.datasets]
    rows.append(["R_c"] + [summary.r_c[k] for k in summary.indices])
    rows.append(["R_g"] + [summary.r_g[k] for k in summary.indices])
    rows.append(["mean_auc"] + [summary.mean_auc[k] for k in summary.indices])
    return to_csv(["dataset", *summary.indices], rows)


def sweep_csv(rows: Sequence[SweepRow]) -> str:
    return to_csv(
        ("fraction", "index", "auc_mean", "auc_std"),
        ((r.fraction, r.index, r.auc_mean, r.auc_std) for r in rows),
    )


def stats_csv(name: str, st: NetworkStats) -> str:
    row = st.row()
    return to_csv(
        ("network", *STATS_COLUMNS, "assortativity_degenerate"),
        [[name, *row.values(), int(st.assortativity_degenerate)]],
    )


def stats_json(name: str, st: NetworkStats) -> str:
    return _dump({"network": name, **st.row(), "assortativity_degenerate": st.assortativity_degenerate})


def format_table(header: Sequence[str], rows: Sequence[Sequence], floatfmt: str = ".4f") -> str:
    """Fixed-width text table for terminal summaries."""
    cells = [list(header)] + [
        [format(x, floatfmt) if isinstance(x, float) else str(x) for x in r] for r in rows
    ]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.rjust(w) if j else c.ljust(w) for j, (c, w) in enumerate(zip(r, widths))) for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"
