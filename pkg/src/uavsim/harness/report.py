"""Deterministic CSV / SVG / metadata emission for experiment runs.

Every run summary carries provenance (config hash, seed list, package
version) and interpretation notes. Floats are written with fixed precision
and metadata JSON with sorted keys, so reruns with the same config and
master seed produce byte-identical files.
"""

import json
import math
import os
from dataclasses import dataclass, field

from .. import __version__
from ..errors import UsageError
from .svg import line_chart

STANDING_NOTES = (
    "odd committee sizes use the strict majority floor(K/2)+1 rather than floor(K/2)",
    "the bleu sweep varies channel snr; there is no training-progress axis in this codec",
    "the variance metric reports the variance of per-frame psnr across replicate frames",
)


@dataclass
class RunSummary:
    """One experiment's rows plus everything needed to reproduce them."""

    experiment: str
    header: tuple
    rows: list
    config_hash: str
    seeds: tuple
    chart: dict = field(default_factory=dict)
    notes: tuple = ()
    aggregates: list = field(default_factory=list)

    def metadata(self):
        return {
            "experiment": self.experiment,
            "config_hash": self.config_hash,
            "seeds": list(self.seeds),
            "version": __version__,
            "notes": list(self.notes) + list(STANDING_NOTES),
            "aggregates": [
                {"metric": m, "mean": _round(mean), "std": _round(std)}
                for m, mean, std in self.aggregates
            ],
        }


def _round(v):
    return float(f"{v:.9g}") if isinstance(v, float) else v


def format_cell(value):
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return f"{value:.6f}"
    return str(value)


def rows_to_csv(header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(format_cell(row[h]) for h in header))
    return "\n".join(lines) + "\n"


def emit_report(summaries, out_dir):
    """Write one CSV, SVG and metadata JSON per summary; returns the paths."""
    summaries = list(summaries)
    if not summaries:
        raise UsageError("nothing to report")
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    for summary in summaries:
        base = os.path.join(out_dir, summary.experiment)
        csv_path = base + ".csv"
        with open(csv_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(rows_to_csv(summary.header, summary.rows))
        paths.append(csv_path)

        svg_path = base + ".svg"
        chart = summary.chart or {}
        svg_text = line_chart(
            chart.get("series", []),
            title=chart.get("title", summary.experiment),
            xlabel=chart.get("xlabel", ""),
            ylabel=chart.get("ylabel", ""),
        )
        with open(svg_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(svg_text)
        paths.append(svg_path)

        meta_path = base + "_meta.json"
        with open(meta_path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(summary.metadata(), fh, indent=2, sort_keys=True)
            fh.write("\n")
        paths.append(meta_path)
    return paths


def mean_std(values):
    values = list(values)
    n = len(values)
    if n == 0:
        return 0.0, 0.0
    mean = sum(values) / n
    var = sum((v - mean) ** 2 for v in values) / n
    return mean, math.sqrt(var)
