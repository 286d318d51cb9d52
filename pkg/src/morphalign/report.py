"""Group-comparison reports: summary JSON/CSV plus per-metric SVG bar charts.

Input CSVs need ``lang`` and ``morph_type`` columns; every other column whose
values all parse as floats is treated as a metric. Figures are rendered with
matplotlib to SVG with a pinned hash salt and no date metadata, so output
files are byte-identical across runs.
"""

from __future__ import annotations

import csv
import json
import re
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)

import numpy as np  # noqa: E402

from .errors import InputError, StatError  # noqa: E402
from .stats import welch_t  # noqa: E402

SVG_HASHSALT = "morphalign"

_GROUP_COLORS = ("#4477aa", "#ee6677", "#228833", "#ccbb44", "#66ccee", "#aa3377")


def load_records(paths: Sequence[str | Path]) -> list[dict[str, str]]:
    """Concatenate record CSVs, enforcing lang/morph_type columns."""
    rows: list[dict[str, str]] = []
    for path in paths:
        path = Path(path)
        with open(path, encoding="utf-8", newline="") as fh:
            reader = csv.DictReader(fh)
            fields = reader.fieldnames or []
            for required in ("lang", "morph_type"):
                if required not in fields:
                    raise InputError(f"{path}: missing required column {required!r}")
            rows.extend(reader)
    if not rows:
        raise InputError("no data rows in input CSVs")
    return rows


def _metric_columns(rows: Sequence[dict[str, str]]) -> list[str]:
    metrics = []
    for name in rows[0]:
        if name in ("lang", "morph_type"):
            continue
        try:
            for row in rows:
                float(row[name])
        except (TypeError, ValueError, KeyError):
            continue
        metrics.append(name)
    if not metrics:
        raise InputError("input CSVs carry no numeric metric columns")
    return metrics


def summarize(rows: Sequence[dict[str, str]]) -> dict:
    """Per-metric group means and Welch tests, plus the per-language bar data."""
    metrics = _metric_columns(rows)
    summary: dict = {"languages": sorted({r["lang"] for r in rows}), "metrics": {}}
    for metric in metrics:
        by_group: dict[str, list[tuple[str, float]]] = {}
        for row in rows:
            by_group.setdefault(row["morph_type"], []).append((row["lang"], float(row[metric])))
        groups = {
            g: {"n": len(pairs), "mean": float(np.mean([v for _, v in pairs]))}
            for g, pairs in sorted(by_group.items())
        }
        bars = [
            {"lang": lang, "group": g, "value": v}
            for g in sorted(by_group)
            for lang, v in sorted(by_group[g])
        ]
        entry: dict = {"groups": groups, "bars": bars, "welch": None}
        if len(by_group) == 2 and all(len(p) >= 2 for p in by_group.values()):
            name_a, name_b = sorted(by_group)
            try:
                res = welch_t(
                    [v for _, v in by_group[name_a]], [v for _, v in by_group[name_b]]
                )
                entry["welch"] = {
                    "group_a": name_a,
                    "group_b": name_b,
                    "t": res.t,
                    "df": res.df,
                    "p": res.p,
                }
            except StatError:
                pass  # e.g. zero variance in both groups stays unreported
        summary["metrics"][metric] = entry
    return summary


def _safe_name(metric: str) -> str:
    return re.sub(r"[^A-Za-z0-9._-]+", "_", metric)


def render_metric_svg(metric: str, entry: dict, path: Path) -> None:
    """One deterministic bar chart: a bar per language, colored by group."""
    plt.rcParams["svg.hashsalt"] = SVG_HASHSALT
    bars = entry["bars"]
    groups = sorted({b["group"] for b in bars})
    colors = {g: _GROUP_COLORS[i % len(_GROUP_COLORS)] for i, g in enumerate(groups)}
    fig, ax = plt.subplots(figsize=(max(4.0, 0.55 * len(bars) + 1.5), 3.2))
    xs = np.arange(len(bars))
    ax.bar(
        xs,
        [b["value"] for b in bars],
        color=[colors[b["group"]] for b in bars],
    )
    ax.set_xticks(xs)
    ax.set_xticklabels([b["lang"] for b in bars], rotation=45, ha="right", fontsize=8)
    ax.set_ylabel(metric)
    handles = [plt.Rectangle((0, 0), 1, 1, color=colors[g]) for g in groups]
    ax.legend(handles, groups, frameon=False, fontsize=8)
    for g, stats_ in entry["groups"].items():
        ax.axhline(stats_["mean"], color=colors[g], linestyle="--", linewidth=0.8, alpha=0.7)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def write_report(
    csv_paths: Sequence[str | Path], out_dir: str | Path
) -> tuple[dict, list[Path]]:
    """Write summary.json, summary.csv and one SVG per metric into out_dir."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = load_records(csv_paths)
    summary = summarize(rows)

    outputs: list[Path] = []
    json_path = out_dir / "summary.json"
    json_path.write_text(
        json.dumps(summary, ensure_ascii=False, indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )
    outputs.append(json_path)

    csv_path = out_dir / "summary.csv"
    with open(csv_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["metric", "group", "n", "mean", "welch_t", "welch_df", "welch_p"])
        for metric, entry in summary["metrics"].items():
            welch = entry["welch"] or {}
            for group, stats_ in entry["groups"].items():
                writer.writerow(
                    [
                        metric,
                        group,
                        stats_["n"],
                        stats_["mean"],
                        welch.get("t", ""),
                        welch.get("df", ""),
                        welch.get("p", ""),
                    ]
                )
    outputs.append(csv_path)

    for metric, entry in summary["metrics"].items():
        svg_path = out_dir / f"{_safe_name(metric)}.svg"
        render_metric_svg(metric, entry, svg_path)
        outputs.append(svg_path)
    return summary, outputs
