"""Rendering of result tables as markdown and CSV.

Markdown rounds to four decimals, the convention the score tables are read
in. The CSVs keep full ``repr`` precision so downstream tooling can
aggregate without rounding twice. Writers pin the line terminator, which
together with the seeded experiment makes every artifact byte-stable.
"""

from __future__ import annotations

import csv
from pathlib import Path

from .experiment import N_TREES, ImportanceReport, ResultTable

__all__ = [
    "format_mean_std",
    "render_markdown",
    "write_summary_csv",
    "write_scores_csv",
    "write_wilcoxon_csv",
    "write_importance_csv",
]


def format_mean_std(mean: float, std: float) -> str:
    return f"{mean:.4f} ± {std:.4f}"


def render_markdown(result: ResultTable, importance: ImportanceReport | None) -> str:
    lines = [
        "# Feature benchmark",
        "",
        f"Random forest, {N_TREES} trees, default depth. "
        f"{result.folds}-fold stratified CV, {result.repetitions} repetition(s), "
        f"seed {result.seed}.",
        f"{result.n_rows} rows, classes: {', '.join(result.classes)}.",
        "",
        "| features | accuracy | macro-F1 |",
        "| --- | --- | --- |",
    ]
    for s in result.summaries:
        lines.append(
            f"| {s.selector} "
            f"| {format_mean_std(s.mean_accuracy, s.std_accuracy)} "
            f"| {format_mean_std(s.mean_macro_f1, s.std_macro_f1)} |"
        )
    if result.wilcoxon:
        lines += [
            "",
            "## Pairwise Wilcoxon signed-rank on per-split accuracy (two-sided)",
            "",
            "| pair | p-value |",
            "| --- | --- |",
        ]
        for a, b, p in result.wilcoxon:
            shown = "n/a (all ties)" if p is None else f"{p:.4g}"
            lines.append(f"| {a} vs {b} | {shown} |")
    if importance is not None:
        lines += [
            "",
            f"## Top {len(importance.ranking)} feature importances ({importance.selector})",
            "",
        ]
        if importance.degenerate:
            lines.append(
                "All impurity importances are zero; the model never found a "
                "useful split, so no ranking is reported."
            )
        else:
            lines += ["| rank | feature | importance |", "| --- | --- | --- |"]
            for rank, (name, value) in enumerate(importance.ranking, start=1):
                lines.append(f"| {rank} | {name} | {value:.4f} |")
            shares = ", ".join(f"{k} {v:.4f}" for k, v in importance.group_shares)
            lines += ["", f"Group importance shares: {shares}."]
    lines.append("")
    return "\n".join(lines)


def _writer(fh):
    return csv.writer(fh, lineterminator="\n")


def write_summary_csv(path: Path, result: ResultTable) -> None:
    with open(path, "w", newline="") as fh:
        w = _writer(fh)
        w.writerow(
            ["selector", "mean_accuracy", "std_accuracy", "mean_macro_f1", "std_macro_f1"]
        )
        for s in result.summaries:
            w.writerow(
                [
                    s.selector,
                    repr(s.mean_accuracy),
                    repr(s.std_accuracy),
                    repr(s.mean_macro_f1),
                    repr(s.std_macro_f1),
                ]
            )


def write_scores_csv(path: Path, result: ResultTable) -> None:
    with open(path, "w", newline="") as fh:
        w = _writer(fh)
        w.writerow(["selector", "repetition", "fold", "accuracy", "macro_f1"])
        for s in result.scores:
            w.writerow([s.selector, s.repetition, s.fold, repr(s.accuracy), repr(s.macro_f1)])


def write_wilcoxon_csv(path: Path, result: ResultTable) -> None:
    with open(path, "w", newline="") as fh:
        w = _writer(fh)
        w.writerow(["selector_a", "selector_b", "p_value"])
        for a, b, p in result.wilcoxon:
            w.writerow([a, b, "" if p is None else repr(p)])


def write_importance_csv(path: Path, importance: ImportanceReport) -> None:
    with open(path, "w", newline="") as fh:
        w = _writer(fh)
        w.writerow(["rank", "feature", "importance"])
        for rank, (name, value) in enumerate(importance.ranking, start=1):
            w.writerow([rank, name, repr(value)])
