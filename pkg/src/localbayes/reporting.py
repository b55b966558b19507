"""Plain-text tables, CSV files and PNG figures for evaluation results."""

from __future__ import annotations

import csv
from pathlib import Path

from .evaluation import EvalReport, SweepResult

REPORT_COLUMNS = ("dataset", "classifier", "hyperparameter", "mean_accuracy", "std", "wall_time_s")


def _fmt_hyper(value) -> str:
    return "" if value is None else f"{value:g}"


def format_report_table(report: EvalReport) -> str:
    """Aligned text table, one row per evaluated classifier."""
    headers = ("classifier", "hyperparameter", "mean_accuracy", "std", "wall_time_s")
    body = [
        (
            row.label,
            _fmt_hyper(row.hyperparameter),
            f"{row.mean_accuracy:.4f}",
            f"{row.std:.4f}",
            f"{row.wall_time_s:.3f}",
        )
        for row in report.rows
    ]
    widths = [max(len(h), *(len(r[i]) for r in body)) if body else len(h) for i, h in enumerate(headers)]
    lines = [f"dataset: {report.dataset_name}"]
    lines.append("  ".join(h.ljust(w) for h, w in zip(headers, widths)))
    lines.append("  ".join("-" * w for w in widths))
    for r in body:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(r, widths)))
    return "\n".join(lines) + "\n"


def format_curve_table(curve: SweepResult) -> str:
    name = "kappa" if curve.kind == "kappa_bayes" else "k"
    lines = [f"{name:>10}  accuracy"]
    for value, acc in zip(curve.values, curve.mean_accuracies):
        lines.append(f"{value:>10g}  {acc:.4f}")
    lines.append(f"best {name} = {curve.best_value:g} (accuracy {curve.best_accuracy:.4f})")
    return "\n".join(lines) + "\n"


def write_report_csv(reports, path) -> Path:
    """Machine-readable comparison rows; decimal point, LF line endings."""
    if isinstance(reports, EvalReport):
        reports = [reports]
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(REPORT_COLUMNS)
        for report in reports:
            for row in report.rows:
                writer.writerow(
                    (
                        report.dataset_name,
                        row.label,
                        _fmt_hyper(row.hyperparameter),
                        f"{row.mean_accuracy:.6f}",
                        f"{row.std:.6f}",
                        f"{row.wall_time_s:.4f}",
                    )
                )
    return path


def write_curve_csv(curve: SweepResult, path) -> Path:
    """Two columns: hyperparameter value, mean accuracy."""
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(("hyperparameter", "accuracy"))
        for value, acc in zip(curve.values, curve.mean_accuracies):
            writer.writerow((f"{value:g}", f"{acc:.6f}"))
    return path


def _pyplot():
    import matplotlib

    matplotlib.use("Agg", force=True)
    import matplotlib.pyplot as plt

    return plt


def render_curve_figure(curves, path, title: str = "") -> Path:
    """Accuracy versus hyperparameter, one line per labelled curve.

    ``curves`` maps a label to a SweepResult.
    """
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7, 4.5))
    xname = "hyperparameter"
    for label, curve in curves.items():
        xname = "kappa" if curve.kind == "kappa_bayes" else "k"
        ax.plot(curve.values, curve.mean_accuracies, marker="o", markersize=3.5, label=label)
    ax.set_xlabel(xname)
    ax.set_ylabel("mean accuracy")
    if title:
        ax.set_title(title)
    if len(curves) > 1:
        ax.legend()
    ax.grid(alpha=0.3)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_report_figure(report: EvalReport, path) -> Path:
    """Horizontal bars of mean accuracy with one std whisker per classifier."""
    plt = _pyplot()
    labels = [row.label for row in report.rows]
    means = [row.mean_accuracy for row in report.rows]
    stds = [row.std for row in report.rows]
    fig, ax = plt.subplots(figsize=(7, 1.0 + 0.5 * max(1, len(labels))))
    ypos = range(len(labels))
    ax.barh(list(ypos), means, xerr=stds, color="#4878a8", height=0.6)
    ax.set_yticks(list(ypos), labels)
    ax.invert_yaxis()
    ax.set_xlabel("mean accuracy")
    ax.set_xlim(0.0, 1.0)
    ax.set_title(report.dataset_name)
    ax.grid(axis="x", alpha=0.3)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_ratio_figure(kappas, ratios, path, title: str = "class score ratio") -> Path:
    """Score ratio against kappa with the decision boundary at 1 marked."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(kappas, ratios, marker="o", markersize=3)
    ax.axhline(1.0, linestyle="--", color="gray", linewidth=1)
    ax.set_xlabel("kappa")
    ax.set_ylabel("score ratio")
    ax.set_yscale("log")
    ax.set_title(title)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
