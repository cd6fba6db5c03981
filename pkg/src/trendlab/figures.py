"""Figure rendering for the report paths: metric bars, sweep curves, tau curves.

Everything draws to files through the Agg backend, so these work headless.
The delimited tables stay the authoritative outputs; these are the same
numbers made glanceable.
"""

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)
import numpy as np  # noqa: E402

from .protocol import METRIC_NAMES  # noqa: E402
from .synthetic import TAU_PAIRS  # noqa: E402

_METRIC_LABELS = {
    "precision": "precision of the top-n",
    "novelty": "newcomers caught",
    "auc": "AUC",
    "tau": "rank correlation",
}


def _mean_or_nan(agg: dict) -> float:
    return float("nan") if agg["mean"] is None else agg["mean"]


def render_protocol_figure(run: dict, path: str | os.PathLike) -> str:
    """Grouped bars per metric: one group per predictor, one bar per list size."""
    predictors = []
    n_values = []
    for cell in run["results"]:
        if cell["predictor"] not in predictors:
            predictors.append(cell["predictor"])
        if cell["n"] not in n_values:
            n_values.append(cell["n"])
    cells = {(c["predictor"], c["n"]): c for c in run["results"]}

    fig, axes = plt.subplots(2, 2, figsize=(11, 7))
    x = np.arange(len(predictors))
    width = 0.8 / max(1, len(n_values))
    for ax, metric in zip(axes.flat, METRIC_NAMES):
        for k, n in enumerate(n_values):
            means = [_mean_or_nan(cells[(p, n)][metric]) for p in predictors]
            stds = [cells[(p, n)][metric]["std"] or 0.0 for p in predictors]
            ax.bar(x + (k - (len(n_values) - 1) / 2) * width, means, width,
                   yerr=stds, capsize=2, label=f"top {n}")
        ax.set_xticks(x)
        ax.set_xticklabels(predictors, rotation=30, ha="right")
        ax.set_title(_METRIC_LABELS[metric])
        ax.grid(True, axis="y", alpha=0.3)
    axes.flat[0].legend(fontsize=8)
    fig.suptitle(f"windows: past {run['t_p']}, future {run['t_f']}; "
                 f"{run['sample_count']} sampled times")
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
    return str(path)


def render_sweep_figures(sweep: dict, out_dir: str | os.PathLike, stem: str = "sweep") -> list[str]:
    """Metric-vs-window curves, one file per list size, one line per predictor."""
    values = sweep["values"]
    first = sweep["runs"][0]["run"]["results"]
    predictors = []
    n_values = []
    for cell in first:
        if cell["predictor"] not in predictors:
            predictors.append(cell["predictor"])
        if cell["n"] not in n_values:
            n_values.append(cell["n"])

    axis_label = ("future window" if sweep["axis"] == "future_only"
                  else "past = future window")
    paths = []
    for n in n_values:
        fig, axes = plt.subplots(2, 2, figsize=(11, 7))
        for ax, metric in zip(axes.flat, METRIC_NAMES):
            for p in predictors:
                ys = []
                for entry in sweep["runs"]:
                    cell = next(
                        c for c in entry["run"]["results"]
                        if c["predictor"] == p and c["n"] == n
                    )
                    ys.append(_mean_or_nan(cell[metric]))
                ax.plot(values, ys, marker="o", markersize=3, label=p)
            ax.set_xlabel(axis_label)
            ax.set_title(_METRIC_LABELS[metric])
            ax.grid(True, alpha=0.3)
        axes.flat[0].legend(fontsize=8)
        fig.suptitle(f"top {n}")
        fig.tight_layout()
        path = os.path.join(str(out_dir), f"{stem}_top{n}.png")
        fig.savefig(path, dpi=130)
        plt.close(fig)
        paths.append(path)
    return paths


def render_synth_figure(result: dict, path: str | os.PathLike) -> str:
    """Tau curves over population size plus the share and weight histograms."""
    sizes = sorted({row[0] for row in result["tau_means"]})
    means = {(size, pair): m for size, pair, m in result["tau_means"]}

    fig, axes = plt.subplots(1, 3, figsize=(13, 4))
    for pair in TAU_PAIRS:
        axes[0].plot(sizes, [means[(s, pair)] for s in sizes], marker="o",
                     markersize=3, label=pair)
    axes[0].set_xscale("log")
    axes[0].set_xlabel("population size")
    axes[0].set_ylabel("rank correlation")
    axes[0].legend(fontsize=8)
    axes[0].grid(True, alpha=0.3)

    largest = sizes[-1]
    for ax, variable, title in (
        (axes[1], "recent_share", f"recent-gain shares (size {largest})"),
        (axes[2], "alpha", f"blend weights (size {largest})"),
    ):
        rows = [r for r in result["dist_rows"] if r[0] == largest and r[1] == variable]
        lows = [r[2] for r in rows]
        widths = [r[3] - r[2] for r in rows]
        counts = [r[4] for r in rows]
        ax.bar(lows, counts, width=widths, align="edge", edgecolor="white")
        ax.set_title(title)
        ax.grid(True, axis="y", alpha=0.3)

    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
    return str(path)
