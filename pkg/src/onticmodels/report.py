"""Campaign reporting: delimited summaries and rendered figures.

The CSV carries only run-deterministic columns so repeated campaigns
with the same seeds diff clean; wall-clock time stays in the JSON and
stdout summaries.  Figures render through the Agg backend straight to
files: a bar chart of the model-size histogram and an outcome-grid
portrait of a deterministic model's response matrices.
"""
from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .factorization import OntologicalModel
from .search import CampaignReport

CSV_COLUMNS = ("seed", "omega", "hull_count", "certified", "minimal")


def write_campaign_csv(path: str | Path, report: CampaignReport) -> None:
    """One row per seed, input order, deterministic columns only."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for r in report.results:
            writer.writerow(
                [r.seed, r.omega, r.hull_count, int(r.certified), int(r.minimal)]
            )


def write_size_histogram(path: str | Path, report: CampaignReport) -> None:
    """Bar chart of how many seeds landed on each model size."""
    sizes = sorted(report.histogram)
    counts = [report.histogram[s] for s in sizes]
    fig, ax = plt.subplots(figsize=(6.0, 3.6))
    ax.bar(sizes, counts, width=0.8, color="#32648e", edgecolor="black", linewidth=0.6)
    ax.set_xlabel("ontic states in final model")
    ax.set_ylabel("seeds")
    ax.set_title(
        f"{len(report.results)} seeds, best {min(sizes)} (seed {report.best_seed})"
    )
    ax.set_xticks(sizes)
    ax.yaxis.get_major_locator().set_params(integer=True)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def write_model_grid(path: str | Path, model: OntologicalModel) -> None:
    """Outcome-assignment grid: one row per basis, one column per state.

    Cell (x, j) shows which outcome state j assigns to basis x+1, read
    off the position of the 1 in column j of the response matrix.
    Only meaningful for deterministic models.
    """
    if not model.deterministic:
        raise ValueError("outcome grid requires a deterministic model")
    d = model.dim
    grid = np.empty((len(model.matrices), model.omega), dtype=int)
    for x, m in enumerate(model.matrices):
        grid[x] = np.argmax(m, axis=0)
    fig, ax = plt.subplots(figsize=(max(6.0, 0.22 * model.omega + 1.5), 2.8))
    image = ax.imshow(
        grid,
        aspect="auto",
        interpolation="nearest",
        cmap=plt.get_cmap("viridis", d),
        vmin=-0.5,
        vmax=d - 0.5,
    )
    ax.set_yticks(range(len(model.matrices)))
    ax.set_yticklabels([f"basis {x + 1}" for x in range(len(model.matrices))])
    step = max(1, model.omega // 32)
    ax.set_xticks(range(0, model.omega, step))
    ax.set_xticklabels(
        [model.labels[j] for j in range(0, model.omega, step)],
        rotation=90,
        fontsize=7,
    )
    ax.set_xlabel("ontic state")
    ax.set_title(f"outcome assignments, {model.omega} states, d = {d}")
    bar = fig.colorbar(image, ax=ax, ticks=range(d), fraction=0.046)
    bar.set_label("outcome")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
