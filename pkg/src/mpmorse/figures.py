"""Report figures: heatmaps of critical counts, Betti tables, bound slack.

Rendered beside the delimited output by the CLI's check path.  Everything is
drawn from a finished FiltrationReport, so figures always agree with the
serialized numbers.  Rendering is deterministic (fixed size, dpi, colormap);
only the PNG encoder's metadata varies across matplotlib versions, so byte
stability is promised for the JSON report, not for the images.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .inequalities import FiltrationReport


def _grade_labels(rep: FiltrationReport) -> list[str]:
    return ["(" + ",".join(str(x) for x in g.u) + ")" for g in rep.grades]


def _heatmap(ax, data: np.ndarray, xlabels: list[str], ylabel: str, title: str):
    im = ax.imshow(data, aspect="auto", cmap="viridis", interpolation="nearest")
    ax.set_title(title, fontsize=9)
    ax.set_ylabel(ylabel, fontsize=8)
    ax.set_yticks(range(data.shape[0]))
    step = max(1, len(xlabels) // 16)
    ax.set_xticks(range(0, len(xlabels), step))
    ax.set_xticklabels(xlabels[::step], rotation=90, fontsize=6)
    ax.tick_params(labelsize=7)
    if data.size and data.shape[1] <= 32:
        for i in range(data.shape[0]):
            for j in range(data.shape[1]):
                if data[i, j]:
                    ax.text(j, i, str(int(data[i, j])), ha="center", va="center",
                            color="white", fontsize=6)
    return im


def render_report_figures(rep: FiltrationReport, outdir: Path) -> list[Path]:
    """Writes the three standard PNGs into outdir and returns their paths."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    labels = _grade_labels(rep)
    qtop = max(rep.dim, 0) + 1
    paths = []

    c = np.array([[g.c[q] for g in rep.grades] for q in range(qtop + 1)])
    fig, ax = plt.subplots(figsize=(max(4, len(labels) * 0.25), 3), dpi=120)
    _heatmap(ax, c, labels, "q", "critical counts c_q(u)")
    fig.tight_layout()
    path = outdir / "critical_counts.png"
    fig.savefig(path)
    plt.close(fig)
    paths.append(path)

    fig, axes = plt.subplots(
        rep.n + 1, 1,
        figsize=(max(4, len(labels) * 0.25), 2.2 * (rep.n + 1)),
        dpi=120,
        squeeze=False,
    )
    for p in range(rep.n + 1):
        data = np.array(
            [[g.xi.get((p, q), 0) for g in rep.grades] for q in range(qtop + 1)]
        )
        _heatmap(axes[p][0], data, labels if p == rep.n else [], "q", f"xi_{p}^q(u)")
    fig.tight_layout()
    path = outdir / "betti_tables.png"
    fig.savefig(path)
    plt.close(fig)
    paths.append(path)

    lower_slack = np.array(
        [[g.lower[q][0] - g.lower[q][1] for g in rep.grades] for q in range(qtop + 1)]
    )
    upper_slack = np.array(
        [[g.upper[q][1] - g.upper[q][0] for g in rep.grades] for q in range(qtop + 1)]
    )
    fig, axes = plt.subplots(2, 1, figsize=(max(4, len(labels) * 0.25), 5), dpi=120)
    _heatmap(axes[0], lower_slack, [], "q", "lower bound slack c_q - bound")
    _heatmap(axes[1], upper_slack, labels, "q", "upper bound slack bound - c_q")
    fig.tight_layout()
    path = outdir / "bound_slack.png"
    fig.savefig(path)
    plt.close(fig)
    paths.append(path)
    return paths
