"""Figure rendering for the report-producing commands.

Figures are written next to the delimited output when an output
directory is given.  Rendering is deterministic: fixed figure geometry,
the Agg backend, and pinned PNG metadata so repeated runs produce
byte-identical files.
"""

from __future__ import annotations

from .centrality import AdjacencyView, CentralityReport
from .inference import InferenceTrace
from .io import simplex_label

_SAVE_KWARGS = {"dpi": 150, "metadata": {"Software": "metaplex"}}


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def save_centrality_figure(report: CentralityReport, labels, path) -> None:
    """Bar panels for the degree-family and distance-family indices."""
    plt = _pyplot()
    names = [simplex_label(r.simplex, labels) for r in report.rows]
    xs = range(len(names))
    fig, (top, bottom) = plt.subplots(2, 1, figsize=(max(6, 0.6 * len(names)), 7), sharex=True)
    top.bar(xs, [float(r.combined_degree) for r in report.rows], color="#4c72b0")
    top.set_ylabel(f"combined degree (alpha={report.alpha:g})")
    width = 0.4
    bottom.bar(
        [x - width / 2 for x in xs],
        [r.closeness for r in report.rows],
        width=width,
        label="closeness",
        color="#55a868",
    )
    bottom.bar(
        [x + width / 2 for x in xs],
        [r.harmonic for r in report.rows],
        width=width,
        label="harmonic",
        color="#c44e52",
    )
    bottom.set_ylabel("closeness / harmonic")
    bottom.set_xticks(list(xs))
    bottom.set_xticklabels(names, rotation=45, ha="right")
    bottom.legend()
    direction = "incoming" if report.incoming else "outgoing"
    top.set_title(f"centrality at q={report.q}, alpha={report.alpha:g} ({direction})")
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KWARGS)
    plt.close(fig)


def save_trace_figure(trace: InferenceTrace, labels, path) -> None:
    """Candidate boundary weights against each dimension's threshold."""
    plt = _pyplot()
    dims = trace.dimensions or ()
    n = max(1, len(dims))
    fig, axes = plt.subplots(n, 1, figsize=(7, 3 * n), squeeze=False)
    for ax, entry in zip((a for row in axes for a in row), dims or [None]):
        if entry is None:
            ax.set_axis_off()
            continue
        names = [simplex_label(c.simplex, labels) for c in entry.candidates]
        values = [float(c.boundary_weight) for c in entry.candidates]
        admitted = set(entry.admitted)
        colors = [
            "#55a868" if c.simplex in admitted else "#c44e52" for c in entry.candidates
        ]
        ax.bar(range(len(names)), values, color=colors)
        ax.axhline(float(entry.threshold), color="black", linestyle="--", linewidth=1)
        ax.set_xticks(range(len(names)))
        ax.set_xticklabels(names, rotation=45, ha="right")
        ax.set_ylabel("boundary weight")
        ax.set_title(
            f"q={entry.q}: threshold {float(entry.threshold):g}, "
            f"{len(entry.admitted)} admitted / {len(entry.candidates)} candidates"
        )
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KWARGS)
    plt.close(fig)


def save_matrix_figure(view: AdjacencyView, labels, weighted: bool, path) -> None:
    """Heatmap of the binary or strength matrix."""
    plt = _pyplot()
    if weighted:
        data = [[float(x) for x in row] for row in view.strengths]
        title = f"strength matrix at q={view.q}"
    else:
        data = [[float(x) for x in row] for row in view.binary]
        title = f"adjacency matrix at q={view.q}"
    names = [simplex_label(s, labels) for s in view.order]
    side = max(4.0, 0.5 * len(names) + 2)
    fig, ax = plt.subplots(figsize=(side, side))
    image = ax.imshow(data, cmap="viridis")
    ax.set_xticks(range(len(names)))
    ax.set_yticks(range(len(names)))
    ax.set_xticklabels(names, rotation=90)
    ax.set_yticklabels(names)
    ax.set_title(title)
    fig.colorbar(image, ax=ax, shrink=0.8)
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KWARGS)
    plt.close(fig)
