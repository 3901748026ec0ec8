"""Figure rendering for traces and dissipation maps.

All figures are written as SVG with fixed hash salt and no embedded date so
repeated runs produce byte-identical files.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "qcasim"
import matplotlib.pyplot as plt
from matplotlib import cm

if TYPE_CHECKING:
    from .layout import Layout
    from .power import PowerReport
    from .trace import Trace

_SAVE_KW = dict(metadata={"Date": None})


def save_trace_plot(trace: "Trace", path: str) -> None:
    """Stacked waveform panel: zone-0 clock on top, one row per labelled cell."""
    rows = len(trace.labels) + 1
    fig, axes = plt.subplots(rows, 1, figsize=(10, 1.3 * rows), sharex=True)
    if rows == 1:
        axes = [axes]
    samples = range(trace.total_samples)

    ax = axes[0]
    for z in range(4):
        ax.plot(samples, trace.gamma[z], linewidth=0.8, label=f"zone {z}")
    ax.set_ylabel("gamma (J)")
    ax.legend(loc="upper right", fontsize=6, ncol=4)

    for ax, lab in zip(axes[1:], trace.labels):
        ax.plot(samples, trace.series[lab], linewidth=0.9, color="#1f77b4")
        ax.set_ylim(-1.15, 1.15)
        ax.set_ylabel(lab)
        ax.axhline(0.0, color="0.8", linewidth=0.5)
        for w in range(1, trace.windows):
            ax.axvline(w * trace.samples_per_period, color="0.85", linewidth=0.5)
    axes[-1].set_xlabel("sample")
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)


def save_power_map(report: "PowerReport", layout: "Layout", path: str) -> None:
    """Heatmap of normalized per-cell dissipation on the layout grid."""
    from .power import power_map

    norm = power_map(report)
    xs = [c.gx for c in layout.cells]
    ys = [c.gy for c in layout.cells]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)

    fig, ax = plt.subplots(figsize=(1.0 + 0.6 * (x1 - x0 + 1), 1.0 + 0.6 * (y1 - y0 + 1)))
    cmap = cm.get_cmap("inferno")
    for c in layout.cells:
        v = norm.get((c.gx, c.gy))
        if v is None:  # pinned cell: outline only
            face, edge = "white", "0.4"
        else:
            face, edge = cmap(v), "0.2"
        ax.add_patch(plt.Rectangle((c.gx - 0.45, c.gy - 0.45), 0.9, 0.9,
                                   facecolor=face, edgecolor=edge, linewidth=0.8))
        if c.label:
            ax.text(c.gx, c.gy, c.label, ha="center", va="center", fontsize=7)
    ax.set_xlim(x0 - 0.7, x1 + 0.7)
    ax.set_ylim(y1 + 0.7, y0 - 0.7)  # screen-style: gy grows downward
    ax.set_aspect("equal")
    ax.set_xticks(range(x0, x1 + 1))
    ax.set_yticks(range(y0, y1 + 1))
    ax.set_title(f"{layout.name}: avg dissipation (normalized)", fontsize=9)
    sm = cm.ScalarMappable(cmap=cmap)
    sm.set_clim(0.0, 1.0)
    fig.colorbar(sm, ax=ax, shrink=0.85)
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)
