"""Matplotlib drawings of the position-expanded graph.

Matched edges are drawn bold, blocking edges dashed and the rest thin, with
higher preference placed higher in each group.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .instance import Instance, build_extended  # noqa: E402
from .stability import blocking_edges  # noqa: E402

GROUP_GAP = 1.0


def _layout(sizes):
    pos, y = {}, 0.0
    centers = []
    for v, d in enumerate(sizes):
        top = y
        for p in range(d):
            pos[(v, p)] = -(y + p)
        centers.append(-(top + max(d - 1, 0) / 2))
        y += max(d, 1) + GROUP_GAP
    return pos, centers


def draw_extended(instance: Instance, s, ax=None, title: str | None = None):
    """Draw the extended graph of ``instance`` with subgraph ``s`` highlighted."""
    if ax is None:
        _, ax = plt.subplots(figsize=(4, 0.45 * max(sum(map(len, instance.prefs_a)), 4) + 1))
    s = frozenset(s)
    ext = build_extended(instance)
    blocking = blocking_edges(instance, s)
    pos_a, centers_a = _layout(ext.sizes_a)
    pos_b, centers_b = _layout(ext.sizes_b)

    for e, ((i, p), (j, q)) in sorted(ext.by_edge.items()):
        xs, ys = [0, 1], [pos_a[(i, p)], pos_b[(j, q)]]
        if e in s:
            ax.plot(xs, ys, color="black", lw=2.5)
        elif e in blocking:
            ax.plot(xs, ys, color="tab:red", lw=1.2, ls="--")
        else:
            ax.plot(xs, ys, color="0.6", lw=0.8)

    for pos, x, label in ((pos_a, 0, "a"), (pos_b, 1, "b")):
        for (v, p), y in pos.items():
            ax.plot([x], [y], "o", ms=10, mfc="white", mec="black", zorder=3)
            ax.annotate(f"{label}$^{{{v + 1}}}_{{{p + 1}}}$", (x, y), ha="center", va="center", fontsize=6, zorder=4)
    for v, y in enumerate(centers_a):
        ax.annotate(f"$A_{{{v + 1}}}$", (-0.18, y), ha="right", va="center")
    for v, y in enumerate(centers_b):
        ax.annotate(f"$B_{{{v + 1}}}$", (1.18, y), ha="left", va="center")

    ax.set_xlim(-0.45, 1.45)
    ax.axis("off")
    if title:
        ax.set_title(title, fontsize=9)
    return ax


def save_repair_figure(path, before: Instance, after: Instance, s) -> None:
    """Side-by-side drawing of the instance before and after a repair."""
    rows = max(sum(map(len, before.prefs_a)), sum(map(len, before.prefs_b)), 4)
    fig, axes = plt.subplots(1, 2, figsize=(8, 0.45 * rows + 1))
    draw_extended(before, s, axes[0], f"before: {len(blocking_edges(before, s))} blocking")
    draw_extended(after, s, axes[1], f"after: {len(blocking_edges(after, s))} blocking")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_check_figure(path, instance: Instance, s) -> None:
    ax = draw_extended(instance, s, title=f"{len(blocking_edges(instance, s))} blocking edges")
    ax.figure.tight_layout()
    ax.figure.savefig(path, dpi=150)
    plt.close(ax.figure)
