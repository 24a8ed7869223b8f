"""Figures for the ``report`` command: the stratum Hasse diagram and the counting identities."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "savefig.dpi": 150,
}


def hasse_layout(n: int, covers: list[tuple[int, int]], ranks: list[int]) -> dict[int, tuple[float, float]]:
    """Nodes on horizontal rows by rank, spread evenly and centred."""
    rows: dict[int, list[int]] = {}
    for i in range(n):
        rows.setdefault(ranks[i], []).append(i)
    pos = {}
    for r, members in rows.items():
        width = len(members)
        for k, i in enumerate(members):
            pos[i] = (k - (width - 1) / 2, float(r))
    return pos


def plot_hasse(rows: list[dict], covers: list[tuple[int, int]], title: str, path: Path) -> Path:
    ranks = [r["rank"] for r in rows]
    pos = hasse_layout(len(rows), covers, ranks)
    with plt.rc_context(STYLE):
        width = max(4.0, 1.4 * max((list(ranks).count(r) for r in set(ranks)), default=1))
        fig, ax = plt.subplots(figsize=(width, 1.2 + 1.1 * (max(ranks, default=0) + 1)))
        for a, b in covers:
            (x0, y0), (x1, y1) = pos[a], pos[b]
            ax.plot([x0, x1], [y0, y1], color="0.55", lw=1, zorder=1)
        for i, r in enumerate(rows):
            x, y = pos[i]
            ax.scatter([x], [y], s=900, color="white", edgecolor="0.2", zorder=2)
            ax.annotate(r["name"], (x, y), ha="center", va="center", fontsize=6, zorder=3)
        ax.set_title(title)
        ax.set_ylabel("rank")
        ax.set_xticks([])
        ax.set_yticks(sorted(set(ranks)))
        ax.margins(0.2)
        fig.tight_layout()
        fig.savefig(path, metadata={"Software": None})
        plt.close(fig)
    return path


def plot_counts(reports: list[dict], title: str, path: Path) -> Path:
    """Both sides of identities (a) and (b) for each H, side by side."""
    labels = [r["H"] for r in reports]
    xs = range(len(labels))
    with plt.rc_context(STYLE):
        fig, axes = plt.subplots(1, 2, figsize=(max(5.0, 1.0 * len(labels) + 3), 3.2))
        for ax, part, name in zip(axes, ("a", "b"), ("level points", "orbit classes")):
            lhs = [r[part]["lhs"] for r in reports]
            rhs = [r[part]["rhs"] for r in reports]
            ax.bar([x - 0.2 for x in xs], lhs, width=0.4, label="direct", color="0.35")
            ax.bar([x + 0.2 for x in xs], rhs, width=0.4, label="sum over K", color="0.75")
            ax.set_xticks(list(xs))
            ax.set_xticklabels(labels, rotation=45, ha="right")
            ax.set_yscale("symlog", linthresh=1)
            ax.set_title(name)
        axes[0].legend(frameon=False)
        fig.suptitle(title)
        fig.tight_layout()
        fig.savefig(path, metadata={"Software": None})
        plt.close(fig)
    return path
