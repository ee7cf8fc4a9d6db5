"""Figures for the report command.  Uses the non-interactive Agg backend."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .poset import GradedPoset  # noqa: E402


def fvector_figure(rows, path):
    """Grouped bars of face counts by dimension; ``rows`` is ``[(name, fvec_by_dim)]``."""
    fig, ax = plt.subplots(figsize=(7, 4))
    width = 0.8 / max(len(rows), 1)
    for i, (name, fvec) in enumerate(rows):
        xs = [d + i * width for d in range(len(fvec))]
        ax.bar(xs, fvec, width=width, label=name)
    ax.set_xlabel("face dimension")
    ax.set_ylabel("number of faces")
    ax.set_yscale("log")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def hasse_figure(poset: GradedPoset, path, label=str, title=""):
    """Hasse diagram drawn rank by rank, the top element uppermost."""
    by_rank = {}
    for x in poset.elements:
        by_rank.setdefault(poset.rank[x], []).append(x)
    top = max(by_rank)
    pos = {}
    for r, xs in by_rank.items():
        xs.sort(key=lambda x: str(label(x)))
        for i, x in enumerate(xs):
            pos[x] = ((i + 1) / (len(xs) + 1), top - r)
    fig, ax = plt.subplots(figsize=(8, 5))
    for lo, hi in poset.covers:
        (x0, y0), (x1, y1) = pos[lo], pos[hi]
        ax.plot([x0, x1], [y0, y1], color="0.6", lw=0.7, zorder=1)
    for x, (px, py) in pos.items():
        ax.text(px, py, label(x), ha="center", va="center", fontsize=7,
                bbox=dict(boxstyle="round,pad=0.2", fc="white", ec="0.3", lw=0.5), zorder=2)
    ax.set_axis_off()
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def census_figure(censuses, path):
    """Stacked bars of top cells by polygon type; ``censuses`` is ``[(name, {sides: count})]``."""
    fig, ax = plt.subplots(figsize=(6, 4))
    sides = sorted({k for _, c in censuses for k in c})
    bottoms = [0] * len(censuses)
    names = [name for name, _ in censuses]
    for k in sides:
        vals = [c.get(k, 0) for _, c in censuses]
        ax.bar(names, vals, bottom=bottoms, label=f"{k}-gons")
        bottoms = [b + v for b, v in zip(bottoms, vals)]
    ax.set_ylabel("top cells")
    ax.legend(fontsize=8)
    plt.setp(ax.get_xticklabels(), rotation=20, ha="right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
