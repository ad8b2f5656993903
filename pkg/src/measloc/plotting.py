"""Figures written next to command reports."""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .lattice import FiniteLattice, label  # noqa: E402
from .scalars import imag_part, real_part  # noqa: E402
from .valuations import Valuation  # noqa: E402


def _ranks(L):
    """Length of the longest chain from bottom to each element."""
    rank = {L.bottom: 0}
    for x in sorted(L.elems, key=lambda e: int(L.leq_table[:, L.index(e)].sum())):
        if x not in rank:
            rank[x] = max((rank[y] + 1 for y in L.elems if y != x and L.leq(y, x) and y in rank),
                          default=0)
    return rank


def hasse_diagram(L, path):
    rank = _ranks(L)
    levels = {}
    for x in L.elems:
        levels.setdefault(rank[x], []).append(x)
    pos = {}
    for r, xs in levels.items():
        for k, x in enumerate(xs):
            pos[x] = (k - (len(xs) - 1) / 2, r)
    fig, ax = plt.subplots(figsize=(5, 4))
    for a, b in L.covers():
        ax.plot([pos[a][0], pos[b][0]], [pos[a][1], pos[b][1]], color="0.5", lw=1)
    for x, (px, py) in pos.items():
        ax.plot(px, py, "o", color="tab:blue")
        ax.annotate(label(x), (px, py), textcoords="offset points", xytext=(6, 4), fontsize=8)
    ax.set_axis_off()
    ax.set_title(L.name or "lattice")
    fig.savefig(path, dpi=100, metadata={"Software": None})
    plt.close(fig)


def valuation_bars(v, path, title="valuation"):
    xs = [label(x) for x in v.carrier.elems]
    fig, ax = plt.subplots(figsize=(max(4, len(xs) * 0.5), 3))
    ax.bar(xs, [float(real_part(a)) for a in v.vec], color="tab:blue", label="real")
    if not v.is_real():
        ax.bar(xs, [float(imag_part(a)) for a in v.vec], color="tab:orange", alpha=0.6, label="imag")
        ax.legend()
    ax.axhline(0, color="black", lw=0.8)
    ax.tick_params(axis="x", rotation=60, labelsize=7)
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=100, metadata={"Software": None})
    plt.close(fig)


def law_summary(reports, path):
    counts = {"pass": 0, "fail": 0, "info": 0}
    for r in reports:
        counts[r.status] += 1
    fig, ax = plt.subplots(figsize=(4, 3))
    ax.bar(list(counts), list(counts.values()), color=["tab:green", "tab:red", "tab:gray"])
    ax.set_title("law reports")
    fig.tight_layout()
    fig.savefig(path, dpi=100, metadata={"Software": None})
    plt.close(fig)


def render_figures(command, obj, reports, directory):
    """Write the figures for one command run; returns the paths written."""
    os.makedirs(directory, exist_ok=True)
    stem = command.replace("-", "_")
    written = []
    lattice = obj if isinstance(obj, FiniteLattice) else getattr(obj, "carrier", None)
    if isinstance(lattice, FiniteLattice) and len(lattice) <= 64:
        p = os.path.join(directory, f"{stem}_hasse.png")
        hasse_diagram(lattice, p)
        written.append(p)
    if isinstance(obj, Valuation):
        p = os.path.join(directory, f"{stem}_values.png")
        valuation_bars(obj, p)
        written.append(p)
        if command == "hahn-jordan" and obj.is_real():
            from .valuations import hahn_jordan

            jd = hahn_jordan(obj)
            for part, name in ((jd.pos_part, "positive"), (jd.neg_part, "negative")):
                p = os.path.join(directory, f"{stem}_{name}.png")
                valuation_bars(part, p, title=f"{name} part")
                written.append(p)
    p = os.path.join(directory, f"{stem}_laws.png")
    law_summary(reports, p)
    written.append(p)
    return written
