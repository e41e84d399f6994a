"""Figures for reports: triangulated polygons and snake graphs."""

from __future__ import annotations

import math
from pathlib import Path
from typing import Iterable

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .polygon import Chord, Triangulation  # noqa: E402
from .snake import Edge, SnakeGraph  # noqa: E402


def vertex_xy(k: int, m: int) -> tuple[float, float]:
    """Vertex k of the regular m-gon, at angle 360k/m degrees."""
    a = 2 * math.pi * k / m
    return math.cos(a), math.sin(a)


def draw_triangulation(T: Triangulation, path: str | Path, highlight: Iterable[Chord] = (),
                       d: tuple[int, int] | None = None, title: str | None = None) -> Path:
    m = T.m
    fig, ax = plt.subplots(figsize=(4, 4))
    pts = [vertex_xy(k, m) for k in range(m)]
    xs, ys = zip(*(pts + pts[:1]))
    ax.plot(xs, ys, color="black", lw=1)
    for lab, (a, b) in enumerate(T.diagonals, start=1):
        (x0, y0), (x1, y1) = pts[a], pts[b]
        style = {"color": "tab:red", "lw": 2} if d is not None and {a, b} == set(d) else {"color": "tab:blue", "lw": 1}
        ax.plot([x0, x1], [y0, y1], **style)
        ax.annotate(str(lab), ((x0 + x1) / 2, (y0 + y1) / 2), fontsize=8, color=style["color"],
                    ha="center", va="center", backgroundcolor="white")
    for a, b in highlight:
        (x0, y0), (x1, y1) = pts[a], pts[b]
        ax.plot([x0, x1], [y0, y1], color="tab:green", lw=1.5, ls="--")
    for k, (x, y) in enumerate(pts):
        ax.annotate(str(k), (1.12 * x, 1.12 * y), ha="center", va="center", fontsize=9)
    ax.set_xlim(-1.25, 1.25)
    ax.set_ylim(-1.25, 1.25)
    ax.set_aspect("equal")
    ax.axis("off")
    if title:
        ax.set_title(title, fontsize=10)
    path = Path(path)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return path


def draw_snake_graph(G: SnakeGraph, path: str | Path, matching: frozenset[Edge] | None = None,
                     title: str | None = None) -> Path:
    fig, ax = plt.subplots(figsize=(1.2 * (G.d + 1), 1.2 * (G.d + 1)))
    for (p, q), lab in sorted(G.edges.items()):
        ax.plot([p[0], q[0]], [p[1], q[1]], color="black", lw=1)
        if lab is not None:
            ax.annotate(str(lab), ((p[0] + q[0]) / 2, (p[1] + q[1]) / 2), fontsize=7, color="dimgray",
                        ha="center", va="center", backgroundcolor="white")
    for tile in G.tiles:
        ox, oy = tile.origin
        ax.annotate(str(tile.label), (ox + 0.5, oy + 0.5), ha="center", va="center", fontsize=11)
    if matching is not None:
        for p, q in matching:
            ax.plot([p[0], q[0]], [p[1], q[1]], color="tab:red", lw=3)
    ax.set_aspect("equal")
    ax.axis("off")
    if title:
        ax.set_title(title, fontsize=10)
    path = Path(path)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return path
