"""Figure rendering for the CLI: overlay plots and collapsing-map staircases.

Rational coordinates become floats here and only here; figures are a
presentation layer and nothing rendered is ever read back into the core.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .params import IntervalFamily
from .paths import DiscretePath, PathHandle, PolylinePath
from .reduction import CollapsingMap

_LIGHT = "#9db4c8"
_DARK = "#1f3044"
_SPAN = "#d98a4e"


def _polyline_xy(path: PolylinePath):
    if path.dim == 1:
        xs = [float(t) for t, _ in path.breakpoints]
        ys = [float(p[0]) for _, p in path.breakpoints]
    else:
        xs = [float(p[0]) for _, p in path.breakpoints]
        ys = [float(p[1]) for _, p in path.breakpoints]
    return xs, ys


def _discrete_levels(path: DiscretePath, order: dict[str, int]):
    ts = [float(t) for t in path.knots]
    ys = [order[lab] for lab in path.labels]
    return ts, ys


def _draw_parameter_bar(ax, family: IntervalFamily) -> None:
    ax.set_xlim(0, 1)
    ax.set_ylim(0, 1)
    ax.set_yticks([])
    ax.set_xticks([0, 0.25, 0.5, 0.75, 1])
    ax.axhspan(0.25, 0.75, color="#e7e7e7")
    for iv in family:
        ax.axvspan(float(iv.lo), float(iv.hi), ymin=0.25, ymax=0.75, color=_SPAN)
    ax.set_xlabel("parameter with cancellation spans")


def save_reduce_figure(
    out_path: str,
    path: PathHandle,
    arc: PathHandle,
    family: IntervalFamily,
) -> None:
    """Input trace (light) with the extracted arc (dark) and a parameter bar."""
    fig, (ax, bar) = plt.subplots(
        2, 1, figsize=(7, 6), gridspec_kw={"height_ratios": [9, 1]}
    )
    if isinstance(path, PolylinePath):
        xs, ys = _polyline_xy(path)
        ax.plot(xs, ys, color=_LIGHT, linewidth=3, label="input path")
        xs, ys = _polyline_xy(arc)
        ax.plot(xs, ys, color=_DARK, linewidth=1.5, label="arc")
        if path.dim == 1:
            ax.set_xlabel("t")
        ax.set_aspect("equal", adjustable="datalim")
    else:
        order = {lab: i for i, lab in enumerate(dict.fromkeys(path.labels))}
        for lab in arc.labels:
            order.setdefault(lab, len(order))
        ts, ys = _discrete_levels(path, order)
        ax.step(ts, ys, where="post", color=_LIGHT, linewidth=3, label="input path")
        ts, ys = _discrete_levels(arc, order)
        ax.step(ts, ys, where="post", color=_DARK, linewidth=1.5, label="arc")
        ax.set_yticks(list(order.values()), list(order.keys()))
        ax.set_xlabel("t")
    ax.legend(loc="best")
    _draw_parameter_bar(bar, family)
    fig.tight_layout()
    fig.savefig(out_path)
    plt.close(fig)


def save_map_figure(out_path: str, gamma: CollapsingMap, title: str = "") -> None:
    """Staircase plot of a collapsing map."""
    fig, ax = plt.subplots(figsize=(5, 5))
    xs = [float(t) for t, _ in gamma.vertices]
    ys = [float(y) for _, y in gamma.vertices]
    ax.plot(xs, ys, color=_DARK)
    ax.set_xlim(0, 1)
    ax.set_ylim(0, 1)
    ax.set_xlabel("t")
    ax.set_ylabel("value")
    ax.set_aspect("equal")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(out_path)
    plt.close(fig)
