"""Matplotlib figures rendered to files alongside the delimited exports."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .export import trajectory_table, _SYMBOL_COLORS
from .orbits import Trajectory

_REGION_COLORS = {"S": "#ffd27f", "S'": "#ffb15e", "L": "#9fd49f",
                  "P": "#9fb9e8", "Critical": "#444444", "Empty": "#f4f4f4"}


def save_orbit_figure(traj: Trajectory, path: str, title: str = "") -> None:
    """Configuration-space plot with centers and syzygy events marked."""
    table = trajectory_table(traj, 4000)
    x, y = table[:, 4], table[:, 5]
    fig, ax = plt.subplots(figsize=(6, 6))
    ax.plot(x, y, lw=0.8, color="#333333")
    ax.plot([-1, 1], [0, 0], marker="o", ls="none", ms=7, color="black")
    for e in traj.events:
        ex = math.cosh(e.state.lam) * math.sin(e.state.nu)
        ey = math.sinh(e.state.lam) * math.cos(e.state.nu)
        ax.plot([ex], [ey], marker="o", ls="none", ms=4,
                color=_SYMBOL_COLORS.get(e.symbol, "#888888"))
    ax.set_aspect("equal")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_atlas_figure(rows, path: str, title: str = "") -> None:
    """Region map over the (g, h) grid with rotation-number contours."""
    gs = sorted({r["g"] for r in rows})
    hs = sorted({r["h"] for r in rows})
    gi = {v: i for i, v in enumerate(gs)}
    hi = {v: i for i, v in enumerate(hs)}
    names = ["Empty", "Critical", "S", "S'", "L", "P"]
    idx = {n: i for i, n in enumerate(names)}
    zone = np.zeros((len(hs), len(gs)))
    wgrid = np.full((len(hs), len(gs)), np.nan)
    for r in rows:
        region = r["region"]
        name = region if isinstance(region, str) else region.value
        zone[hi[r["h"]], gi[r["g"]]] = idx.get(name, 0)
        if r.get("W") is not None:
            wgrid[hi[r["h"]], gi[r["g"]]] = r["W"]
    cmap = matplotlib.colors.ListedColormap([_REGION_COLORS[n] for n in names])
    fig, ax = plt.subplots(figsize=(7, 5))
    ax.pcolormesh(gs, hs, zone, cmap=cmap, vmin=-0.5, vmax=len(names) - 0.5,
                  shading="nearest")
    if np.isfinite(wgrid).sum() > 8:
        levels = [0.25, 0.5, 1.0, 2.0, 4.0]
        cs = ax.contour(gs, hs, wgrid, levels=levels, colors="k", linewidths=0.6)
        ax.clabel(cs, fontsize=7, fmt="W=%g")
    handles = [plt.Rectangle((0, 0), 1, 1, color=_REGION_COLORS[n])
               for n in names[2:]]
    ax.legend(handles, names[2:], loc="upper left", fontsize=8)
    ax.set_xlabel("g")
    ax.set_ylabel("h")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
