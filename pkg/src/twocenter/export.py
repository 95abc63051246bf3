"""CSV / SVG / JSON writers for trajectories, atlas grids, and reports."""

from __future__ import annotations

import csv
import json
import math
from typing import Iterable, Optional, Sequence

import numpy as np

from .orbits import Trajectory

ATLAS_PERIOD_COLUMNS = ("g", "h", "region", "T_lambda", "T_nu", "W")
ATLAS_REGION_COLUMNS = ("g", "h", "region", "torus_count")
TRAJECTORY_COLUMNS = ("tau", "t", "lambda", "nu", "x", "y")

_SYMBOL_COLORS = {"1": "#d62728", "2": "#1f77b4", "3": "#2ca02c"}


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def write_atlas_csv(rows: Iterable[dict], path: str, columns: Sequence[str]) -> None:
    """One row per grid point; non-regular points keep empty numeric fields."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(_region_str(row.get(c))) for c in columns])


def _region_str(v):
    from .emmap import Region

    return v.value if isinstance(v, Region) else v


def trajectory_table(traj: Trajectory, n: int = 2000) -> np.ndarray:
    """Uniform-in-tau resampled columns (tau, t, lam, nu, x, y)."""
    taus = np.linspace(traj.tau[0], traj.tau[-1], n)
    ys = traj._dense(taus)
    lam, nu, t = ys[0], ys[1], ys[4]
    x = np.cosh(lam) * np.sin(nu)
    y = np.sinh(lam) * np.cos(nu)
    return np.column_stack([taus, t, lam, nu, x, y])


def write_trajectory_csv(traj: Trajectory, path: str, n: int = 2000) -> None:
    table = trajectory_table(traj, n)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(TRAJECTORY_COLUMNS)
        for row in table:
            writer.writerow([f"{v:.12g}" for v in row])


def write_trajectory_svg(traj: Trajectory, path: str, n: int = 2000,
                         size: int = 640) -> None:
    """Minimal SVG: one path for the (x, y) projection, circles for the
    centers and the syzygy events (colored by symbol)."""
    table = trajectory_table(traj, n)
    x, y = table[:, 4], table[:, 5]
    xmin, xmax = float(x.min()), float(x.max())
    ymin, ymax = float(y.min()), float(y.max())
    xmin, xmax = min(xmin, -1.3), max(xmax, 1.3)
    ymin, ymax = min(ymin, -0.3), max(ymax, 0.3)
    pad = 0.05 * max(xmax - xmin, ymax - ymin)
    xmin, xmax, ymin, ymax = xmin - pad, xmax + pad, ymin - pad, ymax + pad
    scale = size / max(xmax - xmin, ymax - ymin)

    def tx(u):
        return (u - xmin) * scale

    def ty(v):
        return (ymax - v) * scale

    w = (xmax - xmin) * scale
    hgt = (ymax - ymin) * scale
    d = " ".join(
        ("M" if i == 0 else "L") + f"{tx(px):.3f},{ty(py):.3f}"
        for i, (px, py) in enumerate(zip(x, y)))
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0f}" height="{hgt:.0f}" '
        f'viewBox="0 0 {w:.3f} {hgt:.3f}">',
        f'<path d="{d}" fill="none" stroke="#333333" stroke-width="1"/>',
        f'<circle cx="{tx(-1.0):.3f}" cy="{ty(0.0):.3f}" r="4" fill="#000000"/>',
        f'<circle cx="{tx(1.0):.3f}" cy="{ty(0.0):.3f}" r="4" fill="#000000"/>',
    ]
    for e in traj.events:
        ex = math.cosh(e.state.lam) * math.sin(e.state.nu)
        ey = math.sinh(e.state.lam) * math.cos(e.state.nu)
        color = _SYMBOL_COLORS.get(e.symbol, "#888888")
        parts.append(
            f'<circle cx="{tx(ex):.3f}" cy="{ty(ey):.3f}" r="2.5" fill="{color}"/>')
    parts.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(parts) + "\n")


def write_report_json(report: dict, path: Optional[str]) -> str:
    text = json.dumps(report, indent=2, sort_keys=True, default=_json_default)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    return text


def _json_default(v):
    from .emmap import Region

    if isinstance(v, Region):
        return v.value
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    if isinstance(v, np.bool_):
        return bool(v)
    raise TypeError(f"not JSON-serializable: {type(v)}")
