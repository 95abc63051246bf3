"""Cartography of the integral map: critical values and region classification.

For fixed energy h < 0 the admissible separation-constant values g split
into bands.  The hyperbolic-coordinate motion either crosses lam = 0 or is
trapped in an off-axis well; the angular motion either oscillates in one or
two wells or rotates.  The combinations give the region types:

    S   lam-crossing + two-well oscillation   (two tori, one per well)
    S'  lam-crossing + single-well oscillation (one torus)
    L   lam-crossing + rotation               (one torus)
    P   lam-well     + rotation               (two tori, two senses)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .model import Params


CRITICAL_TOL = 1e-10


class Region(Enum):
    S = "S"
    SPRIME = "S'"
    L = "L"
    P = "P"
    CRITICAL = "Critical"
    EMPTY = "Empty"

    @property
    def torus_count(self) -> int:
        return {"S": 2, "P": 2, "S'": 1, "L": 1}.get(self.value, 0)

    def __str__(self):
        return self.value


REGULAR_REGIONS = (Region.S, Region.SPRIME, Region.L, Region.P)


@dataclass(frozen=True)
class CriticalData:
    """Critical energies plus the critical g-values of the two motions at h."""

    h_star: float
    h_lambda: float
    h_nu: float
    kappa_pp: float
    kappa_mp: float
    kappa_mm: float
    chi_p: float
    chi_m: float


def critical_data(p: Params) -> CriticalData:
    """Evaluate all critical quantities at the instance's energy."""
    M, dd, h = p.mass_sum, abs(p.mass_diff), p.h
    return CriticalData(
        h_star=-(M + 2.0 * math.sqrt(p.m1 * p.m2)) / 2.0,
        h_lambda=-M / 2.0,
        h_nu=-dd / 2.0,
        kappa_pp=h + M,
        kappa_mp=h + dd,
        kappa_mm=h - dd,
        chi_p=-M * M / (4.0 * h),
        chi_m=-dd * dd / (4.0 * h),
    )


def _nu_barrier(c: CriticalData, h: float) -> float:
    """Level above which the angular motion rotates."""
    return c.chi_m if h < c.h_nu else c.kappa_mp


def _critical_g_values(p: Params):
    """Critical curve values active at this energy, as (g, label) pairs."""
    c = critical_data(p)
    vals = [(c.kappa_mm, "kappa_mm"), (c.kappa_mp, "kappa_mp"), (c.kappa_pp, "kappa_pp")]
    if p.h < c.h_nu:
        vals.append((c.chi_m, "chi_m"))
    if p.h > c.h_lambda:
        vals.append((c.chi_p, "chi_p"))
    return vals


def classify(g: float, p: Params, tol: float = CRITICAL_TOL) -> Region:
    """Region type of the integral-map point (g, p.h).

    Points within ``tol`` of an active critical value classify as Critical;
    period formulas are singular or degenerate there.
    """
    c = critical_data(p)
    for v, _ in _critical_g_values(p):
        if abs(g - v) < tol:
            return Region.CRITICAL
    lam_cross = g < c.kappa_pp
    lam_well = p.h > c.h_lambda and c.kappa_pp < g < c.chi_p
    barrier = _nu_barrier(c, p.h)
    nu_rot = g > barrier
    two_well = p.h < c.h_nu and c.kappa_mp < g < c.chi_m
    nu_osc = c.kappa_mm < g < barrier
    if lam_cross and nu_rot:
        return Region.L
    if lam_well and nu_rot:
        return Region.P
    if lam_cross and two_well:
        return Region.S
    if lam_cross and nu_osc:
        return Region.SPRIME
    return Region.EMPTY


def region_boundaries(p: Params):
    """Sorted (g, label) pairs where the classification changes at this h.

    Coincident critical values (equal masses collapse kappa_mm and kappa_mp)
    are merged into one entry with a joined label.
    """
    vals = sorted(_critical_g_values(p))
    merged = []
    for v, name in vals:
        if merged and abs(v - merged[-1][0]) < 1e-12:
            merged[-1] = (merged[-1][0], merged[-1][1] + "=" + name)
        else:
            merged.append((v, name))
    gaps = [b - a for (a, _), (b, _) in zip(merged, merged[1:])]
    eps = min([1e-6 * max(1.0, abs(p.h))] + [0.4 * gp for gp in gaps if gp > 0])
    out = []
    for v, name in merged:
        if classify(v - eps, p) != classify(v + eps, p):
            out.append((v, name))
    return out


def region_menu(p: Params):
    """The set of region types occurring for some g at this energy."""
    bounds = [v for v, _ in region_boundaries(p)]
    present = set()
    for a, b in zip(bounds, bounds[1:]):
        r = classify(0.5 * (a + b), p)
        if r not in (Region.EMPTY, Region.CRITICAL):
            present.add(r)
    return present


def region_interval(region: Region, p: Params):
    """Open g-interval occupied by ``region`` at this energy.

    Raises RegionEmpty if the region does not occur.
    """
    from .errors import RegionEmpty

    c = critical_data(p)
    barrier = _nu_barrier(c, p.h)
    if region == Region.L:
        lo, hi = barrier, c.kappa_pp
    elif region == Region.P:
        if p.h <= c.h_lambda:
            raise RegionEmpty("no off-axis well at this energy")
        lo, hi = max(c.kappa_pp, barrier), c.chi_p
    elif region == Region.S:
        if p.h >= c.h_nu:
            raise RegionEmpty("single angular well only at this energy")
        lo, hi = c.kappa_mp, min(c.chi_m, c.kappa_pp)
    elif region == Region.SPRIME:
        lo, hi = c.kappa_mm, min(c.kappa_mp, c.kappa_pp)
    else:
        raise ValueError(f"not a regular region: {region}")
    if not lo < hi:
        raise RegionEmpty(f"region {region.value} empty at h={p.h}")
    return lo, hi
