"""Closed-form periods, rotation numbers, ranges, and window phases.

Both separated motions are quadrature-reducible: substituting z = cosh(lam)
or u = sin(nu) turns the period integral into a complete elliptic integral
over a quartic, so every period is a prefactor times K of an explicit
modulus.  The rotation number W = T_nu / T_lambda therefore has closed form
on every regular torus, branch by branch.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.integrate import solve_ivp

from . import model
from .elliptic import complete_k
from .emmap import Region, classify, critical_data, region_interval, _nu_barrier
from .errors import (DivergenceError, DomainError, MonotonicityWarning,
                     NoConvergence, OutOfRange, OverflowWarning, RegionError)
from .model import Params
from .sturmian import WindowPhases

BOUNDARY_TOL = 1e-13
W_SOLVE_TOL = 1e-11

LAMBDA_CROSSING = "lambda3"
LAMBDA_WELL = "lambda0"
NU_OSCILLATION = "nu_o"
NU_ROTATION = "nu_r"

_BRANCH_PAIRING = {
    Region.S: (LAMBDA_CROSSING, NU_OSCILLATION),
    Region.SPRIME: (LAMBDA_CROSSING, NU_OSCILLATION),
    Region.L: (LAMBDA_CROSSING, NU_ROTATION),
    Region.P: (LAMBDA_WELL, NU_ROTATION),
}


@dataclass(frozen=True)
class ModulusData:
    """Elliptic moduli and prefactors entering the period formulas."""

    k_plus_sq: float
    k_minus_sq: Optional[float]
    k_c_sq: Optional[float]
    f_p0: float
    f_p1: Optional[float]
    f_m0: Optional[float]


@dataclass(frozen=True)
class TorusData:
    """Periods, rotation number and branch labels of one regular torus."""

    g: float
    h: float
    region: Region
    T_lambda: float
    T_nu: float
    W: float
    lambda_branch: str
    nu_branch: str


# ---------------------------------------------------------------------------
# raw closed forms (no domain guards; callers pick the valid branch)
# ---------------------------------------------------------------------------

def _disc_lambda(g: float, p: Params) -> float:
    M = p.mass_sum
    return math.sqrt(M * M + 4.0 * g * p.h)


def _t_lambda_crossing(g: float, p: Params) -> float:
    d = _disc_lambda(g, p)
    k2 = 0.5 + (g + p.h) / (2.0 * d)
    return 4.0 * complete_k(k2) / math.sqrt(d)


def _t_lambda_well(g: float, p: Params) -> float:
    d = _disc_lambda(g, p)
    inv_k2 = 2.0 * d / (d + g + p.h)
    return 2.0 * math.sqrt(2.0) * complete_k(inv_k2) / math.sqrt(g + p.h + d)


def _t_nu_osc(g: float, p: Params) -> float:
    if p.m1 == p.m2:
        k2 = 1.0 - g / p.h
        return 4.0 * complete_k(k2) / math.sqrt(-2.0 * p.h)
    dd = p.mass_diff
    dm = math.sqrt(dd * dd + 4.0 * g * p.h)
    k2 = 0.5 + (g + p.h) / (2.0 * dm)
    return 4.0 * complete_k(k2) / math.sqrt(dm)


def _t_nu_rot(g: float, p: Params) -> float:
    if p.m1 == p.m2:
        k2 = 1.0 - g / p.h
        k = math.sqrt(k2)
        return 4.0 * complete_k(1.0 / k2) / (k * math.sqrt(-2.0 * p.h))
    dd = p.mass_diff
    r2 = (g - p.h) ** 2 - dd * dd
    k2 = 0.5 - (g + p.h) / (2.0 * math.sqrt(r2))
    return 4.0 * complete_k(k2) / (math.sqrt(2.0) * r2 ** 0.25)


def _t_lambda_axis_harmonic(p: Params) -> float:
    """Limit of the crossing-branch period at its right edge when the edge
    is an elliptic equilibrium (h below the well-bifurcation energy)."""
    return 2.0 * math.pi / math.sqrt(-p.mass_sum - 2.0 * p.h)


def _t_lambda_harmonic_well_bottom(p: Params) -> float:
    """Limit of the well-branch period as the torus shrinks onto the
    circular orbit at the outer edge of the planetary band."""
    M = p.mass_sum
    return 2.0 * math.pi * math.sqrt(-2.0 * p.h) / math.sqrt(M * M - 4.0 * p.h * p.h)


def modulus_data(g: float, p: Params) -> ModulusData:
    """All moduli and prefactors defined at (g, p.h); None where undefined."""
    M, dd, h = p.mass_sum, p.mass_diff, p.h
    d = _disc_lambda(g, p)
    k_plus_sq = 0.5 + (g + h) / (2.0 * d)
    f_p0 = math.sqrt(2.0 * (-h) / d)
    s1 = (-1.0 - g / h) - d / h
    f_p1 = math.sqrt(2.0 / s1) if s1 > 0 else None
    disc_m = dd * dd + 4.0 * g * h
    if disc_m > 0:
        dm = math.sqrt(disc_m)
        k_minus_sq = 0.5 + (g + h) / (2.0 * dm)
        f_m0 = math.sqrt(2.0 * (-h) / dm)
    else:
        k_minus_sq = None
        f_m0 = None
    r2 = (g - h) ** 2 - dd * dd
    k_c_sq = 0.5 - (g + h) / (2.0 * math.sqrt(r2)) if r2 > 0 else None
    return ModulusData(k_plus_sq, k_minus_sq, k_c_sq, f_p0, f_p1, f_m0)


# ---------------------------------------------------------------------------
# guarded period functions
# ---------------------------------------------------------------------------

def _near(g: float, b: float) -> bool:
    return abs(g - b) <= BOUNDARY_TOL * max(1.0, abs(g), abs(b))


def period_lambda(g: float, p: Params) -> Tuple[float, str]:
    """Fictitious-time period of the hyperbolic-coordinate motion.

    Returns (period, branch).  The crossing branch covers g < kappa_pp, the
    well branch kappa_pp < g < chi_p (only above the well-bifurcation
    energy).  Raises DivergenceError within tolerance of a value of g where
    the period actually diverges, RegionError outside both domains.
    """
    c = critical_data(p)
    if g < c.kappa_pp:
        if p.h > c.h_lambda and _near(g, c.kappa_pp):
            raise DivergenceError("lambda period diverges at the crossing/well edge")
        return _t_lambda_crossing(g, p), LAMBDA_CROSSING
    if p.h > c.h_lambda and g <= c.chi_p:
        if _near(g, c.kappa_pp):
            raise DivergenceError("lambda period diverges at the crossing/well edge")
        return _t_lambda_well(g, p), LAMBDA_WELL
    raise RegionError(f"g={g} outside both lambda-motion domains at h={p.h}")


def period_nu(g: float, p: Params) -> Tuple[float, str]:
    """Fictitious-time period of the angular motion.

    Oscillation below the rotation barrier, rotation above it; the same
    oscillation value applies to both wells when two exist.  Raises
    DivergenceError within tolerance of the barrier (separatrix).
    """
    c = critical_data(p)
    barrier = _nu_barrier(c, p.h)
    if _near(g, barrier):
        raise DivergenceError("angular period diverges at the separatrix")
    if g > barrier:
        return _t_nu_rot(g, p), NU_ROTATION
    if g >= c.kappa_mm:
        return _t_nu_osc(g, p), NU_OSCILLATION
    raise RegionError(f"g={g} below the angular-motion range at h={p.h}")


def rotation_number(g: float, p: Params) -> TorusData:
    """Periods and rotation number W = T_nu / T_lambda of the torus at (g, h).

    Where two tori share (g, h) they share W, so no torus selector is
    needed here.
    """
    region = classify(g, p)
    if region not in _BRANCH_PAIRING:
        raise RegionError(f"(g={g}, h={p.h}) is not a regular value ({region.value})")
    t_lam, bl = period_lambda(g, p)
    t_nu, bn = period_nu(g, p)
    expected = _BRANCH_PAIRING[region]
    if (bl, bn) != expected:
        raise RegionError(
            f"branch pairing ({bl}, {bn}) inconsistent with region {region.value}")
    return TorusData(g, p.h, region, t_lam, t_nu, t_nu / t_lam, bl, bn)


# ---------------------------------------------------------------------------
# rotation-number ranges and inversion
# ---------------------------------------------------------------------------

def _w_at(g: float, region: Region, p: Params) -> float:
    bl, bn = _BRANCH_PAIRING[region]
    t_lam = _t_lambda_crossing(g, p) if bl == LAMBDA_CROSSING else _t_lambda_well(g, p)
    t_nu = _t_nu_osc(g, p) if bn == NU_OSCILLATION else _t_nu_rot(g, p)
    return t_nu / t_lam


def rotation_number_on_branch(g: float, region: Region, p: Params) -> float:
    """W on the stated region's branch pairing, without the critical-point
    guard of ``rotation_number``.

    Intended for sweeps that push arbitrarily close to the region edges,
    where the guarded classification would refuse a label.  ``g`` must lie
    strictly inside the region's open interval.
    """
    lo, hi = region_interval(region, p)
    if not lo < g < hi:
        raise RegionError(f"g={g} outside the open interval of {region.value}")
    return _w_at(g, region, p)


def w_range(region: Region, p: Params) -> Tuple[float, float]:
    """Endpoints (inf, sup) of W over the region's g-interval at this energy.

    Endpoints are open; infinite where a period diverges at the edge,
    otherwise evaluated exactly at the edge, where one motion degenerates
    to its harmonic limit and the closed forms remain finite.
    """
    c = critical_data(p)
    lo, hi = region_interval(region, p)
    if region == Region.L:
        wmax = math.inf
        if p.h >= c.h_lambda:
            wmin = 0.0
        else:
            wmin = _t_nu_rot(hi, p) / _t_lambda_axis_harmonic(p)
        return wmin, wmax
    if region in (Region.S, Region.SPRIME):
        wlo = _t_nu_osc(lo, p) / _t_lambda_crossing(lo, p)
        barrier = _nu_barrier(c, p.h)
        if _near(hi, barrier):
            whi = math.inf
        elif _near(hi, c.kappa_pp):
            whi = _t_nu_osc(hi, p) / _t_lambda_axis_harmonic(p)
        else:
            whi = _t_nu_osc(hi, p) / _t_lambda_crossing(hi, p)
        return min(wlo, whi), max(wlo, whi)
    if region == Region.P:
        wmax = _t_nu_rot(hi, p) / _t_lambda_harmonic_well_bottom(p)
        return 0.0, wmax
    raise ValueError(f"not a regular region: {region}")


def solve_g(region: Region, w_target: float, p: Params) -> float:
    """Invert W(g) = w_target within the region by bracketing and bisection.

    Monotonicity of W in g is conjectural; a non-monotone bracketing scan
    is reported via MonotonicityWarning and the first bracket is used.
    Raises OutOfRange for targets outside the open range, NoConvergence if
    bisection stalls.
    """
    wmin, wmax = w_range(region, p)
    if not (wmin < w_target < wmax):
        raise OutOfRange(
            f"W={w_target} outside the open range ({wmin}, {wmax}) of {region.value}")
    lo, hi = region_interval(region, p)
    width = hi - lo
    guard_lo = lo + max(BOUNDARY_TOL * max(1.0, abs(lo)), 1e-14 * width)
    guard_hi = hi - max(BOUNDARY_TOL * max(1.0, abs(hi)), 1e-14 * width)
    candidates = list(np.linspace(guard_lo, guard_hi, 33))
    # concentrate samples toward the edges, where W may diverge logarithmically
    for k in range(2, 13):
        step = width * 10.0 ** (-k)
        candidates.append(min(lo + step, guard_hi))
        candidates.append(max(hi - step, guard_lo))
    gs, ws = [], []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", OverflowWarning)
        for g in sorted(set(candidates)):
            try:
                w = _w_at(g, region, p)
            except DomainError:
                continue
            gs.append(g)
            ws.append(w)
    diffs = [w - w_target for w in ws]
    increasing = ws[-1] >= ws[0]
    monotone = all(
        (b >= a) if increasing else (b <= a) for a, b in zip(ws, ws[1:]))
    if not monotone:
        warnings.warn(
            f"rotation number not monotone across {region.value} at h={p.h}",
            MonotonicityWarning, stacklevel=2)
    bracket = None
    for i in range(len(gs) - 1):
        if diffs[i] == 0.0:
            return gs[i]
        if diffs[i] * diffs[i + 1] < 0:
            bracket = (gs[i], gs[i + 1])
            break
    if bracket is None:
        raise NoConvergence(f"no bracket found for W={w_target} in {region.value}")
    a, b = bracket
    fa = _w_at(a, region, p) - w_target
    for _ in range(300):
        mid = 0.5 * (a + b)
        fm = _w_at(mid, region, p) - w_target
        if abs(fm) <= W_SOLVE_TOL:
            return mid
        if fa * fm < 0:
            b = mid
        else:
            a, fa = mid, fm
        if b - a <= 1e-17 * max(1.0, abs(a)):
            if abs(fm) <= 1e-9:
                return mid
            raise NoConvergence(f"bisection stalled at g={mid} (|dW|={abs(fm)})")
    raise NoConvergence("bisection iteration cap reached")


# ---------------------------------------------------------------------------
# window phases on the flattened torus
# ---------------------------------------------------------------------------

def _crossing_times(force, y0, t_end, event_fn, n_events, max_step):
    """Times of the first ``n_events`` zeros of event_fn along a 1-dof flow."""
    def rhs(t, y):
        return (y[1], force(y[0]))

    def ev(t, y):
        return event_fn(y[0])

    sol = solve_ivp(rhs, (0.0, t_end), y0, method="DOP853",
                    rtol=1e-13, atol=1e-15, events=ev, max_step=max_step,
                    dense_output=True)
    times = sol.t_events[0]
    if len(times) < n_events:
        raise RuntimeError("expected window crossings not found")
    return times[:n_events], sol


def deep_well_sign(p: Params) -> int:
    """+1 if the deeper angular well surrounds nu = +pi/2, else -1."""
    return +1 if p.mass_diff <= 0 else -1


def nu_well_symbol(well: int) -> str:
    return "2" if well == +1 else "1"


def s_torus_well(p: Params, region: Region, torus: int) -> int:
    """Angular well of torus ``torus`` for oscillation-type regions."""
    if region == Region.SPRIME:
        return deep_well_sign(p)
    first = deep_well_sign(p)
    return first if torus == 0 else -first


def window_phases(g: float, p: Params, torus: int = 0) -> WindowPhases:
    """Measured phases of the syzygy windows on the flattened torus.

    Phases are fractions of the fictitious-time period from the reference
    point of each separated motion (maximal lam; minimal nu for
    oscillation; nu = 0 for rotation).  The axis crossings lam = 0 give the
    two horizontal entries (symbol 3, absent for planetary tori); the
    angular crossings of -pi/2 and +pi/2 give the vertical entries with
    symbols 1 and 2.
    """
    region = classify(g, p)
    if region not in _BRANCH_PAIRING:
        raise RegionError(f"(g={g}, h={p.h}) is not a regular value")
    t_lam, bl = period_lambda(g, p)
    t_nu, bn = period_nu(g, p)
    lam_force = lambda lam: model.lambda_force(lam, p)
    nu_force = lambda nu: model.nu_force(nu, p)

    horizontal = ()
    if bl == LAMBDA_CROSSING:
        _, zp = model.lambda_turning_z(g, p)
        lam_max = math.acosh(zp)
        times, _ = _crossing_times(lam_force, (lam_max, 0.0), 1.05 * t_lam,
                                   lambda lam: lam, 2, t_lam / 16.0)
        horizontal = tuple((t / t_lam, "3") for t in times)

    if bn == NU_OSCILLATION:
        well = s_torus_well(p, region, torus)
        lo, hi = model.nu_well_interval(g, p, well)
        center = 0.5 * math.pi * well
        times, _ = _crossing_times(nu_force, (lo, 0.0), 1.05 * t_nu,
                                   lambda nu: nu - center, 2, t_nu / 16.0)
        vertical = tuple((t / t_nu, nu_well_symbol(well)) for t in times)
    else:
        sense = +1.0 if torus == 0 or region == Region.L else -1.0
        p_nu0 = sense * math.sqrt(2.0 * (g - model.nu_potential(0.0, p)))
        times, sol = _crossing_times(nu_force, (0.0, p_nu0), 1.05 * t_nu,
                                     lambda nu: math.cos(nu), 2, t_nu / 16.0)
        vertical = tuple(
            (t / t_nu, "2" if math.sin(sol.sol(t)[0]) > 0 else "1") for t in times)

    return WindowPhases(vertical=vertical, horizontal=horizontal)


# ---------------------------------------------------------------------------
# grid sweeps
# ---------------------------------------------------------------------------

def torus_grid(m1: float, m2: float, g_values, h_values):
    """Rows (g, h, region, torus_count, T_lambda, T_nu, W) over a grid.

    Periods and W are None on non-regular points.
    """
    rows = []
    for h in h_values:
        p = Params(m1, m2, float(h))
        for g in g_values:
            region = classify(float(g), p)
            row = {"g": float(g), "h": float(h), "region": region,
                   "torus_count": region.torus_count,
                   "T_lambda": None, "T_nu": None, "W": None}
            if region in _BRANCH_PAIRING:
                try:
                    td = rotation_number(float(g), p)
                except (DivergenceError, RegionError):
                    pass
                else:
                    row.update(T_lambda=td.T_lambda, T_nu=td.T_nu, W=td.W)
            rows.append(row)
    return rows


def monotonicity_scan(p: Params, n_g: int = 200):
    """Sample W across each region present at p.h; return violation records."""
    violations = []
    for region in _BRANCH_PAIRING:
        try:
            lo, hi = region_interval(region, p)
        except Exception:
            continue
        width = hi - lo
        gs = np.linspace(lo + 1e-7 * width, hi - 1e-7 * width, n_g)
        ws = [_w_at(float(g), region, p) for g in gs]
        increasing = ws[-1] >= ws[0]
        for a, b, ga, gb in zip(ws, ws[1:], gs, gs[1:]):
            if (b <= a) if increasing else (b >= a):
                violations.append((region.value, p.h, float(ga), float(gb)))
    return violations
