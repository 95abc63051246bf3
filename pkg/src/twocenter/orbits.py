"""Regularized orbit integration and syzygy-sequence verification.

The two separated one-degree-of-freedom flows are integrated together as a
four-dimensional field in fictitious time, with the physical time carried
along as a quadrature.  Axis crossings emit the syzygy symbols: crossing
the segment between the centers (lam = 0) is symbol 3, crossing the left
outer ray (nu = -pi/2 mod 2pi) symbol 1, the right outer ray (+pi/2)
symbol 2.  Word comparisons accept the 1<->2 relabelling throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import solve_ivp

from . import model, periods
from .emmap import Region, classify, critical_data
from .errors import (ClosureFailure, CollisionApproach, InadmissibleStart,
                     RegionError, TwoCenterError)
from .model import Params, PhaseState
from .sturmian import (SlopeIntercept, SymbolWord, WindowPhases,
                       cutting_sequence, sturmian_exponents,
                       word_from_exponents)

COLLISION_GUARD = 1e-10
ADMISSIBILITY_TOL = 1e-9
CLOSURE_TOL = 1e-6
DEFAULT_TOL = 1e-12


@dataclass(frozen=True)
class Event:
    tau: float
    symbol: str
    state: PhaseState


@dataclass
class Trajectory:
    """An integrated regularized orbit with its syzygy events."""

    params: Params
    tau: np.ndarray
    t: np.ndarray
    lam: np.ndarray
    nu: np.ndarray
    p_lam: np.ndarray
    p_nu: np.ndarray
    events: Tuple[Event, ...]
    closed: bool = False
    _dense: object = field(default=None, repr=False)

    @property
    def samples(self):
        return [PhaseState(self.lam[i], self.nu[i], self.p_lam[i],
                           self.p_nu[i], self.tau[i], self.t[i])
                for i in range(len(self.tau))]

    def state_at(self, tau: float) -> PhaseState:
        lam, nu, pl, pn, t = self._dense(tau)
        return PhaseState(lam, nu, pl, pn, tau, t)

    def cartesian(self, n: Optional[int] = None):
        """x, y arrays of the configuration-space projection."""
        if n is None:
            lam, nu = self.lam, self.nu
        else:
            taus = np.linspace(self.tau[0], self.tau[-1], n)
            ys = self._dense(taus)
            lam, nu = ys[0], ys[1]
        return np.cosh(lam) * np.sin(nu), np.sinh(lam) * np.cos(nu)

    def min_time_factor(self) -> float:
        f = np.cosh(self.lam) ** 2 - np.sin(self.nu) ** 2
        return float(f.min())


@dataclass(frozen=True)
class OrbitSpec:
    """What to integrate: a torus plus a starting point on it."""

    g: Optional[float] = None
    p_over_q: Optional[Fraction] = None
    region: Optional[Region] = None
    phase: Tuple[float, float] = (0.15, 0.4)
    torus: int = 0

    def __post_init__(self):
        if self.g is None and self.p_over_q is None:
            raise ValueError("either g or p_over_q must be given")
        if self.p_over_q is not None and self.p_over_q <= 0:
            raise ValueError("rotation number must be positive")


def _rhs(p: Params):
    M, dd, h = p.mass_sum, p.mass_diff, p.h

    def rhs(tau, y):
        lam, nu = y[0], y[1]
        return (y[2], y[3],
                math.sinh(lam) * (M + 2.0 * h * math.cosh(lam)),
                -math.cos(nu) * (dd + 2.0 * h * math.sin(nu)),
                math.cosh(lam) ** 2 - math.sin(nu) ** 2)

    return rhs


def integrate(start: PhaseState, p: Params, tau_span: Tuple[float, float],
              tol: float = DEFAULT_TOL, collision_guard: bool = True,
              max_step: Optional[float] = None) -> Trajectory:
    """Integrate the regularized flow with syzygy event detection.

    The separated energies are conserved individually; the run is rejected
    up front if their sum is off zero (InadmissibleStart) and aborted if
    the time factor dips below the collision guard (CollisionApproach).
    Event times are refined by the integrator's root finder on the dense
    output, well below 1e-10 in tau.
    """
    hl, hn = model.separated_hamiltonians(start, p)
    if abs(hl + hn) > ADMISSIBILITY_TOL:
        raise InadmissibleStart(f"H_lam + H_nu = {hl + hn:.3e} at the start")
    if collision_guard and model.time_factor(start) < COLLISION_GUARD:
        raise CollisionApproach("start too close to a collision")
    if max_step is None:
        scale = math.sqrt(p.mass_sum + 2.0 * abs(p.h) + 1.0)
        max_step = 0.5 * math.pi / scale

    ev_axis = lambda tau, y: y[0]
    ev_ray = lambda tau, y: math.cos(y[1])
    events = [ev_axis, ev_ray]
    if collision_guard:
        def ev_coll(tau, y):
            return (math.cosh(y[0]) ** 2 - math.sin(y[1]) ** 2) - COLLISION_GUARD
        ev_coll.terminal = True
        ev_coll.direction = -1.0
        events.append(ev_coll)

    y0 = (start.lam, start.nu, start.p_lam, start.p_nu, start.t)
    sol = solve_ivp(_rhs(p), tau_span, y0, method="DOP853", rtol=tol,
                    atol=tol * 1e-2, events=events, dense_output=True,
                    max_step=max_step)
    if not sol.success:
        raise RuntimeError(f"integration failed: {sol.message}")
    if collision_guard and len(sol.t_events) > 2 and len(sol.t_events[2]):
        raise CollisionApproach(
            f"time factor fell below {COLLISION_GUARD} at tau={sol.t_events[2][0]}")

    evs = []
    for te, ye in zip(sol.t_events[0], sol.y_events[0]):
        evs.append(Event(float(te), "3", PhaseState(*ye[:4], te, ye[4])))
    for te, ye in zip(sol.t_events[1], sol.y_events[1]):
        sym = "2" if math.sin(ye[1]) > 0 else "1"
        evs.append(Event(float(te), sym, PhaseState(*ye[:4], te, ye[4])))
    evs.sort(key=lambda e: e.tau)

    traj = Trajectory(p, sol.t, sol.y[4], sol.y[0], sol.y[1], sol.y[2],
                      sol.y[3], tuple(evs), _dense=sol.sol)
    drift = _energy_drift(traj, p)
    if drift > ADMISSIBILITY_TOL:
        raise RuntimeError(f"separated-energy drift {drift:.3e} exceeds tolerance")
    return traj


def _energy_drift(traj: Trajectory, p: Params) -> float:
    hl = 0.5 * traj.p_lam ** 2 - p.mass_sum * np.cosh(traj.lam) - p.h * np.cosh(traj.lam) ** 2
    hn = 0.5 * traj.p_nu ** 2 + p.mass_diff * np.sin(traj.nu) + p.h * np.sin(traj.nu) ** 2
    return float(np.max(np.abs(hl + hn)))


def syzygy_word(traj: Trajectory) -> SymbolWord:
    """The event symbols in time order (empty if nothing was crossed)."""
    return SymbolWord("".join(e.symbol for e in traj.events), cyclic=False)


# ---------------------------------------------------------------------------
# launching from torus phases
# ---------------------------------------------------------------------------

def _flow_1dof(force, y0, t_flow, max_step):
    if t_flow == 0.0:
        return y0
    sol = solve_ivp(lambda t, y: (y[1], force(y[0])), (0.0, t_flow), y0,
                    method="DOP853", rtol=1e-13, atol=1e-15, max_step=max_step)
    return (sol.y[0][-1], sol.y[1][-1])


def _lambda_reference(g: float, p: Params, region: Region, torus: int):
    zm, zp = model.lambda_turning_z(g, p)
    if region == Region.P:
        sign = 1.0
        return (sign * math.acosh(zp), 0.0)
    return (math.acosh(zp), 0.0)


def _nu_reference(g: float, p: Params, region: Region, torus: int):
    if region in (Region.S, Region.SPRIME):
        well = periods.s_torus_well(p, region, torus)
        lo, hi = model.nu_well_interval(g, p, well)
        return (lo, 0.0)
    sense = +1.0 if torus == 0 or region == Region.L else -1.0
    return (0.0, sense * math.sqrt(2.0 * (g - model.nu_potential(0.0, p))))


def state_from_phases(g: float, p: Params, region: Region,
                      phase: Tuple[float, float], torus: int = 0) -> PhaseState:
    """Initial condition at given torus phases (nu-phase, lam-phase).

    Phases are fractions of the respective fictitious-time periods measured
    from the same reference points used by the window-phase computation.
    """
    t_lam, _ = periods.period_lambda(g, p)
    t_nu, _ = periods.period_nu(g, p)
    lam0, pl0 = _flow_1dof(lambda lam: model.lambda_force(lam, p),
                           _lambda_reference(g, p, region, torus),
                           (phase[1] % 1.0) * t_lam, t_lam / 16.0)
    nu0, pn0 = _flow_1dof(lambda nu: model.nu_force(nu, p),
                          _nu_reference(g, p, region, torus),
                          (phase[0] % 1.0) * t_nu, t_nu / 16.0)
    return PhaseState(lam0, nu0, pl0, pn0)


def _closure_residual(a: PhaseState, b: PhaseState) -> float:
    dnu = (b.nu - a.nu) - 2.0 * math.pi * round((b.nu - a.nu) / (2.0 * math.pi))
    return math.sqrt((b.lam - a.lam) ** 2 + dnu ** 2
                     + (b.p_lam - a.p_lam) ** 2 + (b.p_nu - a.p_nu) ** 2)


def _resolve_torus(spec: OrbitSpec, p: Params):
    """(g, region, W) for an orbit spec, solving for g when only W is given."""
    if spec.g is not None:
        region = classify(spec.g, p)
        if region not in (Region.S, Region.SPRIME, Region.L, Region.P):
            raise RegionError(f"(g={spec.g}, h={p.h}) not regular")
        w = spec.p_over_q
        wd = periods.rotation_number(spec.g, p).W
        if w is None:
            w = Fraction(wd).limit_denominator(1000)
            if abs(float(w) - wd) > 1e-9:
                raise ValueError(
                    f"W={wd} is not recognizably rational; give p_over_q explicitly")
        elif abs(float(w) - wd) > 1e-6:
            raise ValueError(f"g={spec.g} has W={wd}, inconsistent with {w}")
        return spec.g, region, Fraction(w)
    region = spec.region
    if region is None:
        raise ValueError("a region is required when solving for g from W")
    g = periods.solve_g(region, float(spec.p_over_q), p)
    return g, region, Fraction(spec.p_over_q)


def periodic_orbit(spec: OrbitSpec, p: Params, tol: float = DEFAULT_TOL) -> Trajectory:
    """Integrate one full period of a rational torus and verify closure.

    The fictitious-time period of a W = p/q torus is p T_lambda = q T_nu;
    the trajectory must return to its start within the closure tolerance,
    and its event count obeys the word-length law.
    """
    g, region, w = _resolve_torus(spec, p)
    pq, q = w.numerator, w.denominator
    t_lam, _ = periods.period_lambda(g, p)
    t_nu, _ = periods.period_nu(g, p)
    tau_star = 0.5 * (pq * t_lam + q * t_nu)
    start = state_from_phases(g, p, region, spec.phase, spec.torus)
    traj = integrate(start, p, (0.0, tau_star), tol=tol,
                     max_step=min(t_lam, t_nu) / 16.0)
    res = _closure_residual(start, traj.state_at(tau_star))
    if res > CLOSURE_TOL:
        raise ClosureFailure(f"orbit failed to close: residual {res:.3e}")
    evs = tuple(e for e in traj.events if e.tau < tau_star - 1e-9)
    traj.events = evs
    traj.closed = True
    return traj


# ---------------------------------------------------------------------------
# predicted words
# ---------------------------------------------------------------------------

def _window_word(w: WindowPhases, slope: Fraction, count: int) -> SymbolWord:
    """Cutting word of one period of a rational line against given windows."""
    from .errors import PhaseHit

    golden = 0.6180339887498949
    for j in range(1, 40):
        b = (golden * j) % 1.0
        try:
            word = cutting_sequence(w, float(slope), b, count)
        except PhaseHit:
            continue
        return SymbolWord(word.symbols, cyclic=True)
    raise RuntimeError("no collision-free intercept found")


def predicted_word(g: float, p: Params, w: Fraction, torus: int = 0) -> SymbolWord:
    """Predicted word of the rational torus, from measured window phases.

    The general route cuts a line of slope W against the measured windows.
    When the window pairs are half-spaced (they are, to measurement
    accuracy), this coincides with the Sturmian construction, which is used
    as a cross-check by the verification suite.
    """
    w = Fraction(w)
    region = classify(g, p)
    if region not in (Region.S, Region.SPRIME, Region.L, Region.P):
        raise RegionError(f"(g={g}, h={p.h}) not regular")
    phases = periods.window_phases(g, p, torus)
    count = 2 * w.denominator if region == Region.P else 2 * (w.numerator + w.denominator)
    return _window_word(phases, w, count)


def sturmian_word(region: Region, p: Params, w: Fraction, torus: int = 0) -> SymbolWord:
    """Predicted word from the Sturmian exponents with half-spaced windows."""
    w = Fraction(w)
    pq, q = w.numerator, w.denominator
    if region == Region.P:
        return SymbolWord("12" * q, cyclic=True)
    si = SlopeIntercept.from_fraction(pq, q, Fraction(1, 2 * q))
    e = sturmian_exponents(si, 2 * q)
    if region == Region.L:
        labels = ("1", "2")
    else:
        well = periods.s_torus_well(p, region, torus)
        labels = (periods.nu_well_symbol(well),)
    return word_from_exponents(e, labels, "3")


# ---------------------------------------------------------------------------
# collision orbits
# ---------------------------------------------------------------------------

def _collision_state(g: float, p: Params, ray: int, s_lam: float, s_nu: float) -> PhaseState:
    """State at the collision point on the ray nu = ray * pi/2."""
    c = critical_data(p)
    p_lam2 = 2.0 * (c.kappa_pp - g)
    p_nu2 = 2.0 * (g - model.nu_potential(ray * math.pi / 2.0, p))
    if p_lam2 <= 0 or p_nu2 <= 0:
        raise RegionError("collision point not on this level set")
    return PhaseState(0.0, ray * math.pi / 2.0,
                      s_lam * math.sqrt(p_lam2), s_nu * math.sqrt(p_nu2))


def collision_orbits(g: float, p: Params, w: Optional[Fraction] = None,
                     torus: int = 0) -> Tuple[Trajectory, Trajectory]:
    """The two collision-collision orbits of a rational crossing-type torus.

    Launched from collision configurations with level-set momenta and
    integrated for exactly half the torus period, after which the next
    half-lattice point (the partner collision) is reached.  The two
    launches are chosen on provably distinct lines using the parity of W.
    """
    region = classify(g, p)
    if region not in (Region.S, Region.SPRIME, Region.L):
        raise RegionError("collision orbits exist only for crossing-type tori")
    if w is None:
        wd = periods.rotation_number(g, p).W
        w = Fraction(wd).limit_denominator(1000)
        if abs(float(w) - wd) > 1e-9:
            raise ValueError("torus is not recognizably rational")
    pq, q = w.numerator, w.denominator
    t_nu, _ = periods.period_nu(g, p)
    t_lam, _ = periods.period_lambda(g, p)
    tau_half = 0.25 * (q * t_nu + pq * t_lam)

    if region == Region.L:
        first = _collision_state(g, p, -1, +1.0, +1.0)
        if pq % 2 == 1:
            second = _collision_state(g, p, +1, +1.0, +1.0)
        else:
            second = _collision_state(g, p, -1, -1.0, +1.0)
    else:
        well = periods.s_torus_well(p, region, torus)
        first = _collision_state(g, p, well, +1.0, +1.0)
        if pq % 2 == 1:
            second = _collision_state(g, p, well, +1.0, -1.0)
        else:
            second = _collision_state(g, p, well, -1.0, +1.0)

    out = []
    for start in (first, second):
        traj = integrate(start, p, (0.0, tau_half), collision_guard=False,
                         max_step=min(t_lam, t_nu) / 16.0)
        out.append(traj)
    return out[0], out[1]


def collision_endpoint_residual(traj: Trajectory) -> float:
    """Distance of the final state from the nearest collision configuration."""
    end = traj.state_at(traj.tau[-1])
    dnu = abs(math.cos(end.nu))
    return math.hypot(end.lam, math.asin(min(1.0, dnu)))


# ---------------------------------------------------------------------------
# word-prediction verification
# ---------------------------------------------------------------------------

def _safe_phases(rng, g, p, region, torus, w):
    """Random torus phases keeping the launch point off the windows."""
    phases = periods.window_phases(g, p, torus)
    margin = 0.02 / max(1, w.denominator + w.numerator)
    for _ in range(200):
        th = rng.uniform(0.02, 0.98, 2)
        ok = all(min(abs(th[0] - ph), 1 - abs(th[0] - ph)) > margin
                 for ph, _ in phases.vertical)
        ok = ok and all(min(abs(th[1] - ph), 1 - abs(th[1] - ph)) > margin
                        for ph, _ in phases.horizontal)
        if ok:
            return float(th[0]), float(th[1])
    raise RuntimeError("could not place a launch phase away from the windows")


def verify_theorems(p: Params, w_list: Sequence[Fraction],
                    phases_per_torus: int = 8, seed: int = 0,
                    region: Optional[Region] = None) -> dict:
    """Integrate rational tori and compare syzygy words with predictions.

    For every region present at the energy (or the one requested) and every
    admissible W, several launch phases per torus are integrated for one
    period; the observed cyclic words must match the predicted words up to
    rotation and 1<->2 relabelling, obey the word-length law, have 3-run
    lengths floor(W) or floor(W)+1, and show no 1/2 adjacency outside the
    planetary case.  Failures are recorded in the report, not raised.
    """
    from .sturmian import is_balanced

    rng = np.random.default_rng(seed)
    regions = [region] if region is not None else [
        r for r in (Region.S, Region.SPRIME, Region.L, Region.P)]
    report = {"m1": p.m1, "m2": p.m2, "h": p.h, "seed": seed, "checks": {},
              "pass": True}

    for w in [Fraction(x) for x in w_list]:
        placed = False
        for reg in regions:
            try:
                wmin, wmax = periods.w_range(reg, p)
            except Exception:
                continue
            if not (wmin < float(w) < wmax):
                continue
            placed = True
            key = f"{reg.value} W={w}"
            try:
                check = _verify_one_torus_family(p, reg, w, phases_per_torus, rng)
            except TwoCenterError as exc:
                check = {"status": type(exc).__name__, "detail": str(exc),
                         "pass": False}
            report["checks"][key] = check
            report["pass"] = report["pass"] and check["pass"]
        if not placed:
            key = f"W={w}"
            report["checks"][key] = {
                "status": "OutOfRange",
                "detail": "target outside every admissible rotation-number range",
                "pass": False,
            }
            report["pass"] = False

    report["half_spacing"] = _half_spacing_record(p)
    return report


def _verify_one_torus_family(p, reg, w, phases_per_torus, rng):
    from .sturmian import is_balanced

    g = periods.solve_g(reg, float(w), p)
    td = periods.rotation_number(g, p)
    tori = range(td.region.torus_count)
    expected_len = 2 * w.denominator if reg == Region.P else 2 * (w.numerator + w.denominator)
    check = {"g": g, "W": str(w), "region": reg.value, "tori": [], "pass": True}
    for torus in tori:
        pred = predicted_word(g, p, w, torus)
        stur = sturmian_word(reg, p, w, torus)
        entry = {"torus": torus, "expected_word": pred.symbols,
                 "sturmian_word": stur.symbols,
                 "sturmian_agrees": pred.cyclically_equal(stur, relabel=True),
                 "cases": []}
        for _ in range(phases_per_torus):
            for _attempt in range(6):
                phase = _safe_phases(rng, g, p, reg, torus, w)
                spec = OrbitSpec(g=g, p_over_q=w, region=reg, phase=phase,
                                 torus=torus)
                try:
                    traj = periodic_orbit(spec, p)
                except CollisionApproach:
                    continue
                break
            else:
                entry["cases"].append({"status": "no collision-free phase found",
                                       "pass": False})
                continue
            word = syzygy_word(traj)
            bal = is_balanced(SymbolWord(word.symbols, cyclic=True))
            n = math.floor(float(w))
            runs_ok = all(r in (n, n + 1) for r in bal.run_lengths) if n > 0 \
                else all(r == 1 for r in bal.run_lengths)
            # like-symbol stutters (11 or 22) never occur; adjacency of the
            # two distinct outer symbols is excluded only when W >= 1 keeps
            # an axis crossing between them (planetary words always alternate)
            cyc = word.symbols + word.symbols[:1]
            stutter_ok = "11" not in cyc and "22" not in cyc
            if reg != Region.P and float(w) >= 1.0:
                stutter_ok = stutter_ok and not bal.has_12_adjacency
            # physical closure happens at half the fictitious period when
            # the halfway state is the deck image of the start (p, q odd)
            tau_star = float(traj.tau[-1])
            half = traj.state_at(0.5 * tau_star)
            deck_res = _closure_residual(model.deck_transform(traj.state_at(0.0)),
                                         half)
            case = {
                "phase": [round(x, 6) for x in phase],
                "observed_word": word.symbols,
                "matches": word.cyclically_equal(pred, relabel=True),
                "length_ok": len(word) == expected_len,
                "runs_ok": runs_ok,
                "stutter_ok": stutter_ok,
                "closure": _closure_residual(traj.state_at(0.0),
                                             traj.state_at(traj.tau[-1])),
                "tau_period": tau_star,
                "physical_period": float(traj.t[-1]),
                "closes_at_half_period": bool(deck_res < 1e-6),
            }
            case["pass"] = bool(case["matches"] and case["length_ok"]
                                and case["runs_ok"] and case["stutter_ok"])
            entry["cases"].append(case)
        entry["pass"] = bool(entry["sturmian_agrees"]
                             and entry["cases"]
                             and all(c.get("pass") for c in entry["cases"]))
        check["tori"].append(entry)
        check["pass"] = check["pass"] and entry["pass"]
    if reg in (Region.S, Region.SPRIME):
        check["measured_W_above_1"] = bool(td.W > 1.0)
        check["pass"] = check["pass"] and check["measured_W_above_1"]
    return check


def _half_spacing_record(p: Params) -> dict:
    """Measured window separations per region present; the crossing-type
    angular pair for unequal masses in region L is recorded, not asserted."""
    out = {}
    for reg in (Region.S, Region.SPRIME, Region.L, Region.P):
        try:
            lo, hi = periods.region_interval(reg, p)
        except Exception:
            continue
        g = lo + 0.5 * (hi - lo)
        try:
            phases = periods.window_phases(g, p, 0)
        except Exception:
            continue
        rec = {"g": g}
        if len(phases.horizontal) == 2:
            a, b = (ph for ph, _ in phases.horizontal)
            rec["horizontal_separation"] = abs(b - a)
        if len(phases.vertical) == 2:
            a, b = (ph for ph, _ in phases.vertical)
            rec["vertical_separation"] = abs(b - a)
        out[reg.value] = rec
    return out


def measured_rotation_ratio(traj: Trajectory) -> float:
    """(# axis-segment symbols) / (# outer-ray symbols) along a trajectory."""
    word = syzygy_word(traj).symbols
    n3 = word.count("3")
    n12 = word.count("1") + word.count("2")
    if n12 == 0:
        raise ValueError("no outer-ray crossings observed")
    return n3 / n12
