"""The planar two-fixed-center system and its regularizing coordinates.

A unit test particle moves in the field of masses m1 at (-1, 0) and m2 at
(1, 0).  The coordinate change x + i y = sin(nu + i lam), together with the
time rescaling dt = (cosh^2 lam - sin^2 nu) dtau, removes the collision
singularities and separates the motion into two one-degree-of-freedom
systems, one hyperbolic-like (lam) and one angular (nu).

Note on the time factor: cosh^2 lam - sin^2 nu equals r1*r2, the product of
the distances to the two centers, and vanishes exactly at collisions.  It is
also the conformal factor of the coordinate map, which is what makes the
separation identity (H - h) * factor = H_lam + H_nu hold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import BranchAmbiguity, CollisionError

CENTER_TOL = 1e-12


@dataclass(frozen=True)
class Params:
    """Masses and energy of one problem instance (half-separation fixed to 1).

    General separations d are obtained by rescaling lengths by d, energies
    by 1/d and times by d^(3/2); they are not represented explicitly.
    """

    m1: float
    m2: float
    h: float
    d: float = 1.0

    def __post_init__(self):
        if not (self.m1 > 0 and self.m2 > 0):
            raise ValueError("masses must be positive")
        if not self.h < 0:
            raise ValueError("only bounded motion (h < 0) is supported")
        if self.d != 1.0:
            raise ValueError("half-separation is fixed to d = 1")

    @property
    def mass_sum(self) -> float:
        return self.m1 + self.m2

    @property
    def mass_diff(self) -> float:
        return self.m1 - self.m2

    def with_h(self, h: float) -> "Params":
        return replace(self, h=h)


@dataclass(frozen=True)
class CartesianState:
    x: float
    y: float
    px: float
    py: float

    def as_dict(self) -> dict:
        return {"x": self.x, "y": self.y, "px": self.px, "py": self.py}

    @classmethod
    def from_dict(cls, d: dict) -> "CartesianState":
        return cls(d["x"], d["y"], d["px"], d["py"])


@dataclass(frozen=True)
class PhaseState:
    """Regularized state; tau is fictitious time, t the physical time."""

    lam: float
    nu: float
    p_lam: float
    p_nu: float
    tau: float = 0.0
    t: float = 0.0

    def as_dict(self) -> dict:
        return {
            "lambda": self.lam,
            "nu": self.nu,
            "p_lambda": self.p_lam,
            "p_nu": self.p_nu,
            "tau": self.tau,
            "t": self.t,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PhaseState":
        return cls(d["lambda"], d["nu"], d["p_lambda"], d["p_nu"],
                   d.get("tau", 0.0), d.get("t", 0.0))


# ---------------------------------------------------------------------------
# Cartesian functions
# ---------------------------------------------------------------------------

def _distances(x: float, y: float):
    return math.hypot(x + 1.0, y), math.hypot(x - 1.0, y)


def hamiltonian(s: CartesianState, p: Params) -> float:
    """Total energy: kinetic minus the two Kepler potentials."""
    r1, r2 = _distances(s.x, s.y)
    if r1 < CENTER_TOL or r2 < CENTER_TOL:
        raise CollisionError("state at a center")
    return 0.5 * (s.px ** 2 + s.py ** 2) - p.m1 / r1 - p.m2 / r2


def second_integral(s: CartesianState, p: Params) -> float:
    """The independent conserved quantity making the system integrable.

    Equals the separation constant: on a trajectory of energy h it coincides
    with the angular part H_nu of the separated motion.
    """
    r1, r2 = _distances(s.x, s.y)
    if r1 < CENTER_TOL or r2 < CENTER_TOL:
        raise CollisionError("state at a center")
    ang = s.x * s.py - s.y * s.px
    return 0.5 * ang * ang + 0.5 * s.px ** 2 + s.x * (p.m1 / r1 - p.m2 / r2)


# ---------------------------------------------------------------------------
# coordinate / momentum transforms
# ---------------------------------------------------------------------------

def _xy(lam: float, nu: float):
    return math.cosh(lam) * math.sin(nu), math.sinh(lam) * math.cos(nu)


def time_factor_coords(lam: float, nu: float) -> float:
    """dt/dtau = cosh^2 lam - sin^2 nu = r1 * r2; zero exactly at collisions."""
    return math.cosh(lam) ** 2 - math.sin(nu) ** 2


def time_factor(ps: PhaseState) -> float:
    return time_factor_coords(ps.lam, ps.nu)


def from_regularized(ps: PhaseState, p: Params) -> CartesianState:
    """Project a regularized state to the Cartesian phase space."""
    lam, nu = ps.lam, ps.nu
    a = math.sinh(lam) * math.sin(nu)
    b = math.cosh(lam) * math.cos(nu)
    f = a * a + b * b
    if f < CENTER_TOL:
        raise BranchAmbiguity("state at a branch point (collision)")
    x, y = _xy(lam, nu)
    px = (a * ps.p_lam + b * ps.p_nu) / f
    py = (b * ps.p_lam - a * ps.p_nu) / f
    return CartesianState(x, y, px, py)


def to_regularized(s: CartesianState, p: Params) -> PhaseState:
    """Lift a Cartesian state to the lam >= 0 sheet of the double cover.

    The second sheet is reached with deck_transform.  Raises BranchAmbiguity
    at the centers, where the cover is branched.
    """
    r1, r2 = _distances(s.x, s.y)
    if r1 < CENTER_TOL or r2 < CENTER_TOL:
        raise BranchAmbiguity("centers are branch points of the cover")
    w = _casin(complex(s.x, s.y))
    nu, lam = w.real, w.imag
    if lam < 0.0:
        lam, nu = -lam, math.pi - nu
    nu = _wrap_angle(nu)
    p_lam = s.px * math.sinh(lam) * math.sin(nu) + s.py * math.cosh(lam) * math.cos(nu)
    p_nu = s.px * math.cosh(lam) * math.cos(nu) - s.py * math.sinh(lam) * math.sin(nu)
    return PhaseState(lam, nu, p_lam, p_nu)


def _casin(z: complex) -> complex:
    import cmath

    return cmath.asin(z)


def _wrap_angle(nu: float) -> float:
    """Reduce to (-pi, pi]."""
    nu = math.fmod(nu, 2.0 * math.pi)
    if nu <= -math.pi:
        nu += 2.0 * math.pi
    elif nu > math.pi:
        nu -= 2.0 * math.pi
    return nu


def deck_transform(ps: PhaseState) -> PhaseState:
    """The involution exchanging the two sheets over one Cartesian point."""
    return PhaseState(-ps.lam, _wrap_angle(math.pi - ps.nu), -ps.p_lam, -ps.p_nu,
                      ps.tau, ps.t)


# ---------------------------------------------------------------------------
# separated one-degree-of-freedom systems
# ---------------------------------------------------------------------------

def lambda_potential(lam: float, p: Params) -> float:
    c = math.cosh(lam)
    return -p.mass_sum * c - p.h * c * c


def lambda_force(lam: float, p: Params) -> float:
    """-dV/dlam for the hyperbolic-coordinate motion."""
    return math.sinh(lam) * (p.mass_sum + 2.0 * p.h * math.cosh(lam))


def nu_potential(nu: float, p: Params) -> float:
    s = math.sin(nu)
    return p.mass_diff * s + p.h * s * s


def nu_force(nu: float, p: Params) -> float:
    """-dV/dnu for the angular motion."""
    return -math.cos(nu) * (p.mass_diff + 2.0 * p.h * math.sin(nu))


def h_lambda(lam: float, p_lam: float, p: Params) -> float:
    return 0.5 * p_lam * p_lam + lambda_potential(lam, p)


def h_nu(nu: float, p_nu: float, p: Params) -> float:
    return 0.5 * p_nu * p_nu + nu_potential(nu, p)


def separated_hamiltonians(ps: PhaseState, p: Params):
    """(H_lam, H_nu); their sum vanishes on admissible states of energy p.h."""
    return h_lambda(ps.lam, ps.p_lam, p), h_nu(ps.nu, ps.p_nu, p)


# ---------------------------------------------------------------------------
# turning points of the separated motions
# ---------------------------------------------------------------------------

def lambda_turning_z(g: float, p: Params):
    """Roots (z-, z+) in z = cosh(lam) of the level H_lam = -g."""
    M, ah = p.mass_sum, -p.h
    disc = M * M + 4.0 * g * p.h
    if disc < 0:
        raise ValueError("no real turning points at this level")
    d = math.sqrt(disc)
    return (M - d) / (2.0 * ah), (M + d) / (2.0 * ah)


def nu_turning_u(g: float, p: Params):
    """Roots (u_a, u_b) in u = sin(nu) of the level H_nu = g, u_a <= u_b."""
    dd, ah = p.mass_diff, -p.h
    disc = dd * dd + 4.0 * g * p.h
    if disc < 0:
        raise ValueError("angular motion rotates at this level (no turning)")
    s = math.sqrt(disc)
    ua, ub = (dd - s) / (2.0 * ah), (dd + s) / (2.0 * ah)
    return (ua, ub) if ua <= ub else (ub, ua)


def nu_well_interval(g: float, p: Params, well: int):
    """Angular turning interval for the oscillation well around +pi/2 or -pi/2.

    ``well`` is +1 for the interval around nu = +pi/2, -1 for -pi/2.
    """
    ua, ub = nu_turning_u(g, p)
    if well == +1:
        if ub > 1.0:
            raise ValueError("well around +pi/2 not reachable at this level")
        lo = math.asin(ub)
        return lo, math.pi - lo
    if well == -1:
        if ua < -1.0:
            raise ValueError("well around -pi/2 not reachable at this level")
        hi = math.asin(ua)
        return -math.pi - hi, hi
    raise ValueError("well must be +1 or -1")
