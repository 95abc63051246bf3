import json
import math

import numpy as np
import pytest

from twocenter.errors import BranchAmbiguity, CollisionError
from twocenter.model import (CartesianState, Params, PhaseState,
                             deck_transform, from_regularized, hamiltonian,
                             h_lambda, h_nu, second_integral,
                             separated_hamiltonians, time_factor,
                             time_factor_coords, to_regularized)


EQ = Params(0.5, 0.5, -0.23)


def random_phase_state(rng):
    return PhaseState(rng.uniform(-2, 2), rng.uniform(-math.pi, math.pi),
                      rng.uniform(-2, 2), rng.uniform(-2, 2))


class TestParams:
    def test_validation(self):
        with pytest.raises(ValueError):
            Params(0.5, 0.5, 0.1)
        with pytest.raises(ValueError):
            Params(-0.5, 0.5, -0.1)
        with pytest.raises(ValueError):
            Params(0.5, 0.5, -0.1, d=2.0)


class TestHamiltonian:
    def test_symmetric_rest_state(self):
        s = CartesianState(0.0, 1.0, 0.0, 0.0)
        assert abs(hamiltonian(s, EQ) + 1 / math.sqrt(2)) < 1e-15

    def test_with_kinetic(self):
        s = CartesianState(0.0, 1.0, 1.0, 0.0)
        assert abs(hamiltonian(s, EQ) - (0.5 - 1 / math.sqrt(2))) < 1e-15

    def test_asymmetric(self):
        p = Params(1 / 3, 2 / 3, -0.5)
        s = CartesianState(2.0, 0.0, 0.0, 0.0)
        assert abs(hamiltonian(s, p) + 7 / 9) < 1e-15

    def test_collision_error(self):
        with pytest.raises(CollisionError):
            hamiltonian(CartesianState(1.0, 0.0, 0.0, 0.0), EQ)


class TestSecondIntegral:
    def test_vanishing(self):
        assert second_integral(CartesianState(0, 1, 0, 0), EQ) == 0.0

    def test_unit_value(self):
        assert abs(second_integral(CartesianState(0, 1, 1, 0), EQ) - 1.0) < 1e-15

    def test_equals_separated_angular_energy(self):
        # the separation constant and the Cartesian invariant coincide
        # exactly (zero offset, unit slope) once h is the actual energy
        rng = np.random.default_rng(7)
        worst, n = 0.0, 0
        while n < 1000:
            m1 = rng.uniform(0.2, 0.8)
            ps = random_phase_state(rng)
            if time_factor(ps) < 1e-3:
                continue
            p_any = Params(m1, 1 - m1, -1.0)
            s = from_regularized(ps, p_any)
            energy = hamiltonian(s, p_any)
            if energy >= -1e-6:
                continue  # identity holds on the energy shell; need h = H(s) < 0
            n += 1
            p = Params(m1, 1 - m1, energy)
            g = h_nu(ps.nu, ps.p_nu, p)
            worst = max(worst, abs(second_integral(s, p) - g))
        assert worst < 1e-10


class TestTransforms:
    def test_right_center(self):
        # the point (lam, nu) = (0, pi/2) sits over the right center (1, 0);
        # the momentum lift is singular there, so only positions map
        x = math.cosh(0.0) * math.sin(math.pi / 2)
        y = math.sinh(0.0) * math.cos(math.pi / 2)
        assert (x, y) == (1.0, 0.0)
        with pytest.raises(BranchAmbiguity):
            from_regularized(PhaseState(0.0, math.pi / 2, 0.1, 0.1), EQ)

    def test_axis_point(self):
        ps = PhaseState(1.0, 0.0, 0.0, 0.0)
        s = from_regularized(ps, EQ)
        assert abs(s.x) < 1e-15 and abs(s.y - math.sinh(1.0)) < 1e-15

    def test_round_trip(self):
        rng = np.random.default_rng(3)
        for _ in range(300):
            s = CartesianState(rng.uniform(-2, 2), rng.uniform(-2, 2),
                               rng.uniform(-2, 2), rng.uniform(-2, 2))
            if min(math.hypot(s.x + 1, s.y), math.hypot(s.x - 1, s.y)) < 1e-2:
                continue
            ps = to_regularized(s, EQ)
            assert ps.lam >= 0.0
            back = from_regularized(ps, EQ)
            err = max(abs(back.x - s.x), abs(back.y - s.y),
                      abs(back.px - s.px), abs(back.py - s.py))
            assert err < 1e-12

    def test_regularized_round_trip(self):
        rng = np.random.default_rng(4)
        for _ in range(300):
            ps = random_phase_state(rng)
            if ps.lam < 1e-3 or time_factor(ps) < 1e-3:
                continue
            again = to_regularized(from_regularized(ps, EQ), EQ)
            assert abs(again.lam - ps.lam) < 1e-12
            dnu = (again.nu - ps.nu + math.pi) % (2 * math.pi) - math.pi
            assert abs(dnu) < 1e-12

    def test_branch_ambiguity_at_center(self):
        with pytest.raises(BranchAmbiguity):
            to_regularized(CartesianState(1.0, 0.0, 0.0, 0.0), EQ)

    def test_collision_point_maps_to_center(self):
        with pytest.raises(BranchAmbiguity):
            from_regularized(PhaseState(0.0, math.pi / 2, 0.0, 0.0), EQ)


class TestSeparation:
    def test_separated_values(self):
        p = Params(0.5, 0.5, -0.23)
        assert abs(h_lambda(0.0, 0.0, p) + 0.77) < 1e-15
        assert abs(h_nu(math.pi / 2, 0.0, p) + 0.23) < 1e-15

    def test_separation_identity(self):
        # (H - h) * (cosh^2 lam - sin^2 nu) == H_lam + H_nu
        rng = np.random.default_rng(11)
        worst = 0.0
        n = 0
        while n < 1000:
            m1 = rng.uniform(0.2, 0.8)
            h = rng.uniform(-1.5, -0.05)
            p = Params(m1, 1 - m1, h)
            ps = random_phase_state(rng)
            f = time_factor(ps)
            if f < 1e-3:
                continue
            n += 1
            s = from_regularized(ps, p)
            lhs = (hamiltonian(s, p) - p.h) * f
            hl, hn = separated_hamiltonians(ps, p)
            worst = max(worst, abs(lhs - (hl + hn)))
        assert worst < 1e-10

    def test_time_factor_at_collision_points(self):
        assert time_factor_coords(0.0, math.pi / 2) == 0.0
        assert time_factor_coords(0.0, -math.pi / 2) == 0.0

    def test_time_factor_positive_elsewhere(self):
        # equals the product of the distances to the two centers
        assert abs(time_factor_coords(1.0, 0.0) - math.cosh(1.0) ** 2) < 1e-15
        assert time_factor_coords(0.0, 0.0) == 1.0
        rng = np.random.default_rng(5)
        for _ in range(200):
            ps = random_phase_state(rng)
            s = from_regularized(ps, EQ) if time_factor(ps) > 1e-3 else None
            if s is None:
                continue
            r1 = math.hypot(s.x + 1, s.y)
            r2 = math.hypot(s.x - 1, s.y)
            assert abs(time_factor(ps) - r1 * r2) < 1e-12


class TestDeckTransform:
    def test_same_cartesian_image(self):
        rng = np.random.default_rng(9)
        for _ in range(100):
            ps = random_phase_state(rng)
            if time_factor(ps) < 1e-3:
                continue
            a = from_regularized(ps, EQ)
            b = from_regularized(deck_transform(ps), EQ)
            assert max(abs(a.x - b.x), abs(a.y - b.y),
                       abs(a.px - b.px), abs(a.py - b.py)) < 1e-12

    def test_involution(self):
        ps = PhaseState(0.7, 1.1, -0.3, 0.9)
        twice = deck_transform(deck_transform(ps))
        assert abs(twice.lam - ps.lam) < 1e-15
        dnu = (twice.nu - ps.nu + math.pi) % (2 * math.pi) - math.pi
        assert abs(dnu) < 1e-12


class TestSerialization:
    def test_round_trip_json(self):
        ps = PhaseState(0.5, -1.2, 0.3, 0.4, tau=2.0, t=3.5)
        blob = json.dumps(ps.as_dict())
        again = PhaseState.from_dict(json.loads(blob))
        assert again == ps
        s = CartesianState(1.0, 2.0, -0.5, 0.25)
        assert CartesianState.from_dict(json.loads(json.dumps(s.as_dict()))) == s
