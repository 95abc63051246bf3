import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twocenter.elliptic import complete_k
from twocenter.errors import DomainError, OverflowWarning

from oracles import k_quadrature


def test_zero_parameter():
    assert abs(complete_k(0.0) - math.pi / 2) < 1e-14


def test_half_parameter():
    # frozen from adaptive quadrature of the defining integral
    assert abs(complete_k(0.5) - 1.8540746773013719) < 1e-13


def test_negative_one():
    # imaginary-modulus identity applied to the m = 0.5 value
    want = 1.8540746773013719 / math.sqrt(2.0)
    assert abs(complete_k(-1.0) - want) < 1e-13


def test_agrees_with_quadrature():
    for m in np.concatenate([np.linspace(-50, 0.9, 25), [0.95, 0.99]]):
        k = complete_k(float(m))
        assert abs(k - k_quadrature(float(m))) < 1e-10 * k


def test_imaginary_modulus_identity():
    for mu in (0.1, 1.0, 10.0, 100.0):
        lhs = complete_k(-mu) * math.sqrt(1.0 + mu)
        rhs = complete_k(mu / (1.0 + mu))
        assert abs(lhs - rhs) < 1e-12


@given(st.floats(-80.0, 0.995), st.floats(-80.0, 0.995))
@settings(max_examples=200, deadline=None)
def test_monotone_increasing(m1, m2):
    a, b = sorted((m1, m2))
    if b - a < 1e-9 * (1.0 + abs(a)):
        return
    assert complete_k(a) < complete_k(b)


def test_domain_error():
    with pytest.raises(DomainError):
        complete_k(1.0)
    with pytest.raises(DomainError):
        complete_k(1.5)
    with pytest.raises(DomainError):
        complete_k(1.0 - 1e-16)


def test_overflow_warning_near_one():
    with pytest.warns(OverflowWarning):
        v = complete_k(1.0 - 1e-13)
    assert v > 10.0


def test_divergence_toward_one():
    assert complete_k(1 - 1e-6) < complete_k(1 - 1e-9)
