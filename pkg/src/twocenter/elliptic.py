"""Complete elliptic integral of the first kind, K(m).

K(m) = integral of dtheta / sqrt(1 - m sin^2 theta) over [0, pi/2], with the
parameter convention m = k^2.  The period formulas only ever need K, for
parameters ranging over (-inf, 1); negative parameters occur routinely and
tend to -inf near some region boundaries.
"""

import math
import warnings

from .errors import DomainError, OverflowWarning

_REL_TOL = 4e-16
_MAX_ITER = 60


def complete_k(m: float) -> float:
    """K(m) for parameter m < 1, via arithmetic-geometric-mean iteration.

    Negative parameters are routed through the imaginary-modulus identity
    K(-mu) = K(mu/(1+mu)) / sqrt(1+mu), so the AGM always starts from a
    pair in (0, 1].  Accuracy is a few ulp.

    Raises DomainError for m >= 1 - 1e-15; warns (OverflowWarning) within
    1e-12 of the logarithmic singularity at m = 1.
    """
    m = float(m)
    if math.isnan(m):
        raise DomainError("parameter is NaN")
    if m >= 1.0 - 1e-15:
        raise DomainError(f"elliptic parameter m={m!r} out of domain (m < 1 required)")
    if m > 1.0 - 1e-12:
        warnings.warn(
            f"elliptic parameter m={m!r} within 1e-12 of the singularity at 1",
            OverflowWarning,
            stacklevel=2,
        )
    if m < 0.0:
        mu = -m
        return complete_k(mu / (1.0 + mu)) / math.sqrt(1.0 + mu)
    a, b = 1.0, math.sqrt(1.0 - m)
    for _ in range(_MAX_ITER):
        if abs(a - b) <= _REL_TOL * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return math.pi / (2.0 * a)
