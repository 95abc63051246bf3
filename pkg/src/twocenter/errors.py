"""Exception types shared across the toolkit."""


class TwoCenterError(Exception):
    """Base class for all toolkit errors."""


# -- word / lattice combinatorics --------------------------------------------

class LatticeHit(TwoCenterError):
    """A trajectory line passes through (or too close to) a lattice point."""


class PhaseHit(TwoCenterError):
    """A trajectory line passes through the intersection of two windows."""


# -- special functions --------------------------------------------------------

class DomainError(TwoCenterError, ValueError):
    """Argument outside the domain of a special function."""


class OverflowWarning(RuntimeWarning):
    """Evaluation close to a logarithmic singularity; result is very large."""


# -- physical model -----------------------------------------------------------

class CollisionError(TwoCenterError):
    """A Cartesian state sits at one of the two attracting centers."""


class BranchAmbiguity(TwoCenterError):
    """Coordinate transform requested at a branch point of the double cover."""


# -- energy-momentum map and periods -----------------------------------------

class RegionError(TwoCenterError):
    """The integral values (g, h) are outside the required region."""


class RegionEmpty(TwoCenterError):
    """The requested region does not occur at this energy."""


class DivergenceError(TwoCenterError):
    """Evaluation too close to a critical curve where the quantity diverges."""


class OutOfRange(TwoCenterError):
    """A target rotation number lies outside the attainable open interval."""


class NoConvergence(TwoCenterError):
    """An iterative solver hit its iteration cap without meeting tolerance."""


class MonotonicityWarning(RuntimeWarning):
    """A rotation-number scan detected a non-monotone sample sequence."""


# -- orbit integration --------------------------------------------------------

class InadmissibleStart(TwoCenterError):
    """Initial state does not satisfy the zero level of the separated energy."""


class CollisionApproach(TwoCenterError):
    """A trajectory came within the guard distance of a collision."""


class ClosureFailure(TwoCenterError):
    """A nominally periodic orbit failed to close in phase space."""
