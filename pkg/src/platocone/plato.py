"""Pinpointing configurations and the reflection bijection onto measures.

A configuration over the marked phase space is *pinpointing* when no two
of its points share a position.  Pinpointing configurations with finite
local mass form the Plato space: the domain on which the reflection map

    ``{(s_1, x_1), (s_2, x_2), ...}  ->  s_1*delta_{x_1} + s_2*delta_{x_2} + ...``

is a bijection onto the cone of positive discrete measures.  Each marked
point becomes one atom whose weight is the mark; conversely every atom
``w * delta_x`` lifts uniquely to the point ``(w, x)``.  Configurations
that are not pinpointing have no measure counterpart (two marks at one
position cannot be told apart from their sum) and are rejected rather
than merged.

All finite configurations automatically have finite local mass, so on the
data this package materializes the Plato condition reduces to the
pinpointing check.  Samplers that approximate measures with infinitely
many atoms account for the discarded tail separately
(:mod:`platocone.sampling`).
"""

from __future__ import annotations

from dataclasses import dataclass

from .configuration import Configuration, MarkedPoint, Window
from .cone import DiscreteMeasure
from .errors import DimensionMismatch, NotPinpointing


@dataclass(frozen=True)
class PlatoConfiguration:
    """A configuration whose points all sit at distinct positions.

    Wraps a :class:`Configuration` and re-validates the pinpointing
    invariant on construction, so an instance in hand is always a valid
    preimage of a discrete measure.
    """

    configuration: Configuration

    def __post_init__(self):
        offender = _first_duplicate_position(self.configuration)
        if offender is not None:
            raise NotPinpointing(offender)

    @property
    def dimension(self) -> int:
        return self.configuration.dimension

    def __len__(self) -> int:
        return len(self.configuration)

    def __iter__(self):
        return iter(self.configuration)


def _first_duplicate_position(gamma: Configuration):
    # points are sorted by (position, mark), so duplicates are adjacent
    prev = None
    for p in gamma.points:
        if prev is not None and p.position == prev:
            return p.position
        prev = p.position
    return None


def is_pinpointing(gamma: Configuration) -> bool:
    """True iff all point positions are pairwise distinct (as doubles)."""
    return _first_duplicate_position(gamma) is None


def local_mass(gamma, lam: Window) -> float:
    """Sum of marks of the points whose position lies in the window.

    Accepts a :class:`Configuration` or a :class:`PlatoConfiguration`.
    Marks are accumulated in canonical point order, which makes the value
    agree bitwise with the window mass of the reflected measure.
    """
    if isinstance(gamma, PlatoConfiguration):
        gamma = gamma.configuration
    if gamma.dimension != lam.dimension:
        raise DimensionMismatch(
            f"configuration of dimension {gamma.dimension}, window of dimension {lam.dimension}"
        )
    total = 0.0
    for p in gamma.points:
        if lam.contains_position(p.position) and lam.contains_mark(p.mark):
            total += p.mark
    return total


def to_plato(gamma: Configuration) -> PlatoConfiguration:
    """Wrap a configuration after checking the pinpointing property.

    Finite local mass holds automatically for finite data, so this is the
    complete membership test.  On failure the error names the first
    duplicated position in canonical order, which makes randomized test
    failures reproducible and actionable.

    Raises
    ------
    NotPinpointing
        If two points share a position.
    """
    return PlatoConfiguration(gamma)


def reflect(gamma: PlatoConfiguration) -> DiscreteMeasure:
    """Project a pinpointing configuration to its discrete measure.

    Every point ``(s, x)`` becomes the atom ``s * delta_x``.  The atom
    count equals the point count, and atom order equals canonical point
    order (positions are distinct, so sorting by position alone agrees
    with sorting by position then mark).
    """
    atoms = tuple((p.position, p.mark) for p in gamma.configuration.points)
    return DiscreteMeasure(atoms, gamma.dimension)


def reflect_inverse(eta: DiscreteMeasure) -> PlatoConfiguration:
    """Lift a discrete measure to the unique configuration over it.

    Every atom ``w * delta_x`` becomes the point ``(w, x)``.  This is the
    two-sided inverse of :func:`reflect`: both round trips are bitwise
    identities on valid instances.
    """
    points = tuple(MarkedPoint(w, pos) for pos, w in eta.atoms)
    config = Configuration(points, eta.dimension)
    return PlatoConfiguration(config)
