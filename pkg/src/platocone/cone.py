"""The cone of positive discrete measures on R^d.

A discrete measure is a finite weighted sum of point masses
``sum_i w_i * delta_{x_i}`` with strictly positive weights and pairwise
distinct positions; the zero measure (no atoms) is included.  The set of
such measures is a cone: it is closed under addition and under scaling by
positive reals, but contains no inverses.

Atoms are stored sorted by position so that iteration order, summation
order and serialization are reproducible.  Position lookups use binary
search on the sorted atom table.

Although every discrete measure is also a Radon measure, no vague-topology
distance is exposed here: the only discrepancies defined on measures live
in :mod:`platocone.topology` and are pulled back through the reflection
bijection with configurations.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass
from typing import Iterable, Iterator

from .configuration import TestFunction, Window, clean_position
from .errors import DimensionMismatch, InvalidArgument, NonPositiveWeight


@dataclass(frozen=True)
class DiscreteMeasure:
    """Finite positive discrete measure, atoms sorted by position.

    ``atoms`` is a tuple of ``(position, weight)`` pairs with positions
    strictly increasing in lexicographic order and weights positive finite
    reals.  Use :func:`make_measure` to construct from unordered input.
    """

    atoms: tuple
    dimension: int

    def __post_init__(self):
        d = int(self.dimension)
        if d < 1:
            raise InvalidArgument(f"dimension must be >= 1, got {d}")
        object.__setattr__(self, "dimension", d)
        cleaned = []
        prev = None
        for position, weight in self.atoms:
            pos = clean_position(position)
            w = float(weight)
            if len(pos) != d:
                raise DimensionMismatch(
                    f"atom position {list(pos)} has {len(pos)} coordinates, expected {d}"
                )
            if not (math.isfinite(w) and w > 0.0):
                raise NonPositiveWeight(f"atom weight must be a positive finite real, got {weight!r}")
            if prev is not None and pos <= prev:
                raise InvalidArgument("measure atoms must be sorted by strictly increasing position")
            prev = pos
            cleaned.append((pos, w))
        object.__setattr__(self, "atoms", tuple(cleaned))

    def __len__(self) -> int:
        return len(self.atoms)

    def __iter__(self) -> Iterator[tuple]:
        return iter(self.atoms)

    def is_zero(self) -> bool:
        return not self.atoms

    def total_mass(self) -> float:
        """Sum of all weights, accumulated in position order."""
        total = 0.0
        for _, w in self.atoms:
            total += w
        return total

    def scaled(self, c: float) -> "DiscreteMeasure":
        """The measure ``c * eta`` for ``c > 0`` (cone scaling)."""
        c = float(c)
        if not (math.isfinite(c) and c > 0.0):
            raise InvalidArgument(f"cone scaling requires c > 0, got {c}")
        return DiscreteMeasure(tuple((pos, c * w) for pos, w in self.atoms), self.dimension)


def zero_measure(d: int) -> DiscreteMeasure:
    """The zero measure in dimension ``d`` (by convention part of the cone)."""
    return DiscreteMeasure((), d)


def make_measure(atoms: Iterable, d: int) -> DiscreteMeasure:
    """Build a discrete measure from ``(weight, position)`` pairs.

    Atoms at bitwise-identical positions are merged by summing their
    weights in input order: repeated point masses at one site are one atom
    carrying the total.  A weight of zero is rejected rather than dropped,
    since a zero-weight atom is a contradiction in terms here.

    Raises
    ------
    NonPositiveWeight
        If any weight is not a positive finite real.
    DimensionMismatch
        If any position length differs from ``d``.
    """
    merged = {}
    for weight, position in atoms:
        pos = clean_position(position)
        if len(pos) != d:
            raise DimensionMismatch(
                f"position {list(pos)} has {len(pos)} coordinates, expected {d}"
            )
        w = float(weight)
        if not (math.isfinite(w) and w > 0.0):
            raise NonPositiveWeight(f"atom weight must be a positive finite real, got {weight!r}")
        if pos in merged:
            merged[pos] += w
        else:
            merged[pos] = w
    ordered = tuple((pos, merged[pos]) for pos in sorted(merged))
    return DiscreteMeasure(ordered, d)


def support(eta: DiscreteMeasure) -> frozenset:
    """The support: the set of positions carrying positive weight."""
    return frozenset(pos for pos, _ in eta.atoms)


def weight_at(eta: DiscreteMeasure, x) -> float:
    """The weight of the atom at ``x``, or 0.0 when ``x`` is off-support."""
    pos = clean_position(x)
    if len(pos) != eta.dimension:
        raise DimensionMismatch(
            f"position of length {len(pos)} against measure of dimension {eta.dimension}"
        )
    i = bisect_left(eta.atoms, (pos,))
    if i < len(eta.atoms) and eta.atoms[i][0] == pos:
        return eta.atoms[i][1]
    return 0.0


def is_sub_measure(xi: DiscreteMeasure, eta: DiscreteMeasure, *, require_finite_support: bool = False) -> bool:
    """Subordination test: every atom of ``xi`` is an atom of ``eta`` with
    bitwise-equal weight.

    This is a partial order on discrete measures (reflexive, antisymmetric,
    transitive).  ``require_finite_support`` selects the finite variant of
    the relation, which additionally demands ``|support(xi)| < inf``; every
    measure materialized by this package has finite support, so the flag
    never changes the outcome and exists to make the distinction explicit.
    """
    if xi.dimension != eta.dimension:
        raise DimensionMismatch(
            f"measures of dimensions {xi.dimension} and {eta.dimension}"
        )
    # require_finite_support: materialized measures always have finite
    # support, so the finite variant of the relation coincides with the
    # plain one here; the flag names the distinction without changing it
    return all(weight_at(eta, pos) == w for pos, w in xi.atoms)


def pair_measure(f: TestFunction, eta: DiscreteMeasure) -> float:
    """The pairing ``<f, eta> = sum over atoms of weight * f(position)``.

    ``f`` must be a position-domain function; only atoms inside its
    support contribute, summed in position order.
    """
    if f.domain != "space":
        raise InvalidArgument("pair_measure expects a position-domain function f(x)")
    if f.dimension != eta.dimension:
        raise DimensionMismatch(
            f"function over dimension {f.dimension}, measure over {eta.dimension}"
        )
    total = 0.0
    for pos, w in eta.atoms:
        if f.support.contains_position(pos):
            total += w * f(pos)
    return total


def double_pair(f: TestFunction, eta: DiscreteMeasure) -> float:
    """The pairing ``<<f, eta>> = sum over atoms of f(weight, position)``.

    This treats each atom ``w * delta_x`` as the phase point ``(w, x)``:
    it equals ``pair_configuration(f, reflect_inverse(eta))`` bitwise,
    since atoms are visited in the same canonical order on both routes.
    """
    if f.domain != "phase":
        raise InvalidArgument("double_pair expects a phase-domain function f(s, x)")
    if f.dimension != eta.dimension:
        raise DimensionMismatch(
            f"function over dimension {f.dimension}, measure over {eta.dimension}"
        )
    total = 0.0
    for pos, w in eta.atoms:
        if f.support.contains_position(pos) and f.support.contains_mark(w):
            total += f(w, pos)
    return total


def mass_in_window(eta: DiscreteMeasure, lam: Window) -> float:
    """Total weight of atoms inside the window, summed in position order.

    When the window declares a mark interval, an atom with weight ``w``
    additionally needs ``w`` in that interval; this mirrors the membership
    rule for the marked point ``(w, x)`` under reflection.
    """
    if lam.dimension != eta.dimension:
        raise DimensionMismatch(
            f"window of dimension {lam.dimension}, measure of dimension {eta.dimension}"
        )
    total = 0.0
    for pos, w in eta.atoms:
        if lam.contains_position(pos) and lam.contains_mark(w):
            total += w
    return total
