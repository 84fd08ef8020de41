"""Marked points, windows, test functions and finite configurations.

A configuration is a finite set of marked points ``(s, x)`` with mark
``s > 0`` and position ``x`` in R^d.  Configurations have set semantics:
construction order never matters, exact duplicates are dropped, and the
points are stored in a canonical order (lexicographic in the position
coordinates, then the mark).  The canonical order is what makes equality,
serialization and floating-point summation reproducible.

Windows are half-open axis-aligned boxes ``prod [lo_i, hi_i)``, optionally
restricted to a mark interval ``(a, b]``.  Half-open boxes tile exactly,
so disjoint unions of windows behave additively without boundary
double-counting.

Position and mark comparisons are exact: two floats are the same
coordinate if and only if they are equal as doubles (``-0.0`` is
normalized to ``0.0`` at construction so that equality, ordering and the
bit pattern agree).  No tolerance-based merging is ever applied; a
tolerance would make set membership intransitive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from .errors import (
    DimensionMismatch,
    InvalidArgument,
    NonPositiveMark,
)

Position = tuple  # tuple of float coordinates

_PHASE = "phase"  # functions of (mark, position)
_SPACE = "space"  # functions of position only


def _clean_coordinate(value) -> float:
    v = float(value)
    if not math.isfinite(v):
        raise InvalidArgument(f"coordinate must be finite, got {value!r}")
    # fold -0.0 into 0.0 so that ordering, equality and bits agree
    return 0.0 if v == 0.0 else v


def clean_position(position: Sequence[float]) -> Position:
    """Coerce a position to a tuple of finite floats with ``-0.0 -> 0.0``."""
    return tuple(_clean_coordinate(c) for c in position)


@dataclass(frozen=True)
class MarkedPoint:
    """A single point ``(mark, position)`` of a configuration.

    The mark is a positive finite real; the position is a tuple of finite
    floats.  Instances are immutable and hashable.
    """

    mark: float
    position: Position

    def __post_init__(self):
        m = float(self.mark)
        if not (math.isfinite(m) and m > 0.0):
            raise NonPositiveMark(f"mark must be a positive finite real, got {self.mark!r}")
        object.__setattr__(self, "mark", m)
        object.__setattr__(self, "position", clean_position(self.position))

    @property
    def dimension(self) -> int:
        return len(self.position)

    def sort_key(self):
        return (self.position, self.mark)


@dataclass(frozen=True)
class Window:
    """Half-open axis-aligned box ``prod [lower_i, upper_i)`` with an
    optional mark interval ``(a, b]``.

    ``upper`` bounds may be ``+inf`` (such a window is unbounded and is
    rejected by the samplers).  By default each axis must have strictly
    positive extent; pass ``allow_degenerate=True`` to permit
    ``lower_i == upper_i`` faces, which produce empty windows.

    The mark interval is open at ``a`` and closed at ``b``; ``b`` may be
    ``inf``.  A window without a mark interval accepts every mark.
    """

    lower: Position
    upper: Position
    mark_interval: tuple | None = None
    allow_degenerate: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        lo = tuple(float(v) for v in self.lower)
        hi = tuple(float(v) for v in self.upper)
        if len(lo) != len(hi):
            raise DimensionMismatch(f"window bounds of unequal length: {len(lo)} vs {len(hi)}")
        if len(lo) == 0:
            raise InvalidArgument("window must have at least one axis")
        for a, b in zip(lo, hi):
            if math.isnan(a) or math.isnan(b):
                raise InvalidArgument("window bounds must not be NaN")
            if a > b or (a == b and not self.allow_degenerate):
                raise InvalidArgument(f"window requires lower < upper per axis, got [{a}, {b})")
        lo = tuple(0.0 if v == 0.0 else v for v in lo)
        hi = tuple(0.0 if v == 0.0 else v for v in hi)
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)
        if self.mark_interval is not None:
            a, b = (float(v) for v in self.mark_interval)
            if math.isnan(a) or math.isnan(b) or a < 0.0 or b <= a:
                raise InvalidArgument(f"mark interval must satisfy 0 <= a < b, got ({a}, {b}]")
            object.__setattr__(self, "mark_interval", (a, b))

    @property
    def dimension(self) -> int:
        return len(self.lower)

    def volume(self) -> float:
        """Lebesgue volume of the spatial box (``inf`` if unbounded)."""
        vol = 1.0
        for a, b in zip(self.lower, self.upper):
            vol *= b - a
        return vol

    def is_bounded(self) -> bool:
        return all(math.isfinite(v) for v in self.lower + self.upper)

    def contains_position(self, position: Sequence[float]) -> bool:
        """Half-open box membership of a position, ``lo_i <= x_i < hi_i``."""
        if len(position) != self.dimension:
            raise DimensionMismatch(
                f"position of length {len(position)} against window of dimension {self.dimension}"
            )
        return all(a <= x < b for x, a, b in zip(position, self.lower, self.upper))

    def contains_mark(self, mark: float) -> bool:
        """Mark interval membership ``a < s <= b``; True when no interval is set."""
        if self.mark_interval is None:
            return True
        a, b = self.mark_interval
        return a < mark <= b

    def contains(self, point: MarkedPoint) -> bool:
        return self.contains_position(point.position) and self.contains_mark(point.mark)

    def covers(self, other: "Window") -> bool:
        """True when ``other`` is contained in this window (box and mark range)."""
        if other.dimension != self.dimension:
            raise DimensionMismatch("windows of different dimension")
        boxes = all(
            sa <= oa and ob <= sb
            for sa, sb, oa, ob in zip(self.lower, self.upper, other.lower, other.upper)
        )
        if not boxes:
            return False
        if self.mark_interval is None:
            return True
        if other.mark_interval is None:
            return False
        sa, sb = self.mark_interval
        oa, ob = other.mark_interval
        return sa <= oa and ob <= sb


@dataclass(frozen=True)
class TestFunction:
    """An evaluable real function with a declared support window.

    ``domain`` selects the call signature: ``"space"`` functions are
    evaluated as ``f(x)`` on positions, ``"phase"`` functions as
    ``f(s, x)`` on (mark, position) pairs.  The wrapper returns 0.0 for
    arguments outside the declared support, so the stored evaluator only
    ever sees points inside it.

    ``lipschitz`` is declared metadata: an upper bound on the Lipschitz
    constant with respect to the l1 distance on the function's arguments
    (the mark counts as one coordinate for phase functions).  ``None``
    means unknown and disables bound-based assertions downstream.
    """

    evaluator: Callable
    support: Window
    lipschitz: float | None = None
    domain: str = _PHASE

    def __post_init__(self):
        if self.domain not in (_PHASE, _SPACE):
            raise InvalidArgument(f"domain must be 'phase' or 'space', got {self.domain!r}")
        if self.lipschitz is not None:
            L = float(self.lipschitz)
            if not (math.isfinite(L) and L >= 0.0):
                raise InvalidArgument(f"lipschitz must be a nonnegative real or None, got {L}")
            object.__setattr__(self, "lipschitz", L)

    @property
    def dimension(self) -> int:
        return self.support.dimension

    def __call__(self, *args) -> float:
        if self.domain == _SPACE:
            (x,) = args
            if not self.support.contains_position(x):
                return 0.0
            v = float(self.evaluator(x))
        else:
            s, x = args
            if not (self.support.contains_position(x) and self.support.contains_mark(s)):
                return 0.0
            v = float(self.evaluator(s, x))
        if not math.isfinite(v):
            raise InvalidArgument("test function returned a non-finite value on its support")
        return v


def indicator(support: Window, domain: str = _PHASE) -> TestFunction:
    """The function equal to 1 on ``support`` and 0 outside (unknown Lipschitz)."""
    if domain == _SPACE:
        return TestFunction(lambda x: 1.0, support, None, _SPACE)
    return TestFunction(lambda s, x: 1.0, support, None, _PHASE)


def mark_weighted(fn: TestFunction) -> TestFunction:
    """Lift a position function g to the phase function ``(s, x) -> s * g(x)``.

    The support box is inherited from ``g``; all marks are admitted.  The
    result is generally not Lipschitz over an unbounded mark range, so the
    declared constant is ``None``.
    """
    if fn.domain != _SPACE:
        raise InvalidArgument("mark_weighted expects a position-domain function")
    base = Window(fn.support.lower, fn.support.upper)
    return TestFunction(lambda s, x: s * fn(x), base, None, _PHASE)


def linear_combination(terms: Sequence[tuple]) -> TestFunction:
    """Build ``sum_k c_k * f_k`` from ``(coefficient, TestFunction)`` pairs.

    All functions must share domain kind and dimension.  The support of the
    result is the bounding box of the members' supports (with the union of
    mark ranges for phase functions); each member still vanishes outside
    its own support, so the pointwise sum is exact.
    """
    if not terms:
        raise InvalidArgument("linear_combination requires at least one term")
    fns = [fn for _, fn in terms]
    domain = fns[0].domain
    d = fns[0].dimension
    if any(fn.domain != domain for fn in fns):
        raise InvalidArgument("mixed function domains in linear combination")
    if any(fn.dimension != d for fn in fns):
        raise DimensionMismatch("mixed dimensions in linear combination")
    coefs = [float(c) for c, _ in terms]
    lower = tuple(min(fn.support.lower[i] for fn in fns) for i in range(d))
    upper = tuple(max(fn.support.upper[i] for fn in fns) for i in range(d))
    intervals = [fn.support.mark_interval for fn in fns]
    if domain == _PHASE and all(iv is not None for iv in intervals):
        mark_interval = (min(iv[0] for iv in intervals), max(iv[1] for iv in intervals))
    else:
        mark_interval = None
    support = Window(lower, upper, mark_interval)
    lip = None
    if all(fn.lipschitz is not None for fn in fns):
        lip = sum(abs(c) * fn.lipschitz for c, fn in zip(coefs, fns))
    if domain == _SPACE:
        ev = lambda x: sum(c * fn(x) for c, fn in zip(coefs, fns))
        return TestFunction(ev, support, lip, _SPACE)
    ev = lambda s, x: sum(c * fn(s, x) for c, fn in zip(coefs, fns))
    return TestFunction(ev, support, lip, _PHASE)


@dataclass(frozen=True)
class Configuration:
    """A finite set of marked points in canonical order.

    Do not build instances directly; use :func:`make_configuration`, which
    validates, deduplicates and sorts.  Stored invariants are re-checked
    here so that hand-rolled instances cannot violate them silently.
    """

    points: tuple
    dimension: int

    def __post_init__(self):
        d = int(self.dimension)
        if d < 1:
            raise InvalidArgument(f"dimension must be >= 1, got {d}")
        object.__setattr__(self, "dimension", d)
        object.__setattr__(self, "points", tuple(self.points))
        prev = None
        for p in self.points:
            if not isinstance(p, MarkedPoint):
                raise InvalidArgument("configuration points must be MarkedPoint instances")
            if p.dimension != d:
                raise DimensionMismatch(
                    f"point of dimension {p.dimension} in configuration of dimension {d}"
                )
            key = p.sort_key()
            if prev is not None:
                if key == prev:
                    raise InvalidArgument(f"duplicate point {p} in configuration")
                if key < prev:
                    raise InvalidArgument("configuration points not in canonical order")
            prev = key

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[MarkedPoint]:
        return iter(self.points)

    def is_empty(self) -> bool:
        return not self.points

    def total_mark(self) -> float:
        """Sum of all marks, accumulated in canonical order."""
        total = 0.0
        for p in self.points:
            total += p.mark
        return total


def make_configuration(raw_points: Iterable, d: int) -> Configuration:
    """Build a configuration from marked points, enforcing set semantics.

    Parameters
    ----------
    raw_points : iterable
        ``MarkedPoint`` instances or ``(mark, position)`` pairs.
    d : int
        Spatial dimension; every position must have exactly ``d`` finite
        coordinates.

    Exact duplicates (same mark and same position, as doubles) are
    dropped.  Permuted inputs produce equal configurations.

    Raises
    ------
    NonPositiveMark
        If any mark is not a positive finite real.
    DimensionMismatch
        If any position length differs from ``d``.
    """
    points = {}
    for raw in raw_points:
        if isinstance(raw, MarkedPoint):
            p = raw
        else:
            mark, position = raw
            p = MarkedPoint(mark, tuple(position))
        if p.dimension != d:
            raise DimensionMismatch(
                f"position {list(p.position)} has {p.dimension} coordinates, expected {d}"
            )
        points[p.sort_key()] = p
    ordered = tuple(points[k] for k in sorted(points))
    return Configuration(ordered, d)


def count_in_window(gamma: Configuration, lam: Window) -> int:
    """Number of points of ``gamma`` inside the window.

    Membership is the half-open box test on the position, combined with
    the mark interval ``(a, b]`` when the window declares one.
    """
    _check_dims(gamma, lam)
    return sum(1 for p in gamma.points if lam.contains(p))


def restrict(gamma: Configuration, lam: Window) -> Configuration:
    """The sub-configuration of points inside the window.

    Restriction preserves canonical order, is idempotent, and is
    consistent under nesting: restricting to an inner window factors
    through any outer window containing it.
    """
    _check_dims(gamma, lam)
    kept = tuple(p for p in gamma.points if lam.contains(p))
    return Configuration(kept, gamma.dimension)


def n_point_class(gamma: Configuration, lam: Window) -> int:
    """Index n of the n-point class the windowed configuration falls in.

    The configurations supported in a window split disjointly by
    cardinality; this returns that cardinality.  Computed through
    :func:`restrict` so it provides a second route to the same number as
    :func:`count_in_window`.
    """
    return len(restrict(gamma, lam))


def canonical_order(gamma: Configuration) -> list:
    """The points as a list in canonical (position, mark) order.

    Any ordering would do as a representative of the inputs modulo
    permutation; lexicographic order is the one fixed by this package
    because it reproduces across platforms.
    """
    return list(gamma.points)


def pair_configuration(f: TestFunction, gamma: Configuration) -> float:
    """The pairing ``<f, gamma> = sum over points (s, x) of f(s, x)``.

    Only points inside ``f.support`` contribute; they are summed in
    canonical order with plain sequential accumulation, which makes the
    pairing bitwise reproducible and exactly local: pairing against
    ``restrict(gamma, f.support)`` gives the identical float.
    """
    if f.domain != _PHASE:
        raise InvalidArgument("pair_configuration expects a phase-domain function f(s, x)")
    if f.dimension != gamma.dimension:
        raise DimensionMismatch(
            f"function over dimension {f.dimension}, configuration over {gamma.dimension}"
        )
    total = 0.0
    for p in gamma.points:
        if f.support.contains(p):
            total += f(p.mark, p.position)
    return total


def _check_dims(gamma: Configuration, lam: Window) -> None:
    if gamma.dimension != lam.dimension:
        raise DimensionMismatch(
            f"configuration of dimension {gamma.dimension}, window of dimension {lam.dimension}"
        )
