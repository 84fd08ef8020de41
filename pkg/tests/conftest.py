"""Shared generators for randomized (but seeded) property tests."""

import numpy as np

from platocone import (
    Window,
    make_configuration,
    make_measure,
    to_plato,
)


def random_points(rng, d, size, mark_low=0.05, mark_high=4.0, box=5.0):
    """Marked points with i.i.d. uniform positions and marks."""
    positions = rng.uniform(-box, box, (size, d))
    marks = rng.uniform(mark_low, mark_high, size)
    return [(float(marks[i]), tuple(float(c) for c in positions[i])) for i in range(size)]


def random_configuration(rng, d, size, **kw):
    return make_configuration(random_points(rng, d, size, **kw), d)


def random_plato(rng, d, size, **kw):
    # uniform positions are almost surely distinct, so this never raises
    return to_plato(random_configuration(rng, d, size, **kw))


def random_measure(rng, d, size, **kw):
    points = random_points(rng, d, size, **kw)
    return make_measure([(mark, pos) for mark, pos in points], d)


def random_window(rng, d, box=6.0):
    lower = rng.uniform(-box, 0.0, d)
    extent = rng.uniform(0.5, box, d)
    return Window(tuple(lower), tuple(lower + extent))


def nested_windows(rng, d, box=6.0):
    """A pair (outer, inner) with inner contained in outer."""
    outer = random_window(rng, d, box)
    lo = np.array(outer.lower)
    hi = np.array(outer.upper)
    inner_lo = rng.uniform(lo, (lo + hi) / 2)
    inner_hi = rng.uniform((lo + hi) / 2, hi)
    return outer, Window(tuple(inner_lo), tuple(inner_hi))
