"""Shared hypothesis strategies and comparison helpers for the test suite."""

import math

from hypothesis import strategies as st

from tscalc.timescale import Interval, Point, TimeScaleSet


@st.composite
def mixed_scales(draw, max_pieces=5, discrete=False):
    """Random bounded scales on quarter-integer breakpoints."""
    n = draw(st.integers(2 if discrete else 1, max_pieces))
    cuts = sorted(draw(st.lists(st.integers(-20, 20), min_size=2 * n, max_size=2 * n, unique=True)))
    pieces = []
    for k in range(n):
        lo, hi = cuts[2 * k] / 4, cuts[2 * k + 1] / 4
        if discrete or draw(st.booleans()):
            pieces.append(Point(lo))
        else:
            pieces.append(Interval(lo, hi))
    return TimeScaleSet(pieces)


@st.composite
def polynomials(draw, degree=3):
    coeffs = draw(st.lists(st.floats(-3, 3, allow_nan=False), min_size=1, max_size=degree + 1))

    def f(t, c=tuple(coeffs)):
        acc = 0.0
        for a in reversed(c):
            acc = acc * t + a
        return acc
    f.coeffs = coeffs
    return f


def scale_members(T):
    out = []
    for p in T.pieces:
        if isinstance(p, Point):
            out.append(p.value)
        else:
            out.extend([p.lo, p.lo + (p.hi - p.lo) / 3, p.hi])
    return out


def rel_close(a, b, rel, abs_=1e-12):
    return math.isclose(a, b, rel_tol=rel, abs_tol=abs_)


