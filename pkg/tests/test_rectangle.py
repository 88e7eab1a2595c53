import math

import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate as sp_integrate

from helpers import mixed_scales
from tscalc.errors import BadPartition, BadWindow
from tscalc.rectangle import (
    ALPHA_NOTE,
    RectangleDomain,
    darboux_bounds,
    double_integral,
    iterated_integrals,
)
from tscalc.timescale import integers, interval, points, union

Z_EXAMPLE = RectangleDomain(integers(0, 2), integers(1, 3), 0, 2, 1, 3)
UNIT = RectangleDomain(interval(0, 1), interval(0, 1), 0, 1, 0, 1)
MIXED = RectangleDomain(union(interval(0, 1), points([1.5, 2])), union(points([0]), interval(0.5, 2)),
                        0, 2, 0, 2)


def double_sum(R, f, x_kind, y_kind):
    """Direct double summation over a discrete window."""
    def weights(T, lo, hi, kind):
        ts = [p.value for p in T.pieces if lo <= p.value <= hi]
        if kind == "delta":
            return [(t, u - t) for t, u in zip(ts, ts[1:])]
        return [(u, u - t) for t, u in zip(ts, ts[1:])]
    return sum(f(x, y) * wx * wy
               for x, wx in weights(R.t1, R.a, R.b, x_kind)
               for y, wy in weights(R.t2, R.c, R.d, y_kind))


def test_integer_double_sum():
    assert double_integral(Z_EXAMPLE, lambda x, y: x + y, 1) == 8


def test_unit_square_closed_form():
    for alpha in (0, 0.25, 1):
        assert double_integral(UNIT, lambda x, y: x * x + y * y, alpha) == pytest.approx(2 / 3, rel=1e-12)


def test_zero_function():
    assert double_integral(MIXED, lambda x, y: 0.0, 0.3) == 0.0


def test_rectangle_validation():
    with pytest.raises(BadWindow):
        RectangleDomain(integers(0, 2), integers(0, 2), 0, 0, 0, 2)
    with pytest.raises(BadWindow):
        RectangleDomain(integers(0, 2), integers(0, 2), 0, 1.5, 0, 2)


@pytest.mark.parametrize("xk, yk", [("delta", "delta"), ("delta", "nabla"), ("nabla", "delta"), ("nabla", "nabla")])
def test_pure_terms_match_double_sums(xk, yk):
    R = RectangleDomain(integers(-1, 4), points([0, 0.5, 2, 3]), -1, 4, 0, 3)
    f = lambda x, y: math.exp(0.3 * x) * (1 + y * y)
    terms = iterated_integrals(R, f)
    assert terms[(xk, yk)] == pytest.approx(double_sum(R, f, xk, yk), rel=1e-14)


def test_mixed_scale_against_scipy():
    f = lambda x, y: math.exp(x - y) + x * y
    # T1 = [0,1] ∪ {1.5, 2}; T2 = {0} ∪ [0.5, 2]; delta-delta by hand decomposition
    dense_x = lambda y: sp_integrate.quad(lambda x: f(x, y), 0, 1, epsabs=1e-14)[0]
    inner = lambda y: dense_x(y) + 0.5 * f(1, y) + 0.5 * f(1.5, y)
    expected = 0.5 * inner(0) + sp_integrate.quad(inner, 0.5, 2, epsabs=1e-14)[0]
    got = iterated_integrals(MIXED, f)[("delta", "delta")]
    assert got == pytest.approx(expected, rel=1e-9)


@given(st.floats(0, 1))
@settings(max_examples=25, deadline=None)
def test_alpha_expansion(alpha):
    f = lambda x, y: math.exp(x) * (y + 2) ** 2
    terms = iterated_integrals(MIXED, f)
    expect = (alpha ** 2 * terms[("delta", "delta")]
              + alpha * (1 - alpha) * (terms[("delta", "nabla")] + terms[("nabla", "delta")])
              + (1 - alpha) ** 2 * terms[("nabla", "nabla")])
    assert double_integral(MIXED, f, alpha) == pytest.approx(expect, rel=1e-9)


@given(mixed_scales(discrete=True), mixed_scales(discrete=True), st.floats(0, 1))
@settings(deadline=None)
def test_fubini_discrete_exact_up_to_rounding(T1, T2, alpha):
    R = RectangleDomain(T1, T2, T1.min, T1.max, T2.min, T2.max)
    f = lambda x, y: (x - 0.5 * y) ** 2 + 0.1 * x * y
    xy = double_integral(R, f, alpha, order="xy")
    yx = double_integral(R, f, alpha, order="yx")
    assert xy == pytest.approx(yx, rel=1e-13, abs=1e-13)


def test_fubini_mixed_within_compounded_tolerance():
    f = lambda x, y: math.sin(x + 2 * y) + x * x
    for alpha in (0, 0.5, 1):
        xy = double_integral(MIXED, f, alpha, order="xy")
        yx = double_integral(MIXED, f, alpha, order="yx")
        assert abs(xy - yx) <= 10 * 1e-10 * max(1.0, abs(xy))


def test_monotone_in_f():
    f = lambda x, y: x * y
    g = lambda x, y: x * y + (x - y) ** 2
    for alpha in (0, 0.6, 1):
        assert double_integral(MIXED, f, alpha) <= double_integral(MIXED, g, alpha) + 1e-12


def test_constant():
    for R in (Z_EXAMPLE, UNIT, MIXED):
        for alpha in (0, 0.5, 1):
            assert double_integral(R, lambda x, y: 3.0, alpha) == pytest.approx(3.0 * R.area, rel=1e-12)


class TestDarboux:
    def test_discrete_atoms_close(self):
        f = lambda x, y: math.cos(x * y) + x
        res = darboux_bounds(Z_EXAMPLE, f)
        assert res.lower == res.upper == double_integral(Z_EXAMPLE, f, 1)
        assert res.partition_atoms == 4

    def test_constant(self):
        res = darboux_bounds(UNIT, lambda x, y: 2.5)
        assert res.lower == res.upper == 2.5

    def test_hand_enumeration(self):
        # cells of side 1/2; inf of x+y at lower-left corner, sup at upper-right
        res = darboux_bounds(UNIT, lambda x, y: x + y, [0, 0.5, 1], [0, 0.5, 1])
        assert res.lower == pytest.approx(0.5, abs=1e-15)
        assert res.upper == pytest.approx(1.5, abs=1e-15)

    def test_alpha_note(self):
        f = lambda x, y: x * x + y
        res = darboux_bounds(Z_EXAMPLE, f, alpha=0.5)
        assert res.note == ALPHA_NOTE
        assert res.iterated_alpha == double_integral(Z_EXAMPLE, f, 0.5)
        assert res.lower != res.iterated_alpha
        assert darboux_bounds(Z_EXAMPLE, f).note is None

    def test_refinement_brackets_integral(self):
        f = lambda x, y: math.exp(x) * y
        xs = [0, 0.25, 0.5, 0.75, 1]
        res = darboux_bounds(UNIT, f, xs, xs)
        exact = (math.e - 1) / 2
        assert res.lower <= exact <= res.upper

    @pytest.mark.parametrize("xs", [[0, 0.5], [0.5, 1], [0, 1.5, 2], [0, 2, 1, 2]])
    def test_bad_partitions(self, xs):
        with pytest.raises(BadPartition):
            darboux_bounds(Z_EXAMPLE, lambda x, y: x, xs=xs)
