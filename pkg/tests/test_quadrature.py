import math

import numpy as np
import pytest
from scipy import integrate as sp_integrate

from tscalc.errors import NumericFailure
from tscalc.quadrature import QuadratureConfig, integrate


@pytest.mark.parametrize("f, lo, hi", [
    (math.exp, 0.0, 1.0),
    (lambda x: x ** 7 - 3 * x, -2.0, 3.0),
    (lambda x: abs(x - 0.3), 0.0, 1.0),
    (lambda x: max(x, 1 - x), 0.0, 1.0),
    (math.sin, 0.0, 20.0),
    (lambda x: math.sqrt(x), 0.0, 2.0),
])
def test_matches_scipy(f, lo, hi):
    expected, _ = sp_integrate.quad(f, lo, hi, epsabs=1e-13, epsrel=1e-12, limit=500)
    got = integrate(f, lo, hi)
    assert got == pytest.approx(expected, rel=1e-9, abs=1e-11)


def test_orientation_and_empty():
    assert integrate(math.exp, 1.0, 1.0) == 0.0
    assert integrate(math.exp, 1.0, 0.0) == -integrate(math.exp, 0.0, 1.0)


def test_vector_integrand():
    got = integrate(lambda x: np.array([x, x * x]), 0.0, 1.0)
    np.testing.assert_allclose(got, [0.5, 1 / 3], rtol=1e-13)


def test_failure_reported():
    with pytest.raises(NumericFailure):
        integrate(lambda x: 1.0 if x > 1 / 3 else 0.0, 0.0, 1.0, QuadratureConfig(max_depth=3))
