"""Delta, nabla and diamond-alpha derivatives and integrals on one time scale.

Integrals are evaluated by splitting the window into its atoms: every
scattered point contributes ``f(t) * mu(t)`` (delta) or ``f(t) * nu(t)``
(nabla) exactly, and every dense segment contributes its Riemann integral
computed by adaptive Gauss–Kronrod quadrature.  The two calculi share the
dense part, so the diamond-alpha integral is the affine combination of two
numbers that were computed once.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import BadParam, BadWindow, NumericFailure
from .quadrature import DEFAULT_CONFIG, QuadratureConfig, integrate
from .timescale import Interval, Point, TimeScaleSet, require_k, require_sub_k

# Richardson extrapolation for dense-point derivatives.
DERIV_REL_TOL = 1e-7
_RICH_STEPS = 12


@dataclass(frozen=True)
class RealFunction1D:
    fn: Callable[[float], float]
    label: str = field(default="f")

    def __call__(self, t):
        return self.fn(t)


def check_alpha(alpha) -> float:
    a = float(alpha)
    if not 0.0 <= a <= 1.0:
        raise BadParam(f"alpha must lie in [0, 1], got {alpha!r}")
    return a


# derivatives ----------------------------------------------------------------

def _one_sided_limit(f, t: float, direction: float, reach: float) -> float:
    """Limit of (f(t + direction*h) - f(t)) / (direction*h) as h -> 0+.

    A Neville tableau in h (halving each step) removes the O(h^k) terms; the
    estimate is accepted once three consecutive diagonal entries agree to
    ``DERIV_REL_TOL``.
    """
    h = min(0.125, 0.5 * reach)
    if h <= 0:
        raise NumericFailure(f"no room to take a one-sided limit at {t!r}")
    ft = f(t)
    table: list[list[float]] = []
    diag: list[float] = []
    for i in range(_RICH_STEPS):
        s = t + direction * h
        row = [(f(s) - ft) / (s - t)]
        for j in range(1, i + 1):
            factor = 2.0 ** j
            row.append(row[j - 1] + (row[j - 1] - table[i - 1][j - 1]) / (factor - 1.0))
        table.append(row)
        diag.append(row[-1])
        if len(diag) >= 3:
            d0, d1, d2 = diag[-3:]
            scale = max(1.0, abs(d2))
            if abs(d2 - d1) <= DERIV_REL_TOL * scale and abs(d1 - d0) <= DERIV_REL_TOL * scale:
                return d2
        h *= 0.5
    raise NumericFailure(f"derivative estimate at {t!r} did not stabilize")


def _room(T: TimeScaleSet, t: float, direction: float) -> float:
    """Length of dense segment starting at t in the given direction."""
    i, t = T.locate(t)
    p = T.pieces[i]
    if isinstance(p, Point):
        return 0.0
    return (p.hi - t) if direction > 0 else (t - p.lo)


def delta_derivative(T: TimeScaleSet, f, t: float) -> float:
    t = require_k(T, t)
    s = T.sigma(t)
    if s > t:
        return (f(s) - f(t)) / (s - t)
    room = _room(T, t, +1.0)
    if room > 0:
        return _one_sided_limit(f, t, +1.0, room)
    # left-dense maximum: only the left neighbourhood is available
    return _one_sided_limit(f, t, -1.0, _room(T, t, -1.0))


def nabla_derivative(T: TimeScaleSet, f, t: float) -> float:
    t = require_sub_k(T, t)
    r = T.rho(t)
    if r < t:
        return (f(t) - f(r)) / (t - r)
    room = _room(T, t, -1.0)
    if room > 0:
        return _one_sided_limit(f, t, -1.0, room)
    return _one_sided_limit(f, t, +1.0, _room(T, t, +1.0))


def diamond_alpha_derivative(T: TimeScaleSet, f, t: float, alpha) -> float:
    alpha = check_alpha(alpha)
    t = require_sub_k(T, require_k(T, t))
    d = delta_derivative(T, f, t)
    n = nabla_derivative(T, f, t)
    return alpha * d + (1.0 - alpha) * n


# integrals ------------------------------------------------------------------

def integral_parts(T: TimeScaleSet, f, a: float, b: float, cfg: QuadratureConfig = DEFAULT_CONFIG):
    """``(dense, delta_sum, nabla_sum)`` over [a, b] with a <= b.

    ``f`` may return arrays; the three parts then have that shape.
    """
    a, b = T.snap(a), T.snap(b)
    if a > b:
        raise BadWindow(f"integral_parts needs a <= b, got [{a}, {b}]")
    dense = 0.0
    delta_sum = 0.0
    nabla_sum = 0.0
    if a == b:
        return dense, delta_sum, nabla_sum
    for piece in T.atoms_in(a, b):
        if isinstance(piece, Interval):
            dense = dense + integrate(f, piece.lo, piece.hi, cfg)
            ends = (piece.lo, piece.hi)
        else:
            ends = (piece.value,)
        for t in ends:
            if t < b:
                mu = T.sigma(t) - t
                if mu > 0:
                    delta_sum = delta_sum + f(t) * mu
            if t > a:
                nu = t - T.rho(t)
                if nu > 0:
                    nabla_sum = nabla_sum + f(t) * nu
    return dense, delta_sum, nabla_sum


def _oriented(T, f, a, b, cfg, pick):
    a, b = T.snap(a), T.snap(b)
    if a == b:
        return 0.0
    if a > b:
        return -_oriented(T, f, b, a, cfg, pick)
    return pick(*integral_parts(T, f, a, b, cfg))


def delta_integral(T: TimeScaleSet, f, a: float, b: float, cfg: QuadratureConfig = DEFAULT_CONFIG):
    return _oriented(T, f, a, b, cfg, lambda dense, ds, ns: dense + ds)


def nabla_integral(T: TimeScaleSet, f, a: float, b: float, cfg: QuadratureConfig = DEFAULT_CONFIG):
    return _oriented(T, f, a, b, cfg, lambda dense, ds, ns: dense + ns)


def combine(alpha: float, delta_value, nabla_value):
    """alpha * delta + (1 - alpha) * nabla; exact at alpha in {0, 1}."""
    if alpha == 1.0:
        return delta_value
    if alpha == 0.0:
        return nabla_value
    return alpha * delta_value + (1.0 - alpha) * nabla_value


def delta_nabla_integrals(T: TimeScaleSet, f, a: float, b: float, cfg: QuadratureConfig = DEFAULT_CONFIG):
    """Both oriented integrals from a single pass over the window."""
    a, b = T.snap(a), T.snap(b)
    if a == b:
        return 0.0, 0.0
    sign = 1.0
    if a > b:
        a, b, sign = b, a, -1.0
    dense, ds, ns = integral_parts(T, f, a, b, cfg)
    d, n = dense + ds, dense + ns
    if sign < 0:
        return -d, -n
    return d, n


def diamond_alpha_integral(T: TimeScaleSet, f, a: float, b: float, alpha,
                           cfg: QuadratureConfig = DEFAULT_CONFIG):
    alpha = check_alpha(alpha)
    d, n = delta_nabla_integrals(T, f, a, b, cfg)
    return combine(alpha, d, n)


# centroid -------------------------------------------------------------------

def moment_exact(T: TimeScaleSet, a: float, b: float, alpha) -> Fraction | None:
    """Rational value of the normalized first moment on a purely discrete window.

    Returns None when [a, b] contains a dense segment.
    """
    a, b = T.snap(a), T.snap(b)
    if not a < b:
        raise BadWindow(f"centroid needs a < b, got [{a}, {b}]")
    if not T.window_is_discrete(a, b):
        return None
    fa = Fraction(check_alpha(alpha))
    delta_sum = Fraction(0)
    nabla_sum = Fraction(0)
    for p in T.atoms_in(a, b):
        t = Fraction(p.value)
        if p.value < b:
            delta_sum += t * (Fraction(T.sigma(p.value)) - t)
        if p.value > a:
            nabla_sum += t * (t - Fraction(T.rho(p.value)))
    return (fa * delta_sum + (1 - fa) * nabla_sum) / (Fraction(b) - Fraction(a))


def t_alpha(T: TimeScaleSet, a: float, b: float, alpha, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """(1/(b-a)) * ∫_a^b t ◇α t, computed exactly when the window is discrete."""
    exact = moment_exact(T, a, b, alpha)
    if exact is not None:
        return float(exact)
    a, b = T.snap(a), T.snap(b)
    value = diamond_alpha_integral(T, lambda t: t, a, b, alpha, cfg) / (b - a)
    # quadrature round-off must not push the centroid outside the window
    return min(max(value, a), b)

