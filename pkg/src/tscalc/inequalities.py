"""Hermite–Hadamard chains for diamond-alpha integrals.

Each ``verify_*`` function computes every member of one inequality chain,
compares neighbours with a relative tolerance and returns a
:class:`ChainReport`.  The convexity hypothesis is checked first unless
``check_hypothesis=False``; a failed check raises :class:`HypothesisFailed`
carrying a report with no members.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .calculus import check_alpha, diamond_alpha_integral, moment_exact, t_alpha
from .convexity import check_convex_1d, check_convex_coordinates
from .errors import BadWindow, HypothesisFailed, MidpointNotInScale, TimeScaleError
from .quadrature import DEFAULT_CONFIG, QuadratureConfig
from .rectangle import RectangleDomain, double_integral
from .timescale import TimeScaleSet, integers, interval

DINU_1D = "DINU_1D"
MR1 = "MR1"
MR2 = "MR2"
MR3 = "MR3"
DRAGOMIR_R = "DRAGOMIR_R"
PAPER_EXAMPLE = "PAPER_EXAMPLE"


def verdict_tol(left: float, right: float) -> float:
    return max(1e-9, 1e-8 * max(abs(left), abs(right)))


@dataclass(frozen=True)
class Verdict:
    left: str
    right: str
    satisfied: bool
    slack: float


@dataclass(frozen=True)
class Hypothesis:
    checked: bool
    passed: bool | None = None
    witness: tuple | None = None


@dataclass
class ChainReport:
    chain_id: str
    alpha: float
    members: list = field(default_factory=list)          # [(label, value)]
    verdicts: list = field(default_factory=list)         # [Verdict]
    t_alpha: float | None = None
    s_alpha: float | None = None
    coefficients: tuple | None = None                    # (A1, A2, A3, A4)
    tolerance: float = 0.0
    hypothesis: Hypothesis = field(default_factory=lambda: Hypothesis(False))
    function: str | None = None
    notes: list = field(default_factory=list)
    error: str | None = None

    @property
    def ok(self) -> bool:
        if self.error is not None or self.hypothesis.passed is False:
            return False
        return all(v.satisfied for v in self.verdicts)

    def value(self, label: str) -> float:
        for name, v in self.members:
            if name == label:
                return v
        raise KeyError(label)


def _judge(report: ChainReport):
    """Fill verdicts for each consecutive member pair."""
    report.members = [(label, float(value)) for label, value in report.members]
    verdicts = []
    worst_tol = 0.0
    for (ln, lv), (rn, rv) in zip(report.members, report.members[1:]):
        tol = verdict_tol(lv, rv)
        worst_tol = max(worst_tol, tol)
        verdicts.append(Verdict(ln, rn, lv <= rv + tol, rv - lv))
    report.verdicts = verdicts
    report.tolerance = worst_tol
    return report


def _label(f) -> str | None:
    return getattr(f, "label", None)


def _hypothesis_1d(chain, T, f, a, b, alpha, check):
    if not check:
        return Hypothesis(False)
    v = check_convex_1d(T, f, a, b)
    if not v.convex:
        report = ChainReport(chain, alpha, function=_label(f),
                             hypothesis=Hypothesis(True, False, v.witness))
        raise HypothesisFailed(f"{chain}: f is not convex on the window (witness {v.witness})",
                               report, v.witness)
    return Hypothesis(True, True)


def _hypothesis_2d(chain, R, f, alpha, check):
    if not check:
        return Hypothesis(False)
    vx, vy = check_convex_coordinates(R, f)
    if vx.convex and vy.convex:
        return Hypothesis(True, True)
    witness = vx.witness if not vx.convex else vy.witness
    which = "x-sections f(., y)" if not vx.convex else "y-sections f(x, .)"
    report = ChainReport(chain, alpha, function=_label(f),
                         hypothesis=Hypothesis(True, False, witness))
    raise HypothesisFailed(f"{chain}: {which} are not convex (witness {witness})", report, witness)


def _centroid(T: TimeScaleSet, lo: float, hi: float, alpha: float, cfg) -> Fraction | float:
    exact = moment_exact(T, lo, hi, alpha)
    return exact if exact is not None else t_alpha(T, lo, hi, alpha, cfg)


def s_alpha(T2: TimeScaleSet, c: float, d: float, alpha, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Centroid of the second window; same computation as t_alpha."""
    return t_alpha(T2, c, d, alpha, cfg)


def corner_coefficients(a, b, c, d, t, s) -> tuple:
    """(A1, A2, A3, A4) weighting f(a,c), f(a,d), f(b,c), f(b,d).

    Exact when fed Fractions.
    """
    if isinstance(t, Fraction) or isinstance(s, Fraction):
        a, b, c, d = (Fraction(v) for v in (a, b, c, d))
        t, s = Fraction(t), Fraction(s)
    left_a = (b - t) / (b - a)
    left_b = (t - a) / (b - a)
    low_c = (d - s) / (d - c)
    low_d = (s - c) / (d - c)
    return (left_a + low_c, left_a + low_d, left_b + low_c, left_b + low_d)


# chains ---------------------------------------------------------------------

def verify_dinu_1d(T: TimeScaleSet, f, a: float, b: float, alpha,
                   cfg: QuadratureConfig = DEFAULT_CONFIG, check_hypothesis: bool = True) -> ChainReport:
    """f(t_α) ≤ mean ◇α integral ≤ centroid-weighted endpoint average."""
    alpha = check_alpha(alpha)
    a, b = T.snap(a), T.snap(b)
    if not a < b:
        raise BadWindow(f"need a < b, got [{a}, {b}]")
    hyp = _hypothesis_1d(DINU_1D, T, f, a, b, alpha, check_hypothesis)
    t = float(_centroid(T, a, b, alpha, cfg))
    mean = diamond_alpha_integral(T, f, a, b, alpha, cfg) / (b - a)
    upper = (b - t) / (b - a) * f(a) + (t - a) / (b - a) * f(b)
    report = ChainReport(
        DINU_1D, alpha,
        members=[("f(t_alpha)", f(t)), ("mean integral", mean), ("endpoint combination", upper)],
        t_alpha=t, hypothesis=hyp, function=_label(f),
    )
    return _judge(report)


def _mean_x(R, g, alpha, cfg):
    return diamond_alpha_integral(R.t1, g, R.a, R.b, alpha, cfg) / (R.b - R.a)


def _mean_y(R, g, alpha, cfg):
    return diamond_alpha_integral(R.t2, g, R.c, R.d, alpha, cfg) / (R.d - R.c)


def _centroids(R: RectangleDomain, alpha, cfg):
    t = _centroid(R.t1, R.a, R.b, alpha, cfg)
    s = _centroid(R.t2, R.c, R.d, alpha, cfg)
    return t, s


def _mr1_members(R, f, alpha, cfg, t, s):
    a, b, c, d = R.a, R.b, R.c, R.d
    side_means = 0.5 * (_mean_x(R, lambda x: f(x, s), alpha, cfg)
                        + _mean_y(R, lambda y: f(t, y), alpha, cfg))
    double_mean = double_integral(R, f, alpha, cfg) / R.area
    scale = 1.0 / (2.0 * R.area)
    bx = diamond_alpha_integral(R.t1, lambda x: (d - s) * f(x, c) + (s - c) * f(x, d), a, b, alpha, cfg)
    by = diamond_alpha_integral(R.t2, lambda y: (b - t) * f(a, y) + (t - a) * f(b, y), c, d, alpha, cfg)
    boundary = scale * bx + scale * by
    return side_means, double_mean, boundary


def verify_mr1(R: RectangleDomain, f, alpha, cfg: QuadratureConfig = DEFAULT_CONFIG,
               check_hypothesis: bool = True) -> ChainReport:
    """Section means ≤ double-integral mean ≤ centroid-weighted boundary means."""
    alpha = check_alpha(alpha)
    hyp = _hypothesis_2d(MR1, R, f, alpha, check_hypothesis)
    t, s = (float(v) for v in _centroids(R, alpha, cfg))
    side, dbl, boundary = _mr1_members(R, f, alpha, cfg, t, s)
    report = ChainReport(
        MR1, alpha,
        members=[("mean of centroid sections", side), ("mean double integral", dbl),
                 ("weighted boundary means", boundary)],
        t_alpha=t, s_alpha=s, hypothesis=hyp, function=_label(f),
    )
    return _judge(report)


def _midpoints(R: RectangleDomain):
    mx, my = 0.5 * (R.a + R.b), 0.5 * (R.c + R.d)
    if mx not in R.t1:
        raise MidpointNotInScale("the first time scale", mx)
    if my not in R.t2:
        raise MidpointNotInScale("the second time scale", my)
    return R.t1.snap(mx), R.t2.snap(my)


def _mr2_members(R, f, alpha, cfg, t, s, mx, my):
    lhs = f(mx, s) + f(t, my)
    rhs = _mean_x(R, lambda x: f(x, my), alpha, cfg) + _mean_y(R, lambda y: f(mx, y), alpha, cfg)
    return lhs, rhs


def verify_mr2(R: RectangleDomain, f, alpha, cfg: QuadratureConfig = DEFAULT_CONFIG,
               check_hypothesis: bool = True) -> ChainReport:
    """f((a+b)/2, s_α) + f(t_α, (c+d)/2) ≤ sum of the two mid-line means."""
    alpha = check_alpha(alpha)
    mx, my = _midpoints(R)
    hyp = _hypothesis_2d(MR2, R, f, alpha, check_hypothesis)
    t, s = (float(v) for v in _centroids(R, alpha, cfg))
    lhs, rhs = _mr2_members(R, f, alpha, cfg, t, s, mx, my)
    report = ChainReport(
        MR2, alpha,
        members=[("midpoint-centroid values", lhs), ("mid-line means", rhs)],
        t_alpha=t, s_alpha=s, hypothesis=hyp, function=_label(f),
    )
    return _judge(report)


def _mr3_members(R, f, alpha, cfg, t, s, coeffs):
    a, b, c, d = R.a, R.b, R.c, R.d
    lhs = (_mean_x(R, lambda x: f(x, c) + f(x, d), alpha, cfg)
           + _mean_y(R, lambda y: f(a, y) + f(b, y), alpha, cfg))
    A1, A2, A3, A4 = coeffs
    rhs = A1 * f(a, c) + A2 * f(a, d) + A3 * f(b, c) + A4 * f(b, d)
    return lhs, rhs


def verify_mr3(R: RectangleDomain, f, alpha, cfg: QuadratureConfig = DEFAULT_CONFIG,
               check_hypothesis: bool = True) -> ChainReport:
    """Boundary means ≤ A1 f(a,c) + A2 f(a,d) + A3 f(b,c) + A4 f(b,d).

    On discrete windows the centroids and coefficients are computed in
    rational arithmetic before conversion.
    """
    alpha = check_alpha(alpha)
    hyp = _hypothesis_2d(MR3, R, f, alpha, check_hypothesis)
    t, s = _centroids(R, alpha, cfg)
    coeffs = tuple(float(v) for v in corner_coefficients(R.a, R.b, R.c, R.d, t, s))
    lhs, rhs = _mr3_members(R, f, alpha, cfg, float(t), float(s), coeffs)
    report = ChainReport(
        MR3, alpha,
        members=[("boundary means", lhs), ("corner combination", rhs)],
        t_alpha=float(t), s_alpha=float(s), coefficients=coeffs,
        hypothesis=hyp, function=_label(f),
    )
    return _judge(report)


EXAMPLE_WINDOW = (0, 2, 1, 3)


def example_rectangle() -> RectangleDomain:
    return RectangleDomain(integers(0, 2), integers(1, 3), *EXAMPLE_WINDOW)


def verify_paper_example(f, cfg: QuadratureConfig = DEFAULT_CONFIG,
                         check_hypothesis: bool = True) -> ChainReport:
    """ℤ×ℤ on [0,2]×[1,3]: f(0,2)+f(1,1)+f(1,3)+f(2,2) ≤ f(0,1)+f(0,3)+f(2,1)+f(2,3).

    The inequality is evaluated literally and also through the α = 1 boundary
    chain; the two derivations are cross-checked and any disagreement is
    recorded in ``notes`` and ``error``.
    """
    R = example_rectangle()
    hyp = _hypothesis_2d(PAPER_EXAMPLE, R, f, 1.0, check_hypothesis)
    lhs = float(f(0, 2) + f(1, 1) + f(1, 3) + f(2, 2))
    rhs = float(f(0, 1) + f(0, 3) + f(2, 1) + f(2, 3))
    mr3 = verify_mr3(R, f, 1.0, cfg, check_hypothesis=False)
    mr3_lhs, mr3_rhs = mr3.members[0][1], mr3.members[1][1]
    expect_lhs = f(0, 1) + 0.5 * (f(0, 2) + f(0, 3) + f(1, 1) + f(1, 3) + f(2, 1) + f(2, 2))
    expect_rhs = 1.5 * f(0, 1) + f(0, 3) + f(2, 1) + 0.5 * f(2, 3)
    report = ChainReport(
        PAPER_EXAMPLE, 1.0,
        members=[("f(0,2)+f(1,1)+f(1,3)+f(2,2)", lhs), ("f(0,1)+f(0,3)+f(2,1)+f(2,3)", rhs)],
        t_alpha=mr3.t_alpha, s_alpha=mr3.s_alpha, coefficients=mr3.coefficients,
        hypothesis=hyp, function=_label(f),
    )
    _judge(report)
    mismatches = []
    for name, got, want in (("boundary means", mr3_lhs, expect_lhs),
                            ("corner combination", mr3_rhs, expect_rhs)):
        if abs(got - want) > verdict_tol(got, want):
            mismatches.append(f"{name}: chain gives {got!r}, closed form gives {want!r}")
    # 2*(mr3_rhs - mr3_lhs) is exactly rhs - lhs
    twice_gap = 2.0 * (mr3_rhs - mr3_lhs)
    if abs(twice_gap - (rhs - lhs)) > verdict_tol(twice_gap, rhs - lhs):
        mismatches.append(f"doubled boundary gap {twice_gap!r} differs from literal gap {rhs - lhs!r}")
    if mismatches:
        report.notes.extend(mismatches)
        report.error = "derivations disagree"
    else:
        report.notes.append("literal inequality agrees with the alpha = 1 boundary chain")
    return report


def verify_dragomir_r(f, a: float, b: float, c: float, d: float,
                      cfg: QuadratureConfig = DEFAULT_CONFIG, check_hypothesis: bool = True) -> ChainReport:
    """Five-member chain on a real rectangle, spliced from the three α = ½ chains."""
    if not (a < b and c < d):
        raise BadWindow(f"need a < b and c < d, got [{a},{b}]x[{c},{d}]")
    R = RectangleDomain(interval(a, b), interval(c, d), a, b, c, d)
    hyp = _hypothesis_2d(DRAGOMIR_R, R, f, 0.5, check_hypothesis)
    mr1 = verify_mr1(R, f, 0.5, cfg, check_hypothesis=False)
    mr2 = verify_mr2(R, f, 0.5, cfg, check_hypothesis=False)
    mr3 = verify_mr3(R, f, 0.5, cfg, check_hypothesis=False)
    centre = 0.5 * mr2.members[0][1]
    report = ChainReport(
        DRAGOMIR_R, 0.5,
        members=[
            ("centre value", centre),
            ("mean of mid-line integrals", mr1.members[0][1]),
            ("mean double integral", mr1.members[1][1]),
            ("mean of boundary integrals", mr1.members[2][1]),
            ("corner average", 0.25 * mr3.members[1][1]),
        ],
        t_alpha=mr1.t_alpha, s_alpha=mr1.s_alpha, coefficients=mr3.coefficients,
        hypothesis=hyp, function=_label(f),
    )
    return _judge(report)


def alpha_sweep(R: RectangleDomain, f, alphas, cfg: QuadratureConfig = DEFAULT_CONFIG,
                check_hypothesis: bool = True) -> list:
    """``[(mr1, mr2, mr3), ...]`` in the order of ``alphas``; errors are embedded."""
    out = []
    for alpha in alphas:
        out.append(tuple(
            run_chain(chain_id, alpha, _label(f),
                      lambda v=verify, al=alpha: v(R, f, al, cfg, check_hypothesis=check_hypothesis))
            for chain_id, verify in ((MR1, verify_mr1), (MR2, verify_mr2), (MR3, verify_mr3))
        ))
    return out


def run_chain(chain_id: str, alpha, label, compute) -> ChainReport:
    """Run ``compute()`` and turn any tscalc error into an embedded report."""
    try:
        return compute()
    except HypothesisFailed as exc:
        exc.report.notes.append(str(exc))
        return exc.report
    except TimeScaleError as exc:
        return ChainReport(chain_id, float(alpha), function=label,
                           error=f"{type(exc).__name__}: {exc}")
