"""Sampled convexity checks in three-point chord form.

Convexity is tested only at members of the time scale (every scattered
point, plus a uniform sample of each dense segment) because convex
combinations of scale points need not belong to the scale.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadWindow
from .timescale import TimeScaleSet

SAMPLES_PER_SEGMENT = 65
# the all-triples scan is chunked over the first index to bound memory
_CHUNK = 64


@dataclass(frozen=True)
class ConvexityVerdict:
    convex: bool
    worst_violation: float
    tolerance: float
    witness: tuple | None = None


def default_tol(values) -> float:
    scale = float(np.max(np.abs(values))) if len(values) else 0.0
    return 1e-9 * (1.0 + scale)


def _chord_scan(xs: np.ndarray, fs: np.ndarray):
    """Worst chord violation over all triples i<j<k, plus the per-chunk
    violation arrays (indexed [i - start, j, k]) for witness lookup."""
    n = len(xs)
    worst = 0.0
    chunks = []
    j = np.arange(n)[:, None]
    k = np.arange(n)[None, :]
    for start in range(0, max(n - 2, 0), _CHUNK):
        i = np.arange(start, min(start + _CHUNK, n - 2))[:, None, None]
        x, y, z = xs[i], xs[j][None], xs[k][None]
        fx, fy, fz = fs[i], fs[j][None], fs[k][None]
        mask = (i < j[None]) & (j < k)[None]
        with np.errstate(invalid="ignore", divide="ignore"):
            chord = ((z - y) * fx + (y - x) * fz) / (z - x)
        viol = np.where(mask, fy - chord, -np.inf)
        worst = max(worst, float(np.max(viol)))
        chunks.append((viol, start))
    return worst, chunks


def chord_violations(xs, fs, tol):
    """Return (worst violation >= 0, first violating triple of x values or None)."""
    xs = np.asarray(xs, dtype=float)
    fs = np.asarray(fs, dtype=float)
    worst, chunks = _chord_scan(xs, fs)
    witness = None
    if worst > tol:
        for viol, start in chunks:
            hits = np.argwhere(viol > tol)
            if len(hits):
                a, b, c = hits[0]
                witness = (float(xs[start + a]), float(xs[b]), float(xs[c]))
                break
    return max(worst, 0.0), witness


def check_convex_1d(T: TimeScaleSet, f, a: float, b: float, tol: float | None = None) -> ConvexityVerdict:
    """Chord-form convexity of ``f`` over the members of [a, b]."""
    a, b = T.snap(a), T.snap(b)
    if not a < b:
        raise BadWindow(f"convexity check needs a < b, got [{a}, {b}]")
    xs = T.sample(a, b, SAMPLES_PER_SEGMENT)
    fs = [f(x) for x in xs]
    if tol is None:
        tol = default_tol(fs)
    worst, witness = chord_violations(xs, fs, tol)
    return ConvexityVerdict(worst <= tol, worst, tol, witness)


def check_convex_coordinates(R, f, tol: float | None = None):
    """Convexity of every section f(., y) and f(x, .) over the sampled rectangle.

    Returns ``(x_sections, y_sections)``.  Witnesses are ``(fixed, triple)``
    where ``fixed`` is the coordinate held constant.  Passing both does not
    imply joint convexity: f(x, y) = x*y passes.
    """
    xs = R.t1.sample(R.a, R.b, SAMPLES_PER_SEGMENT)
    ys = R.t2.sample(R.c, R.d, SAMPLES_PER_SEGMENT)
    grid = np.array([[f(x, y) for y in ys] for x in xs], dtype=float)
    if tol is None:
        tol = default_tol(grid.ravel())

    def scan(points, columns, fixed):
        worst, witness = 0.0, None
        for value, col in zip(fixed, columns):
            w, wit = chord_violations(points, col, tol)
            if w > worst:
                worst = w
            if wit is not None and witness is None:
                witness = (value, wit)
        return ConvexityVerdict(worst <= tol, worst, tol, witness)

    x_verdict = scan(xs, grid.T, ys)   # sections f(., y), one per y
    y_verdict = scan(ys, grid, xs)     # sections f(x, .), one per x
    return x_verdict, y_verdict
