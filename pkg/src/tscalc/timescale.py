"""Bounded time scales as finite unions of closed intervals and points.

A time scale here is a nonempty closed subset of the reals described by
finitely many disjoint pieces.  Every piece is either a :class:`Point` or a
nondegenerate :class:`Interval`; the constructor sorts and merges them into a
unique canonical form so that the jump operators can be computed exactly.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .errors import BadParam, BadWindow, EmptyScale, NotInKSet, NotInScale

REL_MEMBER_TOL = 1e-12


def member_tol(t: float) -> float:
    """Distance within which ``t`` is considered to touch the set."""
    return REL_MEMBER_TOL * max(1.0, abs(t))


@dataclass(frozen=True)
class Point:
    value: float

    @property
    def lo(self) -> float:
        return self.value

    @property
    def hi(self) -> float:
        return self.value


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise BadParam(f"Interval needs lo < hi, got [{self.lo}, {self.hi}]")


Piece = Union[Point, Interval]


@dataclass(frozen=True)
class PointClass:
    """Left/right classification of a member.

    Each side is ``"scattered"``, ``"dense"`` or ``"boundary"``; the last one
    covers the minimum (left side) and maximum (right side), which are
    neither scattered nor dense under the usual conventions.
    """

    left: str
    right: str

    @property
    def right_scattered(self) -> bool:
        return self.right == "scattered"

    @property
    def left_scattered(self) -> bool:
        return self.left == "scattered"

    @property
    def right_dense(self) -> bool:
        return self.right == "dense"

    @property
    def left_dense(self) -> bool:
        return self.left == "dense"

    @property
    def isolated(self) -> bool:
        return self.left_scattered and self.right_scattered

    @property
    def dense(self) -> bool:
        return self.left_dense and self.right_dense

    @property
    def name(self) -> str:
        if self.isolated:
            return "isolated"
        if self.dense:
            return "dense"
        return f"left-{self.left}, right-{self.right}"


def _piece(lo: float, hi: float) -> Piece:
    return Point(lo) if lo == hi else Interval(lo, hi)


class TimeScaleSet:
    """Immutable canonical bounded time scale."""

    __slots__ = ("pieces", "_los", "_his")

    def __init__(self, pieces: Iterable[Piece]):
        spans = []
        for p in pieces:
            lo, hi = float(p.lo), float(p.hi)
            if not (math.isfinite(lo) and math.isfinite(hi)):
                raise BadParam("time scale pieces must be finite")
            spans.append((lo, hi))
        if not spans:
            raise EmptyScale("time scale must be nonempty")
        spans.sort()
        merged = [list(spans[0])]
        for lo, hi in spans[1:]:
            cur = merged[-1]
            if lo - cur[1] < member_tol(cur[1]):
                cur[1] = max(cur[1], hi)
            else:
                merged.append([lo, hi])
        self.pieces: tuple[Piece, ...] = tuple(_piece(lo, hi) for lo, hi in merged)
        self._los = [p.lo for p in self.pieces]
        self._his = [p.hi for p in self.pieces]

    @property
    def min(self) -> float:
        return self._los[0]

    @property
    def max(self) -> float:
        return self._his[-1]

    @property
    def is_discrete(self) -> bool:
        return all(isinstance(p, Point) for p in self.pieces)

    def __eq__(self, other):
        return isinstance(other, TimeScaleSet) and self.pieces == other.pieces

    def __hash__(self):
        return hash(self.pieces)

    def __repr__(self):
        parts = []
        for p in self.pieces:
            parts.append(f"{{{p.value!r}}}" if isinstance(p, Point) else f"[{p.lo!r}, {p.hi!r}]")
        return "TimeScaleSet(" + " ∪ ".join(parts) + ")"

    def __contains__(self, t) -> bool:
        return self._locate(float(t)) is not None

    def _locate(self, t: float):
        """Return ``(piece index, snapped value)`` or None if t is not a member."""
        eps = member_tol(t)
        i = bisect_right(self._los, t + eps) - 1
        if i < 0:
            return None
        lo, hi = self._los[i], self._his[i]
        if t > hi + eps:
            return None
        if abs(t - lo) <= eps:
            return i, lo
        if abs(t - hi) <= eps:
            return i, hi
        return i, t

    def locate(self, t: float) -> tuple[int, float]:
        hit = self._locate(float(t))
        if hit is None:
            raise NotInScale(t)
        return hit

    def snap(self, t: float) -> float:
        """Canonical member value for ``t`` (absorbs round-off in endpoints)."""
        return self.locate(t)[1]

    def sigma(self, t: float) -> float:
        i, t = self.locate(t)
        if t < self._his[i]:
            return t
        if i + 1 < len(self.pieces):
            return self._los[i + 1]
        return t

    def rho(self, t: float) -> float:
        i, t = self.locate(t)
        if t > self._los[i]:
            return t
        if i > 0:
            return self._his[i - 1]
        return t

    def graininess(self, t: float) -> tuple[float, float]:
        t = self.snap(t)
        return self.sigma(t) - t, t - self.rho(t)

    def classify(self, t: float) -> PointClass:
        t = self.snap(t)
        if self.sigma(t) > t:
            right = "scattered"
        elif t < self.max:
            right = "dense"
        else:
            right = "boundary"
        if self.rho(t) < t:
            left = "scattered"
        elif t > self.min:
            left = "dense"
        else:
            left = "boundary"
        return PointClass(left, right)

    def restrict_k(self) -> "TimeScaleSet":
        """𝕋^k: drop a left-scattered maximum."""
        if self.rho(self.max) < self.max:
            return TimeScaleSet(self.pieces[:-1]) if len(self.pieces) > 1 else _empty()
        return self

    def restrict_sub_k(self) -> "TimeScaleSet":
        """𝕋_k: drop a right-scattered minimum."""
        if self.sigma(self.min) > self.min:
            return TimeScaleSet(self.pieces[1:]) if len(self.pieces) > 1 else _empty()
        return self

    def restrict_kk(self) -> "TimeScaleSet":
        return self.restrict_k().restrict_sub_k()

    def atoms_in(self, a: float, b: float) -> list[Piece]:
        """Pieces clipped to the window [a, b]; endpoints must be members."""
        a, b = self.snap(a), self.snap(b)
        if a > b:
            raise BadWindow(f"window [{a}, {b}] is reversed")
        i0 = self.locate(a)[0]
        i1 = self.locate(b)[0]
        out = []
        for i in range(i0, i1 + 1):
            lo = max(self._los[i], a)
            hi = min(self._his[i], b)
            out.append(_piece(lo, hi))
        return out

    def sample(self, a: float, b: float, per_segment: int = 65) -> list[float]:
        """Ordered members of [a, b]: every point plus a uniform grid per segment."""
        xs: list[float] = []
        for p in self.atoms_in(a, b):
            if isinstance(p, Point):
                xs.append(p.value)
            else:
                n = per_segment - 1
                step = (p.hi - p.lo) / n
                xs.extend(p.lo + k * step for k in range(n))
                xs.append(p.hi)
        return xs

    def window_is_discrete(self, a: float, b: float) -> bool:
        return all(isinstance(p, Point) for p in self.atoms_in(a, b))


def _empty():
    raise EmptyScale("restriction removes the only point of the time scale")


def require_member(T: TimeScaleSet, t: float) -> float:
    return T.snap(t)


def require_k(T: TimeScaleSet, t: float) -> float:
    t = T.snap(t)
    if t == T.max and T.rho(t) < t:
        raise NotInKSet(t, f"{t!r} is a left-scattered maximum, outside T^k")
    return t


def require_sub_k(T: TimeScaleSet, t: float) -> float:
    t = T.snap(t)
    if t == T.min and T.sigma(t) > t:
        raise NotInKSet(t, f"{t!r} is a right-scattered minimum, outside T_k")
    return t


# constructors ---------------------------------------------------------------

def integers(lo: int, hi: int) -> TimeScaleSet:
    lo, hi = math.ceil(lo), math.floor(hi)
    if lo > hi:
        raise EmptyScale(f"no integers in [{lo}, {hi}]")
    return TimeScaleSet(Point(float(k)) for k in range(lo, hi + 1))


def h_grid(h: float, lo: float, hi: float) -> TimeScaleSet:
    """hℤ ∩ [lo, hi]; members are stored as ``k * h``."""
    if not h > 0:
        raise BadParam(f"grid step must be positive, got {h}")
    kmin = math.ceil(lo / h - 1e-9)
    kmax = math.floor(hi / h + 1e-9)
    if kmin > kmax:
        raise EmptyScale(f"no multiples of {h} in [{lo}, {hi}]")
    return TimeScaleSet(Point(k * h) for k in range(kmin, kmax + 1))


def q_scale(q: float, kmin: int, kmax: int) -> TimeScaleSet:
    """{q^k : kmin <= k <= kmax}."""
    if not q > 1:
        raise BadParam(f"q-scale needs q > 1, got {q}")
    if kmin > kmax:
        raise EmptyScale(f"empty exponent range [{kmin}, {kmax}]")
    return TimeScaleSet(Point(float(q) ** k) for k in range(kmin, kmax + 1))


def interval(lo: float, hi: float) -> TimeScaleSet:
    if lo > hi:
        raise EmptyScale(f"interval [{lo}, {hi}] is empty")
    return TimeScaleSet([_piece(float(lo), float(hi))])


def points(values: Sequence[float]) -> TimeScaleSet:
    return TimeScaleSet(Point(float(v)) for v in values)


def union(*scales: TimeScaleSet) -> TimeScaleSet:
    return TimeScaleSet(p for s in scales for p in s.pieces)


def build_timescale(spec) -> TimeScaleSet:
    """Build a scale from its tagged-record description (see README)."""
    if isinstance(spec, TimeScaleSet):
        return spec
    if not isinstance(spec, dict) or "kind" not in spec:
        raise BadParam(f"scale spec must be a mapping with a 'kind', got {spec!r}")
    kind = spec["kind"]
    try:
        if kind == "integers":
            return integers(int(spec["lo"]), int(spec["hi"]))
        if kind == "h_grid":
            return h_grid(float(spec["h"]), float(spec["lo"]), float(spec["hi"]))
        if kind == "q_scale":
            return q_scale(float(spec["q"]), int(spec["kmin"]), int(spec["kmax"]))
        if kind == "interval":
            return interval(float(spec["lo"]), float(spec["hi"]))
        if kind == "union":
            parts = spec["parts"]
            if not parts:
                raise EmptyScale("union of no parts")
            return union(*(build_timescale(p) for p in parts))
        if kind == "points":
            return points(spec["values"])
    except KeyError as exc:
        raise BadParam(f"scale spec of kind {kind!r} is missing field {exc}") from None
    raise BadParam(f"unknown scale kind {kind!r}")


def to_spec(T: TimeScaleSet) -> dict:
    """Serialize a scale back to a ``union`` record of its canonical pieces."""
    parts = []
    for p in T.pieces:
        if isinstance(p, Point):
            parts.append({"kind": "points", "values": [p.value]})
        else:
            parts.append({"kind": "interval", "lo": p.lo, "hi": p.hi})
    return {"kind": "union", "parts": parts}


# module-level aliases matching the operation names
def sigma(T: TimeScaleSet, t: float) -> float:
    return T.sigma(t)


def rho(T: TimeScaleSet, t: float) -> float:
    return T.rho(t)


def graininess(T: TimeScaleSet, t: float) -> tuple[float, float]:
    return T.graininess(t)


def classify(T: TimeScaleSet, t: float) -> PointClass:
    return T.classify(t)


def restrict_k(T: TimeScaleSet) -> TimeScaleSet:
    return T.restrict_k()


def restrict_sub_k(T: TimeScaleSet) -> TimeScaleSet:
    return T.restrict_sub_k()


def atoms_in(T: TimeScaleSet, a: float, b: float) -> list[Piece]:
    return T.atoms_in(a, b)
