"""Exception hierarchy shared by every tscalc module."""

from __future__ import annotations


class TimeScaleError(Exception):
    """Base class for all errors raised by tscalc."""


class EmptyScale(TimeScaleError):
    pass


class BadParam(TimeScaleError, ValueError):
    pass


class NotInScale(TimeScaleError, ValueError):
    def __init__(self, t, message=None):
        self.t = t
        super().__init__(message or f"{t!r} is not a member of the time scale")


class NotInKSet(NotInScale):
    pass


class BadWindow(TimeScaleError, ValueError):
    pass


class NumericFailure(TimeScaleError, ArithmeticError):
    pass


class BadPartition(TimeScaleError, ValueError):
    pass


class MidpointNotInScale(TimeScaleError):
    def __init__(self, which: str, midpoint: float):
        self.which = which
        self.midpoint = midpoint
        super().__init__(f"midpoint {midpoint!r} is not a member of {which}")


class HypothesisFailed(TimeScaleError):
    """Convexity hypothesis rejected; ``report`` holds the downgraded chain."""

    def __init__(self, message: str, report=None, witness=None):
        self.report = report
        self.witness = witness
        super().__init__(message)


class ConfigError(TimeScaleError):
    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")
