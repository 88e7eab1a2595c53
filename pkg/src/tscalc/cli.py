"""Batch front end: ``tscalc verify --config run.json [overrides]``.

Exit status is 0 when every verdict of every report holds, 1 when some
verdict fails (or a report carries an error or a rejected hypothesis), and
2 for configuration or expression parse errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field

from . import inequalities as ineq
from .errors import ConfigError, TimeScaleError
from .expr import ExprError, compile_expr, free_variables, parse
from .quadrature import QuadratureConfig
from .rectangle import RealFunction2D, RectangleDomain
from .calculus import RealFunction1D
from .report import emit_report
from .timescale import Interval, build_timescale

log = logging.getLogger(__name__)

CHAINS_2D = ("mr1", "mr2", "mr3", "dragomir_r", "paper_example")
CHAINS = ("dinu1d",) + CHAINS_2D
DEFAULT_ALPHAS = [0.0, 0.5, 1.0]


@dataclass
class RunConfig:
    scale1: object
    window: tuple
    functions: list
    alphas: list = field(default_factory=lambda: list(DEFAULT_ALPHAS))
    scale2: object = None
    chains: list | None = None
    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig)
    output: str = "text"
    check_hypothesis: bool = True
    allow_hypothesis_failure: bool = False
    out: str | None = None


def _number(value, path):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(path, f"expected a number, got {value!r}")
    return float(value)


def load_config(raw: dict) -> RunConfig:
    """Validate a raw JSON mapping into a :class:`RunConfig`."""
    if not isinstance(raw, dict):
        raise ConfigError("$", "config must be a JSON object")
    for key in ("scale1", "window", "functions"):
        if key not in raw:
            raise ConfigError(key, "missing required field")
    try:
        scale1 = build_timescale(raw["scale1"])
    except TimeScaleError as exc:
        raise ConfigError("scale1", str(exc)) from None
    scale2 = None
    if raw.get("scale2") is not None:
        try:
            scale2 = build_timescale(raw["scale2"])
        except TimeScaleError as exc:
            raise ConfigError("scale2", str(exc)) from None

    window = raw["window"]
    if not isinstance(window, (list, tuple)) or len(window) not in (2, 4):
        raise ConfigError("window", "expected [a, b] or [a, b, c, d]")
    window = tuple(_number(v, f"window[{i}]") for i, v in enumerate(window))
    for i, (scale, name) in enumerate(((scale1, "scale1"), (scale2, "scale2"))):
        pair = window[2 * i: 2 * i + 2]
        if not pair:
            continue
        if scale is None:
            raise ConfigError("scale2", "window has (c, d) but scale2 is missing")
        for j, v in enumerate(pair):
            if v not in scale:
                raise ConfigError(f"window[{2 * i + j}]", f"{v!r} is not a member of {name}")
        if not pair[0] < pair[1]:
            raise ConfigError(f"window[{2 * i}]", "window endpoints must be increasing")

    functions = raw["functions"]
    if not isinstance(functions, list) or not functions:
        raise ConfigError("functions", "expected a nonempty list of expressions")
    for i, src in enumerate(functions):
        if not isinstance(src, str):
            raise ConfigError(f"functions[{i}]", "expected an expression string")
        try:
            parse(src)
        except ExprError as exc:
            raise ConfigError(f"functions[{i}]", str(exc)) from None

    alphas = raw.get("alphas", DEFAULT_ALPHAS)
    if not isinstance(alphas, list):
        raise ConfigError("alphas", "expected a list of numbers")
    alphas = [_number(v, f"alphas[{i}]") for i, v in enumerate(alphas)]
    for i, a in enumerate(alphas):
        if not 0.0 <= a <= 1.0:
            raise ConfigError(f"alphas[{i}]", f"alpha must lie in [0, 1], got {a!r}")

    two_d = len(window) == 4
    chains = raw.get("chains")
    if chains is not None:
        if not isinstance(chains, list):
            raise ConfigError("chains", "expected a list of chain names")
        for i, name in enumerate(chains):
            if name not in CHAINS:
                raise ConfigError(f"chains[{i}]", f"unknown chain {name!r}; choose from {', '.join(CHAINS)}")
            if name in CHAINS_2D and name != "paper_example" and not two_d:
                raise ConfigError(f"chains[{i}]", f"{name} needs scale2 and a window [a, b, c, d]")
            if name == "dragomir_r" and not (_single_interval(scale1) and _single_interval(scale2)):
                raise ConfigError(f"chains[{i}]", "dragomir_r needs both scales to be single intervals")
        for i, src in enumerate(functions):
            if "dinu1d" in chains and "y" in free_variables(parse(src)):
                raise ConfigError(f"functions[{i}]", "dinu1d needs a function of x only")

    q = raw.get("quadrature", {}) or {}
    if not isinstance(q, dict):
        raise ConfigError("quadrature", "expected an object")
    try:
        quad = QuadratureConfig(
            rel_tol=_number(q.get("rel_tol", 1e-10), "quadrature.rel_tol"),
            abs_tol=_number(q.get("abs_tol", 1e-12), "quadrature.abs_tol"),
            max_depth=int(q.get("max_depth", 40)),
            max_intervals=int(q.get("max_intervals", 4000)),
        )
    except TimeScaleError as exc:
        raise ConfigError("quadrature", str(exc)) from None

    output = raw.get("output", "text")
    if output not in ("text", "json", "both"):
        raise ConfigError("output", "expected 'text', 'json' or 'both'")

    return RunConfig(
        scale1=scale1, scale2=scale2, window=window, functions=list(functions), alphas=alphas,
        chains=None if chains is None else list(chains), quadrature=quad, output=output,
        check_hypothesis=bool(raw.get("check_hypothesis", True)),
        allow_hypothesis_failure=bool(raw.get("allow_hypothesis_failure", False)),
        out=raw.get("out"),
    )


def _single_interval(T) -> bool:
    return T is not None and len(T.pieces) == 1 and isinstance(T.pieces[0], Interval)


def default_chains(cfg: RunConfig) -> list:
    """Every chain applicable to the configured dimensionality."""
    if len(cfg.window) == 2:
        return ["dinu1d"]
    a, b, c, d = cfg.window
    chains = ["mr1"]
    if (a + b) / 2 in cfg.scale1 and (c + d) / 2 in cfg.scale2:
        chains.append("mr2")
    chains.append("mr3")
    if _single_interval(cfg.scale1) and _single_interval(cfg.scale2):
        chains.append("dragomir_r")
    return chains


def execute(cfg: RunConfig) -> list:
    """All reports, ordered by function, then chain, then alpha."""
    chains = cfg.chains if cfg.chains is not None else default_chains(cfg)
    q, check = cfg.quadrature, cfg.check_hypothesis
    reports = []
    R = RectangleDomain(cfg.scale1, cfg.scale2, *cfg.window) if len(cfg.window) == 4 else None
    for src in cfg.functions:
        fn = compile_expr(parse(src))
        f2 = RealFunction2D(fn, src)
        f1 = RealFunction1D(lambda x, fn=fn: fn(x), src)
        for chain in chains:
            if chain == "dinu1d":
                a, b = cfg.window[:2]
                for alpha in cfg.alphas:
                    reports.append(ineq.run_chain(
                        ineq.DINU_1D, alpha, src,
                        lambda al=alpha: ineq.verify_dinu_1d(cfg.scale1, f1, a, b, al, q, check)))
            elif chain in ("mr1", "mr2", "mr3"):
                verify = {"mr1": ineq.verify_mr1, "mr2": ineq.verify_mr2, "mr3": ineq.verify_mr3}[chain]
                for alpha in cfg.alphas:
                    reports.append(ineq.run_chain(
                        chain.upper(), alpha, src,
                        lambda v=verify, al=alpha: v(R, f2, al, q, check)))
            elif chain == "dragomir_r":
                reports.append(ineq.run_chain(
                    ineq.DRAGOMIR_R, 0.5, src,
                    lambda: ineq.verify_dragomir_r(f2, *cfg.window, q, check)))
            elif chain == "paper_example":
                reports.append(ineq.run_chain(
                    ineq.PAPER_EXAMPLE, 1.0, src,
                    lambda: ineq.verify_paper_example(f2, q, check)))
    return reports


def exit_status(reports, allow_hypothesis_failure: bool = False) -> int:
    for r in reports:
        if r.hypothesis.passed is False and allow_hypothesis_failure and r.error is None:
            continue
        if not r.ok:
            return 1
    return 0


def run(raw: dict) -> tuple[int, list, str]:
    """Validate, execute and render; returns ``(status, reports, rendered)``."""
    try:
        cfg = load_config(raw)
    except ConfigError as exc:
        return 2, [], f"config error: {exc}\n"
    reports = execute(cfg)
    return exit_status(reports, cfg.allow_hypothesis_failure), reports, emit_report(reports, cfg.output)


def _parse_args(argv):
    parser = argparse.ArgumentParser(prog="tscalc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="verify Hermite–Hadamard chains for a run configuration")
    v.add_argument("--config", help="JSON run configuration")
    v.add_argument("--alpha", action="append", type=float, help="diamond weight (repeatable)")
    v.add_argument("--function", action="append", help="expression in x and y (repeatable)")
    v.add_argument("--scale1", help="scale spec as JSON")
    v.add_argument("--scale2", help="scale spec as JSON")
    v.add_argument("--window", help="a,b or a,b,c,d")
    v.add_argument("--chains", help="comma-separated subset of " + ",".join(CHAINS))
    v.add_argument("--output", choices=("text", "json", "both"))
    v.add_argument("--out", help="also write the report to this path")
    v.add_argument("--rel-tol", type=float)
    v.add_argument("--abs-tol", type=float)
    v.add_argument("--max-depth", type=int)
    v.add_argument("--no-hypothesis-check", action="store_true")
    v.add_argument("--allow-hypothesis-failure", action="store_true",
                   help="do not fail the run on reports whose convexity check failed")
    v.add_argument("-v", "--verbose", action="store_true")
    return parser.parse_args(argv)


def _merge(args) -> dict:
    raw: dict = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                raw = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError("--config", str(exc)) from None
        if not isinstance(raw, dict):
            raise ConfigError("--config", "config must be a JSON object")
    for flag, key in (("scale1", "scale1"), ("scale2", "scale2")):
        value = getattr(args, flag)
        if value is not None:
            try:
                raw[key] = json.loads(value)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"--{flag}", str(exc)) from None
    if args.window is not None:
        try:
            raw["window"] = [float(v) for v in args.window.split(",")]
        except ValueError:
            raise ConfigError("--window", f"cannot parse {args.window!r}") from None
    if args.alpha:
        raw["alphas"] = args.alpha
    if args.function:
        raw["functions"] = args.function
    if args.chains:
        raw["chains"] = [c.strip() for c in args.chains.split(",") if c.strip()]
    if args.output:
        raw["output"] = args.output
    if args.out:
        raw["out"] = args.out
    quad = dict(raw.get("quadrature") or {})
    for flag, key in (("rel_tol", "rel_tol"), ("abs_tol", "abs_tol"), ("max_depth", "max_depth")):
        if getattr(args, flag) is not None:
            quad[key] = getattr(args, flag)
    if quad:
        raw["quadrature"] = quad
    if args.no_hypothesis_check:
        raw["check_hypothesis"] = False
    if args.allow_hypothesis_failure:
        raw["allow_hypothesis_failure"] = True
    return raw


def main(argv=None) -> int:
    args = _parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        raw = _merge(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    status, reports, rendered = run(raw)
    if status == 2:
        sys.stderr.write(rendered)
        return status
    sys.stdout.write(rendered)
    out = raw.get("out")
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(rendered)
    log.debug("%d reports, exit status %d", len(reports), status)
    return status


if __name__ == "__main__":
    sys.exit(main())
