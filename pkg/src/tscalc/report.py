"""Text and JSON rendering of chain reports.

JSON numbers are written with 17 significant digits so every double
survives a round trip bit for bit.
"""

from __future__ import annotations

import json
import math

from .inequalities import ChainReport, Hypothesis, Verdict


def report_to_dict(r: ChainReport) -> dict:
    out = {"chain_id": r.chain_id, "alpha": r.alpha, "t_alpha": r.t_alpha}
    if r.s_alpha is not None:
        out["s_alpha"] = r.s_alpha
    if r.coefficients is not None:
        out["coefficients"] = dict(zip(("A1", "A2", "A3", "A4"), r.coefficients))
    out["members"] = [{"label": label, "value": value} for label, value in r.members]
    out["verdicts"] = [
        {"left": v.left, "right": v.right, "satisfied": v.satisfied, "slack": v.slack}
        for v in r.verdicts
    ]
    hyp = {"checked": r.hypothesis.checked, "passed": r.hypothesis.passed}
    if r.hypothesis.witness is not None:
        hyp["witness"] = _plain(r.hypothesis.witness)
    out["hypothesis"] = hyp
    out["tolerance"] = r.tolerance
    if r.function is not None:
        out["function"] = r.function
    if r.notes:
        out["notes"] = list(r.notes)
    if r.error is not None:
        out["error"] = r.error
    return out


def report_from_dict(d: dict) -> ChainReport:
    coeffs = d.get("coefficients")
    hyp = d.get("hypothesis", {})
    witness = hyp.get("witness")
    return ChainReport(
        chain_id=d["chain_id"],
        alpha=float(d["alpha"]),
        members=[(m["label"], float(m["value"])) for m in d["members"]],
        verdicts=[Verdict(v["left"], v["right"], v["satisfied"], float(v["slack"])) for v in d["verdicts"]],
        t_alpha=None if d.get("t_alpha") is None else float(d["t_alpha"]),
        s_alpha=None if d.get("s_alpha") is None else float(d["s_alpha"]),
        coefficients=None if coeffs is None else tuple(float(coeffs[k]) for k in ("A1", "A2", "A3", "A4")),
        tolerance=float(d["tolerance"]),
        hypothesis=Hypothesis(hyp.get("checked", False), hyp.get("passed"),
                              None if witness is None else _tupled(witness)),
        function=d.get("function"),
        notes=list(d.get("notes", [])),
        error=d.get("error"),
    )


def _plain(obj):
    if isinstance(obj, (tuple, list)):
        return [_plain(v) for v in obj]
    return obj


def _tupled(obj):
    if isinstance(obj, list):
        return tuple(_tupled(v) for v in obj)
    return float(obj) if isinstance(obj, (int, float)) and not isinstance(obj, bool) else obj


def _dump(obj, indent: int, level: int = 0) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return "null"
        return format(obj, ".17g")
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_dump(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + _dump(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def to_json(reports) -> str:
    return _dump([report_to_dict(r) for r in reports], indent=2)


def _num(v) -> str:
    return "n/a" if v is None else format(v, ".17g")


def to_text(reports) -> str:
    blocks = []
    for r in reports:
        head = f"[{r.chain_id}] alpha={r.alpha:g}"
        if r.function:
            head += f"  f = {r.function}"
        lines = [head]
        if r.t_alpha is not None:
            centroid = f"  t_alpha = {_num(r.t_alpha)}"
            if r.s_alpha is not None:
                centroid += f", s_alpha = {_num(r.s_alpha)}"
            lines.append(centroid)
        if r.coefficients is not None:
            lines.append("  " + ", ".join(f"A{i} = {_num(v)}" for i, v in enumerate(r.coefficients, 1)))
        if r.hypothesis.passed is False:
            lines.append(f"  HYPOTHESIS FAILED (witness {r.hypothesis.witness})")
        if r.error is not None:
            lines.append(f"  ERROR: {r.error}")
        for k, (label, value) in enumerate(r.members):
            lines.append(f"    {label} = {_num(value)}")
            if k < len(r.verdicts):
                v = r.verdicts[k]
                mark = "✓" if v.satisfied else "✗"
                lines.append(f"  ≤ {mark}  (slack {v.slack:.3e})")
        if r.verdicts:
            lines.append(f"  tolerance {r.tolerance:.1e}")
        for note in r.notes:
            lines.append(f"  note: {note}")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + ("\n" if blocks else "")


def emit_report(reports, fmt: str = "text") -> str:
    if fmt == "json":
        return to_json(reports)
    if fmt == "text":
        return to_text(reports)
    if fmt == "both":
        return to_text(reports) + "\n" + to_json(reports)
    raise ValueError(f"unknown report format {fmt!r}")
