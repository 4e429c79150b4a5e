"""Text, JSON and CSV renderings of verification reports and region samples.

JSON is canonical: sorted keys, fixed separators, and every float written
with 17 significant digits, so parsing and re-rendering reproduces the bytes.
Non-finite floats are written as null.
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Any

from .identities import VerificationReport, VerificationRecord

FORMATS = ("text", "json", "csv")


def fmt_float(x: float) -> str:
    return format(x, ".17g")


def _dump(obj: Any, indent: int, level: int) -> str:
    pad = "\n" + " " * (indent * (level + 1))
    end = "\n" + " " * (indent * level)
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return fmt_float(obj) if math.isfinite(obj) else "null"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{json.dumps(str(k), ensure_ascii=False)}: {_dump(obj[k], indent, level + 1)}"
                 for k in sorted(obj)]
        return "{" + pad + ("," + pad).join(items) + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        return "[" + pad + ("," + pad).join(_dump(v, indent, level + 1) for v in obj) + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def canonical_json(obj: Any, indent: int = 2) -> str:
    return _dump(obj, indent, 0) + "\n"


def record_dict(r: VerificationRecord) -> dict:
    """Per-identity JSON object; carries no timing so runs compare byte for byte."""
    return {
        "id": r.id,
        "lhs": r.lhs_value,
        "rhs": r.rhs_value,
        "residual": r.residual,
        "passed": r.passed,
        "converged": r.converged,
        "evaluations": r.evaluations,
        "tolerance": r.tolerance,
        "paper_ref": r.reference,
        "external_source": r.external,
        "diagnostic": r.diagnostic,
    }


def report_dict(rep: VerificationReport) -> dict:
    return {
        "identities": [record_dict(r) for r in rep.records],
        "summary": {
            "passed": rep.passed,
            "failed": rep.failed,
            "elapsed_ms": rep.elapsed * 1e3,
        },
    }


def render_report(rep: VerificationReport, fmt: str = "text") -> str:
    if fmt == "json":
        return canonical_json(report_dict(rep))
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["id", "lhs", "rhs", "residual", "passed", "evaluations", "elapsed_ms", "paper_ref"])
        for r in rep.records:
            w.writerow([r.id, fmt_float(r.lhs_value), fmt_float(r.rhs_value), fmt_float(r.residual),
                        "true" if r.passed else "false", r.evaluations, fmt_float(r.elapsed * 1e3),
                        r.reference])
        return buf.getvalue()
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")

    lines = [f"{'id':<4} {'lhs':>24} {'rhs':>24} {'residual':>9} {'result':<6} {'evals':>9} {'ms':>8}"]
    for r in rep.records:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{r.id:<4} {r.lhs_value:>24.17g} {r.rhs_value:>24.17g} {r.residual:>9.2e} "
                     f"{status:<6} {r.evaluations:>9d} {r.elapsed * 1e3:>8.1f}")
        if r.diagnostic:
            lines.append(f"     ! {r.diagnostic}")
    lines.append(f"{rep.passed}/{len(rep.records)} passed in {rep.elapsed * 1e3:.0f} ms")
    return "\n".join(lines) + "\n"


def render_region(alpha: float, rows, interior, fmt: str = "text") -> str:
    """Boundary curve samples plus forward-mapped interior points of S."""
    if fmt == "json":
        return canonical_json({
            "alpha": alpha,
            "rows": [{"u": u, "f": f, "g": g} for u, f, g in rows],
            "interior": [{"u": u, "v": v, "x": x, "y": y} for u, v, x, y in interior],
        })
    if fmt == "csv":
        buf = io.StringIO()
        buf.write(f"# alpha={fmt_float(alpha)}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["u", "f", "g"])
        for u, f, g in rows:
            w.writerow([fmt_float(u), fmt_float(f), "" if g is None else fmt_float(g)])
        return buf.getvalue()
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = [f"alpha = {alpha:.17g}", f"{'u':>22} {'f(u)':>22} {'g(u)':>22}"]
    for u, f, g in rows:
        gs = "" if g is None else f"{g:.17g}"
        lines.append(f"{u:>22.17g} {f:>22.17g} {gs:>22}")
    return "\n".join(lines) + "\n"
