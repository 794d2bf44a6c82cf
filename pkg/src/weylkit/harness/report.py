"""JSON / CSV serialization of sweep reports."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import fields
from pathlib import Path

from ..errors import ReportIOError
from .sweep import RatioReport

CSV_HEADER = ["suite", "group", "params", "trial", "seed", "lhs", "rhs", "ratio", "wall_time_ms"]
FORMATS = ("json", "csv")


def format_float(x: float) -> str:
    """17 significant digits; non-finite values as JSON-style tokens."""
    x = float(x)
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def _json_value(v) -> str:
    if isinstance(v, bool) or v is None:
        return json.dumps(v)
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return format_float(v)
    if isinstance(v, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_json_value(val)}" for k, val in v.items()) + "}"
    return json.dumps(v)


def params_to_string(params: dict) -> str:
    return ";".join(f"{k}={format_float(v) if isinstance(v, float) else v}" for k, v in params.items())


def params_from_string(text: str) -> dict:
    out = {}
    if not text:
        return out
    for item in text.split(";"):
        key, _, val = item.partition("=")
        try:
            out[key] = float(val)
        except ValueError:
            out[key] = val
    return out


def dumps_json(reports) -> str:
    if not reports:
        return "[]"
    names = [f.name for f in fields(RatioReport)]
    rows = []
    for r in reports:
        body = ", ".join(f"{json.dumps(n)}: {_json_value(getattr(r, n))}" for n in names)
        rows.append("  {" + body + "}")
    return "[\n" + ",\n".join(rows) + "\n]\n"


def dumps_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in reports:
        w.writerow([r.suite, r.group, params_to_string(r.params), r.trial, r.seed,
                    format_float(r.lhs), format_float(r.rhs), format_float(r.ratio),
                    format_float(r.wall_time_ms)])
    return buf.getvalue()


def emit_report(reports, format: str, path) -> None:
    """Write reports as ``json`` (array of records) or ``csv`` (one row each)."""
    if format not in FORMATS:
        raise ValueError(f"format must be one of {FORMATS}, got {format!r}")
    text = dumps_json(reports) if format == "json" else dumps_csv(reports)
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise ReportIOError(f"cannot write report to {path}: {exc}") from exc


def loads_json(text: str) -> list[RatioReport]:
    return [RatioReport(**rec) for rec in json.loads(text)]


def loads_csv(text: str) -> list[RatioReport]:
    rows = list(csv.DictReader(io.StringIO(text)))
    return [RatioReport(suite=r["suite"], group=r["group"],
                        params=params_from_string(r["params"]), trial=int(r["trial"]),
                        seed=int(r["seed"]), lhs=float(r["lhs"]), rhs=float(r["rhs"]),
                        ratio=float(r["ratio"]), wall_time_ms=float(r["wall_time_ms"]))
            for r in rows]


def read_reports(path, format: str | None = None) -> list[RatioReport]:
    path = Path(path)
    if format is None:
        format = "csv" if path.suffix.lower() == ".csv" else "json"
    try:
        text = path.read_text()
    except OSError as exc:
        raise ReportIOError(f"cannot read report {path}: {exc}") from exc
    return loads_json(text) if format == "json" else loads_csv(text)
