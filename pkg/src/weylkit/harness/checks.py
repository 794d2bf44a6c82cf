"""Suite-level assertions over a report set.

Checks, per report:

* exact cases: every p = 2 cell (p = q = 2 for the multiplier suites) has
  ratio 1 within the tolerance;
* Hausdorff-Young (and its dual endpoint b = p') has ratio <= 1 + tol;
* every ratio is at most the constant from :mod:`weylkit.bounds` for its
  exponents.

Across reports, the HYP endpoints b = p and b = p' must reproduce the Paley
and Hausdorff-Young ratios of the same group and trial to 1e-12.  Optionally
the per-cell maxima are compared with a stored baseline.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from ..bounds import (hormander_constant, hyp_constant, lorentz_domain_constant,
                      paley_constant, schatten_lorentz_paley_constant)
from ..errors import ReportIOError
from ..operators import conjugate_exponent
from .report import format_float
from .sweep import RatioReport

ENDPOINT_TOL = 1e-12
BASELINE_SLACK = 1e-9
_EXPONENT_KEYS = ("p", "q", "b", "beta", "direction")


@dataclass
class Failure:
    check: str
    report: RatioReport | None
    message: str

    def __str__(self):
        where = ""
        if self.report is not None:
            r = self.report
            where = f"[{r.suite} {r.group} {cell_signature(r)} trial={r.trial}] "
        return f"{self.check}: {where}{self.message}"


def cell_signature(r: RatioReport) -> str:
    parts = []
    for k in _EXPONENT_KEYS:
        if k in r.params:
            v = r.params[k]
            parts.append(f"{k}={format_float(v) if isinstance(v, float) else v}")
    return ";".join(parts)


def is_exact_case(r: RatioReport) -> bool:
    p = r.params.get("p")
    if p != 2.0:
        return False
    if r.suite in ("hormander", "hormander_inverse"):
        return r.params.get("q") == 2.0
    return True


def derived_bounds(r: RatioReport) -> dict[str, float]:
    """Named ratios of a report with their constant-tracked bounds."""
    p = float(r.params["p"])
    s = r.suite
    if s == "hy":
        return {"ratio": 1.0}
    if s in ("paley", "paley_inverse", "hardy_littlewood"):
        return {"ratio": paley_constant(p)}
    if s in ("hyp", "hyp_inverse"):
        return {"ratio": hyp_constant(p, float(r.params["b"]))}
    if s in ("hormander", "hormander_inverse"):
        return {"ratio": hormander_constant(p, float(r.params["q"]))}
    if s == "lorentz_paley":
        return {"ratio_domain_lorentz": lorentz_domain_constant(p),
                "ratio_range_lorentz": lorentz_domain_constant(p),
                "ratio_schatten_lorentz": schatten_lorentz_paley_constant(p)}
    raise KeyError(s)


def _value(r, name):
    return r.ratio if name == "ratio" else float(r.params[name])


def check_reports(reports, tol: float = 1e-8, baseline: dict | None = None) -> list[Failure]:
    failures = []
    for r in reports:
        if is_exact_case(r):
            names = ["ratio"]
            if r.suite == "lorentz_paley":
                names += ["ratio_domain_lorentz", "ratio_range_lorentz", "ratio_schatten_lorentz"]
            for name in names:
                v = _value(r, name)
                if abs(v - 1.0) > tol:
                    failures.append(Failure("exact", r, f"{name}={v!r} differs from 1 by more than {tol}"))
        if r.suite == "hy" or (r.suite == "hyp_inverse"
                               and r.params.get("b") == conjugate_exponent(r.params["p"])):
            if r.ratio > 1.0 + tol:
                failures.append(Failure("hausdorff-young", r, f"ratio={r.ratio!r} exceeds 1 + {tol}"))
        for name, bound in derived_bounds(r).items():
            v = _value(r, name)
            if not v <= bound + tol:
                failures.append(Failure("bound", r, f"{name}={v!r} exceeds derived bound {bound!r}"))
    failures.extend(_check_endpoints(reports))
    if baseline is not None:
        failures.extend(check_baseline(reports, baseline))
    return failures


def _check_endpoints(reports) -> list[Failure]:
    by_key = {}
    for r in reports:
        if r.suite in ("paley", "hy", "paley_inverse"):
            by_key[(r.suite, r.group, r.params["p"], r.trial)] = r
    failures = []
    for r in reports:
        if r.suite not in ("hyp", "hyp_inverse"):
            continue
        p, b = r.params["p"], r.params["b"]
        if r.suite == "hyp":
            partner = {p: "paley", conjugate_exponent(p): "hy"}.get(b)
        else:
            partner = {p: "paley_inverse"}.get(b)
        if partner is None:
            continue
        other = by_key.get((partner, r.group, p, r.trial))
        if other is None:
            continue
        if abs(r.ratio - other.ratio) > ENDPOINT_TOL * max(1.0, abs(other.ratio)):
            failures.append(Failure(
                "endpoint", r,
                f"ratio={r.ratio!r} but {partner} gives {other.ratio!r} on the same input"))
    return failures


def baseline_key(r: RatioReport) -> str:
    return f"{r.suite}|{r.group}|{cell_signature(r)}"


def cell_maxima(reports) -> dict[str, float]:
    out = defaultdict(float)
    for r in reports:
        k = baseline_key(r)
        out[k] = max(out[k], r.ratio)
    return dict(sorted(out.items()))


def check_baseline(reports, baseline: dict, slack: float = BASELINE_SLACK) -> list[Failure]:
    failures = []
    for key, value in cell_maxima(reports).items():
        if key in baseline and value > baseline[key] + slack:
            failures.append(Failure("baseline", None,
                                    f"{key}: max ratio {value!r} exceeds baseline {baseline[key]!r}"))
    return failures


def write_baseline(reports, path) -> dict:
    data = cell_maxima(reports)
    text = "{\n" + ",\n".join(f"  {json.dumps(k)}: {format_float(v)}" for k, v in data.items()) + "\n}\n"
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise ReportIOError(f"cannot write baseline {path}: {exc}") from exc
    return data


def load_baseline(path=None) -> dict:
    """Load a baseline file; with no path, the one shipped for the default sweep."""
    if path is None:
        text = resources.files("weylkit.data").joinpath("default_baseline.json").read_text()
    else:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ReportIOError(f"cannot read baseline {path}: {exc}") from exc
    return json.loads(text)
