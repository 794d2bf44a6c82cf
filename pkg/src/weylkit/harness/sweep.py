"""Sweep configuration and orchestration."""

from __future__ import annotations

import json
import logging
import math
import time
from dataclasses import asdict, dataclass, field, fields
from itertools import product

from ..abelian_group import parse_group
from ..errors import ConfigError, WeylError
from ..inequalities import (DIRECTIONS, hardy_littlewood_ratio, hormander_check,
                            hormander_inverse_check, hy_ratio, hyp_inverse_ratio,
                            hyp_ratio, lorentz_paley_ratio, paley_inverse_ratio,
                            paley_ratio)
from ..operators import conjugate_exponent
from ..weyl import MODES
from .generators import (derive_seed, generate_function, generate_operator,
                         generate_symbol, harmonic_sequence, index_decay_weight,
                         index_growth_weight)

log = logging.getLogger(__name__)

SUITES = (
    "hy", "paley", "hyp", "hormander",
    "paley_inverse", "hyp_inverse", "hormander_inverse",
    "hardy_littlewood", "lorentz_paley",
)

# suites sharing a family see identical inputs for the same group and trial
_FAMILY = {
    "hy": "function", "paley": "function", "hyp": "function", "lorentz_paley": "function",
    "paley_inverse": "operator", "hyp_inverse": "operator", "hardy_littlewood": "operator",
    "hormander": "multiplier", "hormander_inverse": "symbol",
}

# grid axes walked by each suite besides the group
_AXES = {
    "hy": ("p",), "paley": ("p",), "paley_inverse": ("p",),
    "hyp": ("p", "b"), "hyp_inverse": ("p", "b"),
    "hormander": ("p", "q"), "hormander_inverse": ("p", "q"),
    "hardy_littlewood": ("p", "beta"), "lorentz_paley": ("p", "direction"),
}


@dataclass
class SweepConfig:
    group_spec: str = "4,6,8,2x2x2,16"
    suites: list = field(default_factory=lambda: list(SUITES))
    p_grid: list = field(default_factory=lambda: [1.1, 1.25, 1.5, 1.75, 2.0])
    q_grid: list = field(default_factory=lambda: [2.0, 3.0, 4.0])
    # "p" and "p'" resolve to the endpoints of [p, p'] for each p
    b_grid: list = field(default_factory=lambda: ["p", 2.0, "p'"])
    beta_grid: list = field(default_factory=lambda: [1.0, 2.0])
    trials: int = 100
    seed: int = 42
    tolerance: float = 1e-8
    output_path: str = "reports.json"
    mode: str = "fast"
    function_kinds: list = field(default_factory=lambda: ["gaussian", "sparse", "rank_one"])
    operator_decays: list = field(default_factory=lambda: ["random_gaussian", "power(2)"])
    # "critical" is power(r) with 1/r = 1/p - 1/q for the cell
    multiplier_decays: list = field(default_factory=lambda: ["critical", "random_gaussian"])
    symbol_kinds: list = field(default_factory=lambda: ["critical", "atom"])
    restarts: int = 2
    iters: int = 200
    timing: bool = False

    def __post_init__(self):
        self.validate()

    def validate(self):
        if int(self.trials) < 1:
            raise ConfigError("trials must be >= 1")
        if not self.tolerance > 0:
            raise ConfigError("tolerance must be positive")
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}")
        if not 0 <= int(self.seed) < 2 ** 64:
            raise ConfigError("seed must be an unsigned 64-bit integer")
        unknown = [s for s in self.suites if s not in SUITES]
        if unknown:
            raise ConfigError(f"unknown suites {unknown}; expected ids from {SUITES}")
        needed = {a for s in self.suites for a in _AXES[s]} - {"direction"}
        for axis in needed:
            if not getattr(self, f"{axis}_grid"):
                raise ConfigError(f"{axis}_grid must be nonempty for suites {self.suites}")
        for name in ("function_kinds", "operator_decays", "multiplier_decays", "symbol_kinds"):
            if not getattr(self, name):
                raise ConfigError(f"{name} must be nonempty")
        self.groups()

    def groups(self):
        return [parse_group(tok) for tok in str(self.group_spec).split(",") if tok.strip()]

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> "SweepConfig":
        known = {f.name for f in fields(cls)}
        extra = set(data) - known
        if extra:
            raise ConfigError(f"unknown config keys {sorted(extra)}")
        return cls(**data)

    @classmethod
    def from_json(cls, text: str) -> "SweepConfig":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from exc
        return cls.from_dict(data)


@dataclass
class RatioReport:
    suite: str
    group: str
    params: dict
    trial: int
    seed: int
    lhs: float
    rhs: float
    ratio: float
    wall_time_ms: float = 0.0


def resolve_b(token, p):
    if token == "p":
        return float(p)
    if token in ("p'", "pprime", "p_conj"):
        return conjugate_exponent(p)
    return float(token)


def _critical(kind, p, q):
    if kind != "critical":
        return kind
    inv_r = 1.0 / p - 1.0 / q
    return "flat" if inv_r == 0 else ("power", 1.0 / inv_r)


def _cells(cfg: SweepConfig):
    """Yield ``(suite, group_index, grid_indices, values)`` in report order."""
    grids = {"p": cfg.p_grid, "q": cfg.q_grid, "b": cfg.b_grid,
             "beta": cfg.beta_grid, "direction": list(DIRECTIONS)}
    ngroups = len(cfg.groups())
    for suite in sorted(cfg.suites):
        axes = _AXES[suite]
        for gi in range(ngroups):
            for idx in product(*(range(len(grids[a])) for a in axes)):
                yield suite, gi, idx, {a: grids[a][i] for a, i in zip(axes, idx)}


def _cycle(options, trial):
    return options[trial % len(options)]


def run_cell(cfg: SweepConfig, suite, group, gi, idx, values, trial) -> RatioReport | None:
    """Evaluate one cell; ``None`` when the inequality flags the input as degenerate."""
    family = _FAMILY[suite]
    in_seed = derive_seed(cfg.seed, family, gi, trial)
    est_seed = derive_seed(cfg.seed, suite, gi, *idx, trial)
    p = float(values["p"])
    mode = cfg.mode
    n = group.order
    t0 = time.perf_counter()
    if family == "function":
        kind = _cycle(cfg.function_kinds, trial)
        f = generate_function(group, kind, in_seed)
        if suite == "hy":
            res = hy_ratio(f, p, mode)
        elif suite == "paley":
            res = paley_ratio(f, harmonic_sequence(n), p, mode)
        elif suite == "hyp":
            res = hyp_ratio(f, harmonic_sequence(n), p, resolve_b(values["b"], p), mode)
        else:
            res = lorentz_paley_ratio(f, p, values["direction"], mode)
    elif family == "operator":
        kind = _cycle(cfg.operator_decays, trial)
        T = generate_operator(group, kind, in_seed)
        if suite == "paley_inverse":
            res = paley_inverse_ratio(T, index_decay_weight(group), p, mode)
        elif suite == "hyp_inverse":
            res = hyp_inverse_ratio(T, index_decay_weight(group), p, resolve_b(values["b"], p), mode)
        else:
            res = hardy_littlewood_ratio(T, index_growth_weight(group), float(values["beta"]), p, mode)
    else:
        q = float(values["q"])
        if family == "multiplier":
            kind = _cycle(cfg.multiplier_decays, trial)
            M = generate_operator(group, _critical(kind, p, q), in_seed)
            res = hormander_check(M, p, q, trials=cfg.restarts, seed=est_seed,
                                  iters=cfg.iters, mode=mode)
        else:
            kind = _cycle(cfg.symbol_kinds, trial)
            g = generate_symbol(group, _critical(kind, p, q), in_seed)
            res = hormander_inverse_check(g, p, q, trials=cfg.restarts, seed=est_seed,
                                          iters=cfg.iters, mode=mode)
    elapsed = (time.perf_counter() - t0) * 1e3 if cfg.timing else 0.0
    if res.skipped:
        log.info("skipping degenerate input: %s %s %s trial %d", suite, group.spec, values, trial)
        return None
    params = {k: (float(v) if isinstance(v, (int, float)) and not isinstance(v, bool) else v)
              for k, v in res.params.items()}
    params["kind"] = kind if isinstance(kind, str) else f"{kind[0]}({kind[1]:.17g})"
    return RatioReport(suite, group.spec, params, trial, in_seed, res.lhs, res.rhs,
                       res.ratio, elapsed)


def _run_grid_point(cfg, suite, gi, idx, values):
    group = cfg.groups()[gi]
    out = []
    for trial in range(int(cfg.trials)):
        try:
            rep = run_cell(cfg, suite, group, gi, idx, values, trial)
        except WeylError as exc:
            raise ConfigError(
                f"cell suite={suite} group={group.spec} {values} trial={trial}: {exc}"
            ) from exc
        if rep is not None:
            out.append(rep)
    return out


def run_sweep(cfg: SweepConfig, workers: int = 1, progress=None) -> list[RatioReport]:
    """Run every suite x grid point x trial, ordered by suite, group, grid, trial.

    With ``workers > 1`` grid points run in a process pool; results are
    collected in cell order, so the output does not depend on scheduling.
    Errors from the inequality layer are re-raised as :class:`ConfigError`
    annotated with the cell coordinates.
    """
    cfg.validate()
    cells = list(_cells(cfg))
    reports = []
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_grid_point, cfg, *cell) for cell in cells]
            for cell, fut in zip(cells, futures):
                reports.extend(fut.result())
                if progress is not None:
                    progress(*cell)
        return reports
    for cell in cells:
        reports.extend(_run_grid_point(cfg, *cell))
        if progress is not None:
            progress(*cell)
    return reports


def default_config(**overrides) -> SweepConfig:
    cfg = SweepConfig()
    for k, v in overrides.items():
        if not hasattr(cfg, k):
            raise ConfigError(f"unknown config key {k!r}")
        setattr(cfg, k, v)
    cfg.validate()
    return cfg


def is_finite_report(r: RatioReport) -> bool:
    return all(math.isfinite(v) for v in (r.lhs, r.rhs, r.ratio))
