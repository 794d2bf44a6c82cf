"""Timing comparison of the reference and fast Weyl transforms."""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from ..abelian_group import parse_group
from ..weyl import weyl_transform
from .generators import generate_function


@dataclass
class BenchRow:
    group: str
    order: int
    reference_ms: float
    fast_ms: float
    speedup: float
    max_abs_diff: float
    scaled_diff: float


def _best_time(fn, repeat):
    best = np.inf
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench(sizes, repeat: int = 3, seed: int = 0) -> list[BenchRow]:
    """Best-of-``repeat`` wall time for both paths on a Gaussian input per group."""
    rows = []
    for spec in sizes:
        g = parse_group(str(spec))
        f = generate_function(g, "gaussian", seed)
        t_ref, ref = _best_time(lambda: weyl_transform(f, "reference"), repeat)
        t_fast, fast = _best_time(lambda: weyl_transform(f, "fast"), max(repeat, 5))
        diff = float(np.abs(ref.matrix - fast.matrix).max())
        scale = float(np.abs(f.values).max())
        rows.append(BenchRow(g.spec, g.order, t_ref * 1e3, t_fast * 1e3,
                             t_ref / t_fast if t_fast > 0 else np.inf, diff, diff / scale))
    return rows


def format_table(rows) -> str:
    head = f"{'group':>10} {'N':>5} {'reference_ms':>14} {'fast_ms':>10} {'speedup':>9} {'max|diff|/|f|_inf':>18}"
    lines = [head]
    for r in rows:
        lines.append(f"{r.group:>10} {r.order:>5} {r.reference_ms:>14.3f} {r.fast_ms:>10.4f} "
                     f"{r.speedup:>9.1f} {r.scaled_diff:>18.2e}")
    return "\n".join(lines)
