"""Randomized sweeps over the inequality ratios, with reports and checks."""

from .checks import check_reports, load_baseline, write_baseline
from .generators import (derive_seed, generate_function, generate_operator,
                         generate_symbol)
from .report import emit_report, read_reports
from .sweep import SUITES, RatioReport, SweepConfig, default_config, run_sweep

__all__ = [
    "SUITES", "RatioReport", "SweepConfig", "check_reports", "default_config",
    "derive_seed", "emit_report", "generate_function", "generate_operator",
    "generate_symbol", "load_baseline", "read_reports", "run_sweep", "write_baseline",
]
