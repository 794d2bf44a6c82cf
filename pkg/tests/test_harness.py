import json
import math
import subprocess
import sys
from dataclasses import replace

import numpy as np
import pytest

from weylkit import make_group
from weylkit.cli import main
from weylkit.errors import ConfigError, ReportIOError
from weylkit.harness.bench import bench, format_table
from weylkit.harness.checks import (Failure, cell_maxima, check_reports, derived_bounds,
                                    load_baseline, write_baseline)
from weylkit.harness.generators import (derive_seed, generate_function, generate_operator,
                                        generate_symbol, harmonic_sequence, parse_decay,
                                        target_spectrum)
from weylkit.harness.report import (dumps_csv, dumps_json, emit_report, loads_csv, loads_json,
                                    params_from_string, params_to_string, read_reports)
from weylkit.harness.sweep import SUITES, SweepConfig, run_sweep
from weylkit.spaces import weak_type_sup


def small_config(**kw):
    base = dict(group_spec="4,2x2", p_grid=[1.5, 2.0], q_grid=[2.0, 3.0], b_grid=["p", 2.0, "p'"],
                beta_grid=[1.0], trials=3, seed=7, restarts=1, iters=60)
    base.update(kw)
    return SweepConfig(**base)


@pytest.fixture(scope="module")
def small_reports():
    return run_sweep(small_config())


# generators ----------------------------------------------------------------

def test_derive_seed_is_stable_and_spread():
    a = derive_seed(42, "hy", 0, 3)
    assert a == derive_seed(42, "hy", 0, 3)
    assert 0 <= a < 2 ** 64
    others = {derive_seed(42, "hy", 0, t) for t in range(200)} | {derive_seed(43, "hy", 0, 3)}
    assert len(others) == 201


def test_function_kinds():
    g = make_group([4])
    for kind in ("gaussian", "sparse", "rank_one", "constant"):
        a, b = generate_function(g, kind, 11), generate_function(g, kind, 11)
        assert np.array_equal(a.values, b.values)
    assert np.all(generate_function(g, "constant", 0).values == 1)
    sparse = generate_function(make_group([8]), "sparse", 1)
    assert np.count_nonzero(sparse.values) == 2
    from weylkit.weyl import weyl_transform
    s = weyl_transform(generate_function(g, "rank_one", 2)).singular_values
    assert s[0] == pytest.approx(1.0) and np.all(s[1:] < 1e-12)
    with pytest.raises(ConfigError):
        generate_function(g, "bogus", 0)


def test_operator_spectra():
    g = make_group([4])
    np.testing.assert_allclose(generate_operator(g, "flat", 3).singular_values, 1.0, atol=1e-12)
    np.testing.assert_allclose(generate_operator(g, "power(2)", 3).singular_values,
                               [1, 2 ** -0.5, 3 ** -0.5, 0.5], atol=1e-10)
    np.testing.assert_allclose(target_spectrum(3, ("power", 1.0)), [1, 0.5, 1 / 3])
    assert parse_decay("power(1.5)") == ("power", 1.5)
    with pytest.raises(ConfigError):
        target_spectrum(3, "power(-1)")
    with pytest.raises(ConfigError):
        parse_decay("power(x)")
    with pytest.raises(ConfigError):
        generate_operator(g, "spiky", 0)


def test_symbol_kinds():
    g = make_group([6])
    for r in (1.5, 3.0, 6.0):
        s = generate_symbol(g, ("power", r), 9)
        assert weak_type_sup(s, 1.0 / r) == pytest.approx(1.0, rel=1e-12)
    flat = generate_symbol(g, "flat", 1)
    np.testing.assert_allclose(np.abs(flat.values), 1.0)
    at = generate_symbol(g, "atom", 2)
    mags = np.sort(np.abs(at.values).ravel())
    assert mags[-1] > 2 * mags[-2]


# sweep ---------------------------------------------------------------------

def test_single_report_example():
    reps = run_sweep(SweepConfig(group_spec="4", suites=["hy"], p_grid=[2.0], trials=1))
    assert len(reps) == 1
    assert reps[0].ratio == pytest.approx(1.0, abs=1e-10)


def test_sweep_determinism(small_reports):
    again = run_sweep(small_config())
    assert dumps_json(again) == dumps_json(small_reports)
    assert dumps_csv(again) == dumps_csv(small_reports)


def test_sweep_covers_suites_and_passes_checks(small_reports):
    assert {r.suite for r in small_reports} == set(SUITES)
    assert check_reports(small_reports, tol=1e-8) == []


def test_seed_independence_of_suite_order(small_reports):
    def key(r):
        return (r.suite, r.group, params_to_string(r.params), r.trial)
    full = {key(r): (r.lhs, r.rhs) for r in small_reports}
    for subset in (["paley"], ["hormander", "hy"], list(reversed(SUITES))):
        part = run_sweep(small_config(suites=subset))
        assert part and all(full[key(r)] == (r.lhs, r.rhs) for r in part)


def test_reference_and_fast_agree():
    cfg = small_config(trials=2)
    fast = run_sweep(cfg)
    ref = run_sweep(replace(cfg, mode="reference"))
    assert len(fast) == len(ref)
    for a, b in zip(fast, ref):
        assert (a.suite, a.group, a.trial, a.seed) == (b.suite, b.group, b.trial, b.seed)
        for key, va in a.params.items():
            if isinstance(va, float):
                assert abs(va - b.params[key]) <= 1e-9 * max(1.0, abs(va))
            else:
                assert va == b.params[key]
        assert abs(a.ratio - b.ratio) <= 1e-9 * max(1.0, abs(a.ratio))


def test_parallel_matches_serial(small_reports):
    assert dumps_json(run_sweep(small_config(), workers=2)) == dumps_json(small_reports)


def test_endpoint_collapse_across_reports(small_reports):
    by = {}
    for r in small_reports:
        by[(r.suite, r.group, r.trial, r.params["p"], r.params.get("b"))] = r.ratio
    n = 0
    for (suite, grp, trial, p, b), ratio in by.items():
        if suite != "hyp" or p == 2.0:
            continue
        pc = p / (p - 1)
        if b == p:
            assert ratio == pytest.approx(by[("paley", grp, trial, p, None)], rel=1e-12)
            n += 1
        elif b == pytest.approx(pc):
            assert ratio == pytest.approx(by[("hy", grp, trial, p, None)], rel=1e-12)
            n += 1
    assert n > 0


def test_config_validation_and_json(tmp_path):
    cfg = small_config()
    assert SweepConfig.from_json(cfg.to_json()) == cfg
    for bad in (dict(trials=0), dict(suites=["nope"]), dict(mode="slow"), dict(group_spec="0"),
                dict(p_grid=[]), dict(seed=-1)):
        with pytest.raises((ConfigError, ValueError)):
            small_config(**bad)
    with pytest.raises(ConfigError):
        SweepConfig.from_json("{not json")
    with pytest.raises(ConfigError):
        SweepConfig.from_dict({"colour": "red"})


def test_cell_errors_are_annotated():
    with pytest.raises(ConfigError, match="suite=hy"):
        run_sweep(small_config(suites=["hy"], p_grid=[2.5]))


def test_default_config():
    cfg = SweepConfig()
    assert [g.spec for g in cfg.groups()] == ["4", "6", "8", "2x2x2", "16"]
    assert cfg.p_grid == [1.1, 1.25, 1.5, 1.75, 2.0] and cfg.q_grid == [2.0, 3.0, 4.0]
    assert cfg.trials == 100 and cfg.seed == 42


# reports -------------------------------------------------------------------

def test_empty_json():
    assert dumps_json([]) == "[]"
    assert loads_json("[]") == []


def test_round_trips(small_reports, tmp_path):
    for fmt in ("json", "csv"):
        path = tmp_path / f"r.{fmt}"
        emit_report(small_reports, fmt, path)
        back = read_reports(path)
        assert len(back) == len(small_reports)
        for a, b in zip(small_reports, back):
            assert (a.suite, a.group, a.trial, a.seed) == (b.suite, b.group, b.trial, b.seed)
            assert (a.lhs, a.rhs, a.ratio) == (b.lhs, b.rhs, b.ratio)
            assert a.params == b.params
    text = (tmp_path / "r.csv").read_text()
    assert len(text.strip().splitlines()) == len(small_reports) + 1
    json.loads((tmp_path / "r.json").read_text())


def test_csv_header_only_when_empty():
    assert dumps_csv([]).strip().splitlines() == [
        "suite,group,params,trial,seed,lhs,rhs,ratio,wall_time_ms"]
    assert loads_csv(dumps_csv([])) == []


def test_params_string():
    d = {"p": 1.5, "direction": "domain_lorentz", "kind": "power(2)"}
    assert params_from_string(params_to_string(d)) == d


def test_emit_io_error(tmp_path):
    with pytest.raises(ReportIOError, match="nope"):
        emit_report([], "json", tmp_path / "nope" / "x.json")


# checks --------------------------------------------------------------------

def test_checks_flag_violations(small_reports):
    r = next(x for x in small_reports if x.suite == "hy" and x.params["p"] == 2.0)
    bad = replace(r, ratio=1.1)
    fails = check_reports([bad])
    assert fails and isinstance(fails[0], Failure)
    r = next(x for x in small_reports if x.suite == "paley" and x.params["p"] == 1.5)
    assert derived_bounds(r)
    assert check_reports([replace(r, ratio=1e6)])


def test_baseline(small_reports, tmp_path):
    path = tmp_path / "base.json"
    write_baseline(small_reports, path)
    base = load_baseline(path)
    assert base == cell_maxima(small_reports)
    assert check_reports(small_reports, baseline=base) == []
    worse = [replace(r, ratio=r.ratio + 1e-6) if r.suite == "paley" and r.params["p"] == 1.5 else r
             for r in small_reports]
    assert any(f.check == "baseline" for f in check_reports(worse, baseline=base))


# cli -----------------------------------------------------------------------

def test_cli_verify_ok(tmp_path, capsys):
    out = tmp_path / "r.csv"
    code = main(["verify", "--group", "4", "--suite", "hy,paley,hyp", "--p", "1.5,2", "--trials", "2",
                 "--out", str(out)])
    assert code == 0
    assert "OK" in capsys.readouterr().out
    assert len(out.read_text().strip().splitlines()) > 1


def test_cli_verify_failure_exit(tmp_path, capsys):
    base = tmp_path / "b.json"
    assert main(["verify", "--group", "4", "--suite", "paley", "--p", "1.5", "--trials", "2",
                 "--out", str(tmp_path / "a.json"), "--write-baseline", str(base)]) == 0
    data = json.loads(base.read_text())
    base.write_text(json.dumps({k: v * 0.5 for k, v in data.items()}))
    code = main(["verify", "--group", "4", "--suite", "paley", "--p", "1.5", "--trials", "2",
                 "--out", str(tmp_path / "a.json"), "--baseline", str(base)])
    assert code == 1
    assert "FAIL" in capsys.readouterr().err


def test_cli_errors(tmp_path, capsys):
    assert main(["verify", "--group", "2xx", "--suite", "hy", "--p", "2", "--out",
                 str(tmp_path / "r.json")]) == 2
    assert main(["sweep", "--config", str(tmp_path / "missing.json")]) == 2
    capsys.readouterr()


def test_cli_sweep_config(tmp_path):
    cfg = small_config(suites=["hy"], output_path=str(tmp_path / "s.json"))
    (tmp_path / "c.json").write_text(cfg.to_json())
    assert main(["sweep", "--config", str(tmp_path / "c.json")]) == 0
    assert len(read_reports(tmp_path / "s.json")) == 2 * 2 * 3


def test_cli_default_config_round_trip(tmp_path):
    assert main(["default-config", "--out", str(tmp_path / "d.json")]) == 0
    assert SweepConfig.from_json((tmp_path / "d.json").read_text()) == SweepConfig()


def test_bench_small(capsys):
    rows = bench(["4", "2x3"], repeat=1)
    assert [r.order for r in rows] == [4, 6]
    assert all(r.scaled_diff <= 1e-12 for r in rows)
    assert "speedup" in format_table(rows)
    assert main(["bench", "--sizes", "4", "--repeat", "1"]) == 0
    capsys.readouterr()


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "weylkit", "default-config"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["seed"] == 42
