"""Unit tests for the command line interface."""

import numpy as np
import pytest

from ltfsm import SeriesConfig, flat_params, simulate_ltfsm, tune
from ltfsm.cli import main
from ltfsm.streams import RandomStream

SIM_ARGS = [
    "simulate",
    "--alpha", "1.2",
    "--hurst", "0.5",
    "--epsilon", "0.8",
    "--seed", "42",
    "--grid", "20",
    "--max-points", "128",
]


def _simulate(tmp_path, name, extra=()):
    out = tmp_path / name
    code = main(SIM_ARGS + ["--out", str(out)] + list(extra))
    return code, out


# -- bounds -----------------------------------------------------------------------


def test_bounds_prints_the_frozen_budget(capsys):
    assert main(["bounds", "--alpha", "1", "--q", "2", "--N", "5", "--Mq", "1"]) == 0
    lines = capsys.readouterr().out.splitlines()
    report = dict(line.split(" = ") for line in lines)
    assert float(report["truncation_bound"]) == pytest.approx(0.72, rel=1e-9)
    assert float(report["approximation_bound"]) == pytest.approx(0.36, rel=1e-9)
    assert float(report["B_q"]) == 1.0
    assert float(report["H_Nplus1_q"]) == pytest.approx(1.8, rel=1e-9)
    assert report["P"] == "inf"


def test_bounds_finite_block_and_lp_variants(capsys):
    code = main(
        ["bounds", "--alpha", "1", "--q", "3", "--N", "5", "--P", "10",
         "--p", "2", "--volK", "2"]
    )
    assert code == 0
    report = dict(line.split(" = ") for line in capsys.readouterr().out.splitlines())
    assert "truncation_bound_lp" in report
    assert "approximation_bound_lp" in report
    assert float(report["P"]) == 10.0


def test_bounds_requires_both_lp_options(capsys):
    assert main(["bounds", "--alpha", "1", "--q", "3", "--N", "5", "--p", "2"]) == 2
    assert "volK" in capsys.readouterr().err


def test_bounds_rejects_a_fractional_block_end(capsys):
    assert main(["bounds", "--alpha", "1", "--q", "2", "--N", "5", "--P", "7.5"]) == 2


def test_bounds_writes_a_rerunnable_report(tmp_path, capsys):
    out = tmp_path / "budget.txt"
    assert main(["bounds", "--alpha", "1.2", "--q", "2.5", "--N", "4",
                 "--out", str(out)]) == 0
    first = out.read_bytes()
    capsys.readouterr()
    rerun = tmp_path / "budget2.txt"
    assert main(["bounds", "--config", str(out) + ".manifest", "--out", str(rerun)]) == 0
    assert rerun.read_bytes() == first


# -- simulate -----------------------------------------------------------------------


def test_simulate_writes_the_path_and_summary(tmp_path, capsys):
    code, out = _simulate(tmp_path, "path.csv")
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "t,value"
    assert lines[1] == "0,0"
    assert len(lines) == 22
    stdout = capsys.readouterr().out
    assert "holder_exponent_estimate = " in stdout
    assert "terms = " in stdout


def test_simulate_csv_round_trips_the_library_values(tmp_path):
    with pytest.warns(RuntimeWarning):
        code, out = _simulate(tmp_path, "path.csv")
    assert code == 0
    data = np.loadtxt(out, delimiter=",", skiprows=1)
    cfg = SeriesConfig(
        alpha=1.2, hurst=0.5, epsilon=0.8, grid_points=20, max_points=128
    )
    with pytest.warns(RuntimeWarning):
        path = simulate_ltfsm(cfg, tune(cfg), RandomStream(42))
    assert np.array_equal(data[:, 0], path.times)
    assert np.array_equal(data[:, 1], path.values)


def test_simulate_manifest_reruns_byte_identically(tmp_path):
    _, first = _simulate(tmp_path, "a.csv")
    rerun = tmp_path / "b.csv"
    assert main(["simulate", "--config", str(first) + ".manifest",
                 "--out", str(rerun)]) == 0
    assert rerun.read_bytes() == first.read_bytes()
    manifest = (tmp_path / "a.csv.manifest").read_text()
    assert "command = simulate" in manifest
    assert "seed = 42" in manifest


def test_simulate_flags_override_the_config_file(tmp_path):
    cfg = tmp_path / "base.cfg"
    cfg.write_text("alpha = 1.2\nhurst = 0.5\nepsilon = 0.9\nseed = 7\n")
    out1 = tmp_path / "c1.csv"
    assert main(["simulate", "--config", str(cfg), "--epsilon", "0.8",
                 "--grid", "20", "--max-points", "128", "--out", str(out1)]) == 0
    _, direct = _simulate(tmp_path, "c2.csv", ["--seed", "7"])
    assert out1.read_bytes() == direct.read_bytes()
    manifest = (tmp_path / "c1.csv.manifest").read_text()
    assert "epsilon = 0.80000000000000004" in manifest


def test_simulate_gaussian_density_form(tmp_path):
    code, out = _simulate(tmp_path, "g.csv", ["--density", "gaussian"])
    assert code == 0
    _, lap = _simulate(tmp_path, "l.csv")
    assert out.read_bytes() != lap.read_bytes()


def test_simulate_rejects_bad_configurations(tmp_path, capsys):
    assert main(["simulate", "--alpha", "2", "--hurst", "0.5", "--epsilon", "0.5",
                 "--seed", "1"]) == 2
    assert "alpha" in capsys.readouterr().err
    assert main(["simulate", "--alpha", "1", "--hurst", "0.5", "--epsilon", "0.5",
                 "--seed", "1", "--density", "poisson"]) == 2
    assert main(["simulate", "--hurst", "0.5", "--epsilon", "0.5", "--seed", "1"]) == 2
    assert "missing required option --alpha" in capsys.readouterr().err


def test_unknown_config_keys_are_rejected(tmp_path, capsys):
    cfg = tmp_path / "typo.cfg"
    cfg.write_text("alpha = 1.2\nhurst = 0.5\nepsilon = 0.5\nseed = 1\nalpa = 2\n")
    assert main(["simulate", "--config", str(cfg)]) == 2
    assert "alpa" in capsys.readouterr().err


def test_manifests_refuse_to_cross_commands(tmp_path, capsys):
    _, out = _simulate(tmp_path, "x.csv")
    assert main(["stable-check", "--config", str(out) + ".manifest"]) == 2
    assert "simulate" in capsys.readouterr().err


def test_missing_config_file_is_a_config_error(capsys):
    assert main(["simulate", "--config", "/nonexistent/run.cfg"]) == 2


# -- validate-cf ----------------------------------------------------------------------


CF_ARGS = [
    "validate-cf",
    "--alpha", "1",
    "--hurst", "0.5",
    "--seed", "7",
    "--paths", "200",
    "--times", "6",
    "--terms", "8",
    "--bandwidth", "4",
    "--points", "32",
]


def test_validate_cf_passes_with_a_easy_threshold(tmp_path, capsys):
    out = tmp_path / "cf.csv"
    code = main(CF_ARGS + ["--threshold", "0.0", "--out", str(out)])
    assert code == 0
    report = dict(
        line.split(" = ") for line in capsys.readouterr().out.splitlines()
    )
    assert report["status"] == "pass"
    assert report["method"] == "series"
    lines = out.read_text().splitlines()
    assert lines[0] == "t,log_abs_cf,stderr"
    assert len(lines) == 7


def test_validate_cf_fails_below_threshold(tmp_path, capsys):
    out = tmp_path / "cf.csv"
    code = main(CF_ARGS + ["--threshold", "1.0", "--out", str(out)])
    assert code == 3
    assert "status = fail" in capsys.readouterr().out
    assert out.exists()  # the data is still written for inspection


def test_validate_cf_manifest_rerun_is_byte_identical(tmp_path):
    out = tmp_path / "cf.csv"
    assert main(CF_ARGS + ["--out", str(out)]) in (0, 3)
    rerun = tmp_path / "cf2.csv"
    assert main(["validate-cf", "--config", str(out) + ".manifest",
                 "--out", str(rerun)]) in (0, 3)
    assert rerun.read_bytes() == out.read_bytes()


def test_validate_cf_requires_the_linear_regime(capsys):
    assert main(["validate-cf", "--alpha", "1.3", "--hurst", "0.5", "--seed", "1"]) == 2
    assert "alpha must be exactly 1" in capsys.readouterr().err


def test_validate_cf_rwrr_method(tmp_path, capsys):
    out = tmp_path / "cfr.csv"
    code = main(["validate-cf", "--alpha", "1", "--hurst", "0.5", "--seed", "7",
                 "--paths", "150", "--times", "5", "--method", "rwrr",
                 "--steps", "500", "--threshold", "0.5", "--out", str(out)])
    assert code in (0, 3)
    assert "method = rwrr" in capsys.readouterr().out
    assert main(["validate-cf", "--alpha", "1", "--hurst", "0.5", "--seed", "7",
                 "--method", "fourier"]) == 2


# -- stable-check ------------------------------------------------------------------------


def test_stable_check_pass_and_fail_thresholds(tmp_path, capsys):
    args = ["stable-check", "--alpha", "1.5", "--terms", "400",
            "--samples", "400", "--seed", "3"]
    assert main(args + ["--threshold", "1.0"]) == 0
    assert "status = pass" in capsys.readouterr().out
    assert main(args + ["--threshold", "1e-9"]) == 3
    assert "status = fail" in capsys.readouterr().out


def test_stable_check_writes_a_rerunnable_report(tmp_path):
    out = tmp_path / "sc.txt"
    args = ["stable-check", "--alpha", "1.5", "--terms", "300", "--samples",
            "300", "--seed", "3", "--threshold", "0.5", "--out", str(out)]
    assert main(args) == 0
    rerun = tmp_path / "sc2.txt"
    assert main(["stable-check", "--config", str(out) + ".manifest",
                 "--out", str(rerun)]) == 0
    assert rerun.read_bytes() == out.read_bytes()


def test_stable_check_rejects_the_gaussian_edge(capsys):
    assert main(["stable-check", "--alpha", "2", "--seed", "1"]) == 2
    assert "(0, 2)" in capsys.readouterr().err


# -- top level --------------------------------------------------------------------------------


def test_no_subcommand_prints_help(capsys):
    assert main([]) == 2
    assert "simulate" in capsys.readouterr().out


def test_unknown_subcommand_exits_via_argparse():
    with pytest.raises(SystemExit):
        main(["transmogrify"])
