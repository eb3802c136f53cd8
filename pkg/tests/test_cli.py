"""CLI contract: subcommands, exit codes, report determinism, CSV formats."""

import json
import math
import os

import pytest

from hygls.cli import main
from hygls.suite import ConfigError, SuiteConfig, load_config, run_suite

SMALL_CONFIG = {
    "seed": 42,
    "trials": 2,
    "groups": [[8], [4, 3]],
    "A_values": [0.5, 1.0],
    "B_values": [1.0, 4.0],
    "exponent_grid": [[2.0, 2.0], [2.0, 4.0]],
    "conjugate_exponent_grid": [[1.0, 1.5], [2.0, 2.0]],
    "psi_specs": ["one", "natural"],
    "theorem_grid": 64,
}


@pytest.fixture()
def config_file(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(SMALL_CONFIG))
    return str(path)


def test_suite_exit_zero_and_report(config_file, tmp_path, capsys):
    report_path = tmp_path / "report.json"
    assert main(["suite", config_file, "--json", str(report_path)]) == 0
    data = json.loads(report_path.read_text())
    assert data["schema"] == 1
    assert data["counts"]["fail"] == 0
    assert data["counts"]["pass"] == len(data["records"])
    assert "tool_version" in data
    summary_total = sum(v["pass"] + v["fail"] for v in data["summary"].values())
    assert summary_total == len(data["records"])
    out = capsys.readouterr().out
    assert "fail" in out


def test_suite_deterministic_reports(config_file, tmp_path):
    p1, p2 = tmp_path / "r1.json", tmp_path / "r2.json"
    assert main(["suite", config_file, "--json", str(p1)]) == 0
    assert main(["suite", config_file, "--json", str(p2)]) == 0
    d1 = json.loads(p1.read_text())
    d2 = json.loads(p2.read_text())
    d1.pop("wall_time_s")
    d2.pop("wall_time_s")
    assert json.dumps(d1, sort_keys=True) == json.dumps(d2, sort_keys=True)


def test_suite_zero_tolerance_forces_failure(config_file, tmp_path):
    # float-level residuals cannot beat a zero tolerance
    code = main(["suite", config_file, "--json", str(tmp_path / "r.json"),
                 "--tolerance", "inversion=0"])
    assert code == 1


def test_suite_missing_config_exits_2(tmp_path):
    assert main(["suite", str(tmp_path / "nope.json")]) == 2


def test_suite_malformed_config_exits_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["suite", str(bad)]) == 2
    worse = tmp_path / "worse.json"
    worse.write_text(json.dumps({"trials": 0}))
    assert main(["suite", str(worse)]) == 2
    unknown = tmp_path / "unknown.json"
    unknown.write_text(json.dumps({"bogus_key": 1}))
    assert main(["suite", str(unknown)]) == 2


def test_suite_unwritable_report_exits_3(config_file):
    assert main(["suite", config_file, "--json", "/nonexistent-dir/report.json"]) == 3


def test_seed_env_overrides_only_seed(config_file, tmp_path, monkeypatch):
    monkeypatch.setenv("SEED", "777")
    path = tmp_path / "r.json"
    assert main(["suite", config_file, "--json", str(path)]) == 0
    data = json.loads(path.read_text())
    assert data["config"]["seed"] == 777
    assert data["config"]["trials"] == SMALL_CONFIG["trials"]
    monkeypatch.setenv("SEED", "not-a-number")
    assert main(["suite", config_file, "--json", str(path)]) == 2


def test_seed_flag_beats_env(config_file, tmp_path, monkeypatch):
    monkeypatch.setenv("SEED", "777")
    path = tmp_path / "r.json"
    assert main(["suite", config_file, "--json", str(path), "--seed", "123"]) == 0
    assert json.loads(path.read_text())["config"]["seed"] == 123


def test_mode_flag_round_trips(config_file, tmp_path):
    path = tmp_path / "r.json"
    code = main(["suite", config_file, "--json", str(path), "--mode", "as-written"])
    data = json.loads(path.read_text())
    assert data["config"]["mode"] == "as-written"
    assert code in (0, 1)  # the literal chain may legitimately fail


def test_scan_csv_format_and_values(tmp_path):
    out = tmp_path / "scan.csv"
    assert main(["scan", "1", "2", "1", "2", "32", str(out)]) == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "N,p,q,A,ratio,K_or_inf"
    rows = [line.split(",") for line in lines[1:]]
    assert [int(r[0]) for r in rows] == list(range(2, 33))
    for r in rows:
        n, ratio, k = int(r[0]), float(r[4]), r[5]
        assert ratio == pytest.approx(math.sqrt(n), rel=1e-9)
        assert k == "inf"


def test_scan_inside_Q_constant_ratio(tmp_path):
    out = tmp_path / "scan.csv"
    assert main(["scan", "2", "2", "1", "2", "16", str(out)]) == 0
    for line in out.read_text().strip().splitlines()[1:]:
        parts = line.split(",")
        assert float(parts[4]) == pytest.approx(1.0, rel=1e-9)
        assert float(parts[5]) == 1.0


def test_scan_bad_range_exits_2(tmp_path):
    assert main(["scan", "1", "2", "1", "64", "4", str(tmp_path / "s.csv")]) == 2


def test_scan_unwritable_exits_3():
    assert main(["scan", "1", "2", "1", "2", "8", "/nonexistent-dir/s.csv"]) == 3


def test_fundamental_csv(tmp_path):
    out = tmp_path / "fund.csv"
    assert main(["fundamental", "one", str(out), "--deltas", "1,2,4"]) == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "delta,s1,s2,phi"
    phis = [float(line.split(",")[3]) for line in lines[1:]]
    assert phis == pytest.approx([1.0, 2.0, 4.0], rel=1e-9)
    assert all(a <= b + 1e-12 for a, b in zip(phis, phis[1:]))


def test_fundamental_delta_one_row_is_inverse_inf_of_weight(tmp_path):
    out = tmp_path / "fund.csv"
    assert main(["fundamental", "const:4", str(out), "--deltas", "1"]) == 0
    phi = float(out.read_text().strip().splitlines()[1].split(",")[3])
    assert phi == pytest.approx(0.25, rel=1e-12)


def test_fundamental_span_and_bad_inputs(tmp_path):
    out = tmp_path / "fund.csv"
    assert main(["fundamental", "one", str(out), "--deltas", "16", "--span", "2,4"]) == 0
    assert float(out.read_text().strip().splitlines()[1].split(",")[3]) == pytest.approx(4.0, rel=1e-9)
    assert main(["fundamental", "one", str(out), "--deltas", ""]) == 2
    assert main(["fundamental", "bogus", str(out), "--deltas", "1"]) == 2
    assert main(["fundamental", "natural", str(out), "--deltas", "1"]) == 2


def test_opnorm_command(capsys):
    assert main(["opnorm", "8x3", "1.0", "2", "4"]) == 0
    out = capsys.readouterr().out
    assert "estimate: 1" in out
    assert "sharp constant: 1" in out


def test_opnorm_json_output(tmp_path):
    path = tmp_path / "op.json"
    assert main(["opnorm", "6", "2.0", "2", "2", "--json", str(path)]) == 0
    data = json.loads(path.read_text())
    assert data["estimate"] == pytest.approx(1.0, rel=1e-9)
    assert data["factors"] == [6]


def test_plot_flag_writes_figures(config_file, tmp_path):
    scan_csv = tmp_path / "scan.csv"
    assert main(["scan", "1", "2", "1", "2", "16", str(scan_csv), "--plot"]) == 0
    assert (tmp_path / "scan.png").exists()
    fund_csv = tmp_path / "fund.csv"
    assert main(["fundamental", "power:1", str(fund_csv), "--deltas", "0.5,1,2", "--plot"]) == 0
    assert (tmp_path / "fund.png").exists()
    report = tmp_path / "report.json"
    assert main(["suite", config_file, "--json", str(report), "--plot"]) == 0
    assert (tmp_path / "report.png").exists()


def test_load_config_roundtrip(config_file):
    config = load_config(config_file)
    assert isinstance(config, SuiteConfig)
    assert config.groups == [[8], [4, 3]]
    with pytest.raises(ConfigError):
        SuiteConfig.from_dict({"mode": "sideways"})
    with pytest.raises(ConfigError):
        SuiteConfig.from_dict({"groups": [[1]]})
    with pytest.raises(ConfigError):
        SuiteConfig.from_dict({"tolerances": {"hy": -1.0}})


def test_run_suite_summary_counts_match_records(config_file):
    config = load_config(config_file)
    report = run_suite(config)
    assert sum(v["pass"] + v["fail"] for v in report.summary.values()) == len(report.records)
    assert report.failures == 0
