import json
import os
import subprocess
import sys

import pytest

from rulefill import load_csv
from rulefill.cli import main


def run_cli(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_mine_writes_rules_and_summary(tmp_path, car_csv, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    out = tmp_path / "car.rules.jsonl"
    code, stdout, _ = run_cli(
        ["mine", "--data", str(car_csv), "--support", "40", "--confidence", "60",
         "--out", str(out)],
        capsys,
    )
    assert code == 0
    assert out.exists()
    assert "config:" in stdout and "mined" in stdout
    config = json.loads(stdout.splitlines()[0].removeprefix("config: "))
    assert config["min_support"] == 0.4 and config["min_confidence"] == 0.6


def test_mine_accepts_fractions_too(tmp_path, car_csv, capsys):
    out = tmp_path / "r.jsonl"
    code, stdout, _ = run_cli(
        ["mine", "--data", str(car_csv), "--support", "0.4", "--confidence", "0.6",
         "--out", str(out)],
        capsys,
    )
    assert code == 0
    config = json.loads(stdout.splitlines()[0].removeprefix("config: "))
    assert config["min_support"] == 0.4


def test_mine_support_out_of_range_is_usage_error(car_csv):
    with pytest.raises(SystemExit) as excinfo:
        main(["mine", "--data", str(car_csv), "--support", "101"])
    assert excinfo.value.code == 2


def test_mine_empty_dataset_exits_one(tmp_path, capsys):
    empty = tmp_path / "empty.csv"
    empty.write_text("a,b\n")
    code, _, stderr = run_cli(["mine", "--data", str(empty)], capsys)
    assert code == 1
    assert "empty dataset" in stderr


def test_impute_roundtrip(tmp_path, credit_csv, capsys):
    out = tmp_path / "done.csv"
    report = tmp_path / "report.json"
    code, stdout, _ = run_cli(
        ["impute", "--data", str(credit_csv), "--marker", "?",
         "--support-count", "60", "--confidence", "60", "--k", "10",
         "--out", str(out), "--report", str(report)],
        capsys,
    )
    assert code == 0
    completed = load_csv(out, "?")
    assert not completed.missing_cells()
    payload = json.loads(report.read_text())
    assert payload["totals"]["imputed"] == payload["totals"]["rules"] + payload["totals"]["knn"]
    assert "parameters" in payload


def test_impute_without_missing_cells_notes_zero(tmp_path, car_csv, capsys):
    out = tmp_path / "done.csv"
    report = tmp_path / "report.json"
    code, stdout, _ = run_cli(
        ["impute", "--data", str(car_csv), "--out", str(out), "--report", str(report)],
        capsys,
    )
    assert code == 0
    assert "imputed 0 cells" in stdout
    assert load_csv(out, "?").n_records == 1728


def test_impute_schema_mismatch_exits_one(tmp_path, car_csv, credit_csv, capsys):
    rules = tmp_path / "car.rules.jsonl"
    code, _, _ = run_cli(["mine", "--data", str(car_csv), "--out", str(rules)], capsys)
    assert code == 0
    code, _, stderr = run_cli(
        ["impute", "--data", str(credit_csv), "--rules", str(rules)], capsys
    )
    assert code == 1
    assert "schema" in stderr


def test_bench_sweep_reports(tmp_path, car_csv, capsys):
    out_dir = tmp_path / "bench"
    code, stdout, _ = run_cli(
        ["bench", "--data", str(car_csv), "--sweep", "missing-rate",
         "--values", "5,10", "--methods", "hmit,knn", "--seed", "7",
         "--out-dir", str(out_dir)],
        capsys,
    )
    assert code == 0
    assert (out_dir / "report.json").exists()
    payload = json.loads((out_dir / "report.json").read_text())
    assert payload["spec"]["seed"] == 7
    assert payload["spec"]["sweep_values"] == [0.05, 0.10]
    assert len(payload["rows"]) == 4
    assert "config:" in stdout


def test_bench_range_values_and_fixed_mask_coverage(tmp_path, car_csv, capsys):
    out_dir = tmp_path / "bench"
    code, stdout, _ = run_cli(
        ["bench", "--data", str(car_csv), "--sweep", "support",
         "--values", "10..60", "--methods", "hmit", "--seed", "3",
         "--out-dir", str(out_dir)],
        capsys,
    )
    assert code == 0
    payload = json.loads((out_dir / "report.json").read_text())
    supports = [row["min_support"] for row in payload["rows"]]
    assert supports == [0.1, 0.2, 0.3, 0.4, 0.5, 0.6]
    masks = {row["n_missing"] for row in payload["rows"]}
    assert len(masks) == 1
    coverages = [row["rule_coverage"] for row in payload["rows"]]
    assert coverages == sorted(coverages, reverse=True)


def test_bench_empty_values_is_usage_error(car_csv):
    with pytest.raises(SystemExit) as excinfo:
        main(["bench", "--data", str(car_csv), "--sweep", "support", "--values", ""])
    assert excinfo.value.code == 2


def test_bench_sweep_without_values_exits_one(car_csv, capsys):
    code, _, stderr = run_cli(
        ["bench", "--data", str(car_csv), "--sweep", "support"], capsys
    )
    assert code == 1
    assert "--values" in stderr


def test_unknown_method_is_usage_error(car_csv):
    with pytest.raises(SystemExit) as excinfo:
        main(["bench", "--data", str(car_csv), "--methods", "tree"])
    assert excinfo.value.code == 2


def test_data_dir_env_var(tmp_path, car_csv, capsys, monkeypatch):
    monkeypatch.setenv("RULEFILL_DATA_DIR", str(car_csv.parent))
    monkeypatch.chdir(tmp_path)
    code, _, _ = run_cli(
        ["mine", "--data", car_csv.name, "--out", str(tmp_path / "r.jsonl")], capsys
    )
    assert code == 0


def test_console_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "rulefill", "--help"],
        capture_output=True,
        text=True,
        env={**os.environ},
    )
    assert proc.returncode == 0
    assert "mine" in proc.stdout and "impute" in proc.stdout and "bench" in proc.stdout
