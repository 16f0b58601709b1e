"""Tests for the exporters and the stbc_cli entry point."""

import importlib.util
import json
from pathlib import Path

import pandas as pd
import pytest

from stbclab.common import IoFailure
from stbclab.exporters import export_csv, export_json
from stbclab.models import CSV_COLUMNS

CLI_PATH = Path(__file__).resolve().parents[1] / "scripts" / "stbc_cli.py"


@pytest.fixture(scope="module")
def cli():
    spec = importlib.util.spec_from_file_location("stbc_cli", CLI_PATH)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


@pytest.fixture
def small_config(tmp_path) -> Path:
    path = tmp_path / "small.json"
    path.write_text(
        json.dumps(
            {
                "snr_db": [0, 10],
                "imbalance_db": [0],
                "max_trials": 60,
                "min_bit_errors": 1000,
                "chunk_size": 20,
            }
        ),
        encoding="utf-8",
    )
    return path


class TestExporters:
    def test_json_records(self, tmp_path) -> None:
        target = tmp_path / "nested" / "out.json"
        export_json([{"a": 1}], target)
        assert json.loads(target.read_text(encoding="utf-8")) == [{"a": 1}]

    def test_json_mapping(self, tmp_path) -> None:
        target = tmp_path / "report.json"
        export_json({"ok": True, "checks": []}, target)
        assert json.loads(target.read_text(encoding="utf-8")) == {"ok": True, "checks": []}

    def test_csv_creates_parent(self, tmp_path) -> None:
        target = tmp_path / "deep" / "rows.csv"
        export_csv([{"x": 0.1, "y": 2}], target)
        assert target.read_text(encoding="utf-8") == "x,y\n0.1,2\n"

    def test_unwritable_destination(self, tmp_path) -> None:
        blocker = tmp_path / "file"
        blocker.write_text("", encoding="utf-8")
        with pytest.raises(IoFailure):
            export_csv([{"x": 1}], blocker / "rows.csv")


class TestCli:
    def test_verify_passes(self, cli, capsys, tmp_path) -> None:
        out = tmp_path / "checks.csv"
        assert cli.main(["verify", "--csv", str(out)]) == 0
        printed = capsys.readouterr().out
        assert "coding_gain: OK" in printed
        assert set(pd.read_csv(out)["passed"]) == {True}

    def test_verify_json_report(self, cli, tmp_path) -> None:
        out = tmp_path / "report" / "verify.json"
        assert cli.main(["verify", "--json", str(out)]) == 0
        report = json.loads(out.read_text(encoding="utf-8"))
        assert report["ok"] is True
        assert report["rank"]["pairs_checked"] == 32_640
        assert report["coding_gain"]["min_eigen_product_root"] == pytest.approx(2.0)
        assert [row["decoder"] for row in report["complexity"]] == ["ml", "cond-ml", "zf"]

    def test_ber_writes_csv(self, cli, small_config, tmp_path) -> None:
        out = tmp_path / "ber.csv"
        assert cli.main(["ber", "--config", str(small_config), "--decoder", "cond-ml", "--out", str(out)]) == 0
        frame = pd.read_csv(out)
        assert tuple(frame.columns) == CSV_COLUMNS
        assert list(frame.decoder) == ["cond-ml", "cond-ml"]
        assert list(frame.trials) == [60, 60]

    def test_ber_to_stdout(self, cli, small_config, capsys) -> None:
        assert cli.main(["ber", "--config", str(small_config)]) == 0
        assert capsys.readouterr().out.startswith(",".join(CSV_COLUMNS))

    def test_config_error_exit_code(self, cli, tmp_path, capsys) -> None:
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"workers": 0}), encoding="utf-8")
        assert cli.main(["ber", "--config", str(path)]) == 2
        assert "workers" in capsys.readouterr().err

    def test_sweep_imbalance(self, cli, small_config, capsys) -> None:
        assert cli.main(["sweep-imbalance", "--config", str(small_config), "--target-ber", "0.05"]) == 0
        assert "imbalance 0 dB" in capsys.readouterr().out

    def test_complexity(self, cli, capsys) -> None:
        assert cli.main(["complexity", "--constellations", "qpsk", "qam16"]) == 0
        printed = capsys.readouterr().out
        assert "qpsk ml: 256 evals" in printed
        assert "qam16 cond-ml: 256 evals" in printed

    def test_unknown_constellation(self, cli, capsys) -> None:
        assert cli.main(["verify", "--constellation", "8psk"]) == 2

    def test_verify_qam64_passes(self, cli, capsys) -> None:
        assert cli.main(["verify", "--constellation", "qam64", "--sampled-pairs", "2000"]) == 0
        assert "coding_gain: OK" in capsys.readouterr().out

    def test_negative_sample_size_exit_code(self, cli, capsys) -> None:
        assert cli.main(["verify", "--sampled-pairs", "-1", "--constellation", "qam16"]) == 2
        assert "sampled_pairs" in capsys.readouterr().err
