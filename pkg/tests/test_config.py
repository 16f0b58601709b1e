"""Tests for SimConfig validation and the JSON loader."""

import json

import pytest

from stbclab.common import ConfigError
from stbclab.config import SimConfig, config_from_mapping, load_config


class TestSimConfig:
    def test_defaults(self) -> None:
        cfg = SimConfig()
        assert (cfg.code, cfg.decoder, cfg.constellation) == ("proposed", "ml", "qpsk")
        assert cfg.snr_db == [0.0, 4.0, 8.0, 12.0, 16.0, 20.0, 24.0]
        assert cfg.imbalance_db == [0.0, 5.0, 10.0, 15.0, 20.0]
        assert (cfg.max_trials, cfg.min_bit_errors, cfg.seed, cfg.workers) == (10_000_000, 200, 0, 1)

    def test_names_are_normalized(self) -> None:
        cfg = SimConfig(decoder="Cond_ML", constellation="QAM16")
        assert cfg.decoder == "cond-ml"
        assert cfg.constellation == "qam16"

    def test_scalar_snr_becomes_list(self) -> None:
        assert SimConfig(snr_db=12).snr_db == [12.0]

    @pytest.mark.parametrize(
        "overrides",
        [
            {"code": "silver"},
            {"decoder": "sphere"},
            {"constellation": "8psk"},
            {"snr_db": []},
            {"snr_db": ["high"]},
            {"max_trials": 0},
            {"min_bit_errors": 0},
            {"workers": 0},
            {"workers": True},
            {"seed": -1},
            {"seed": 2**64},
            {"max_trials": 10.5},
        ],
    )
    def test_invalid_values(self, overrides) -> None:
        with pytest.raises(ConfigError):
            SimConfig(**overrides)

    def test_ml_budget_guards_large_alphabets(self) -> None:
        with pytest.raises(ConfigError):
            SimConfig(constellation="qam16")
        assert SimConfig(constellation="qam16", ml_budget=16**4).ml_budget == 65536
        assert SimConfig(code="alamouti", constellation="qam64").decoder == "ml"

    def test_overrides_skip_none(self) -> None:
        cfg = SimConfig(seed=4).with_overrides(seed=None, workers=2, decoder="zf")
        assert (cfg.seed, cfg.workers, cfg.decoder) == (4, 2, "zf")

    def test_overrides_are_validated(self) -> None:
        with pytest.raises(ConfigError):
            SimConfig().with_overrides(workers=-3)


class TestLoadConfig:
    def test_round_trip_from_file(self, tmp_path) -> None:
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"decoder": "cond-ml", "snr_db": [0, 10], "seed": 9}), encoding="utf-8")
        cfg = load_config(path)
        assert cfg.decoder == "cond-ml"
        assert cfg.snr_db == [0.0, 10.0]
        assert cfg.seed == 9

    def test_unknown_key(self) -> None:
        with pytest.raises(ConfigError, match="unknown config key"):
            config_from_mapping({"snr": [0]})

    def test_not_an_object(self) -> None:
        with pytest.raises(ConfigError):
            config_from_mapping([1, 2, 3])

    def test_missing_file(self, tmp_path) -> None:
        with pytest.raises(ConfigError):
            load_config(tmp_path / "absent.json")

    def test_bad_json(self, tmp_path) -> None:
        path = tmp_path / "cfg.json"
        path.write_text("{decoder: ml", encoding="utf-8")
        with pytest.raises(ConfigError):
            load_config(path)
