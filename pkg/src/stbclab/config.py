"""
Simulation configuration and its JSON loader.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Dict, List, Mapping

from .codes import CODES
from .common import ConfigError, normalize_name
from .constellation import CONSTELLATION_NAMES
from .decode import DECODERS, DEFAULT_ML_BUDGET

DEFAULT_SNR_DB = [0.0, 4.0, 8.0, 12.0, 16.0, 20.0, 24.0]
DEFAULT_IMBALANCE_DB = [0.0, 5.0, 10.0, 15.0, 20.0]
SEED_LIMIT = 2**64


@dataclass(frozen=True)
class SimConfig:
    """
    Everything that determines a sweep. The CSV output is a pure function of
    this object.
    """

    code: str = "proposed"
    decoder: str = "ml"
    constellation: str = "qpsk"
    snr_db: List[float] = field(default_factory=lambda: list(DEFAULT_SNR_DB))
    imbalance_db: List[float] = field(default_factory=lambda: list(DEFAULT_IMBALANCE_DB))
    max_trials: int = 10_000_000
    min_bit_errors: int = 200
    seed: int = 0
    workers: int = 1
    chunk_size: int = 2000
    ml_budget: int = DEFAULT_ML_BUDGET

    def __post_init__(self) -> None:
        validate(self)

    def with_overrides(self, **overrides: Any) -> "SimConfig":
        """
        Copy with non-None overrides applied (CLI flags win over file values).
        """
        changes = {key: value for key, value in overrides.items() if value is not None}
        return replace(self, **changes)


def _require_int(name: str, value: Any, minimum: int) -> None:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise ConfigError(f"{name} must be >= {minimum}, got {value}")


def _number_list(name: str, value: Any) -> List[float]:
    items = value if isinstance(value, (list, tuple)) else [value]
    if not items:
        raise ConfigError(f"{name} must not be empty")
    numbers: List[float] = []
    for item in items:
        if isinstance(item, bool) or not isinstance(item, (int, float)):
            raise ConfigError(f"{name} entries must be numbers, got {item!r}")
        numbers.append(float(item))
    return numbers


def validate(cfg: SimConfig) -> None:
    for name, registry in (("code", CODES), ("decoder", DECODERS), ("constellation", CONSTELLATION_NAMES)):
        value = getattr(cfg, name)
        if not isinstance(value, str) or normalize_name(value) not in registry:
            choices = ", ".join(sorted(registry))
            raise ConfigError(f"{name} must be one of {choices}, got {value!r}")
        object.__setattr__(cfg, name, normalize_name(value))

    object.__setattr__(cfg, "snr_db", _number_list("snr_db", cfg.snr_db))
    object.__setattr__(cfg, "imbalance_db", _number_list("imbalance_db", cfg.imbalance_db))

    _require_int("max_trials", cfg.max_trials, 1)
    _require_int("min_bit_errors", cfg.min_bit_errors, 1)
    _require_int("workers", cfg.workers, 1)
    _require_int("chunk_size", cfg.chunk_size, 1)
    _require_int("ml_budget", cfg.ml_budget, 1)
    _require_int("seed", cfg.seed, 0)
    if cfg.seed >= SEED_LIMIT:
        raise ConfigError(f"seed must fit in 64 bits, got {cfg.seed}")

    order = CONSTELLATION_NAMES[cfg.constellation]
    if cfg.code != "alamouti" and cfg.decoder == "ml" and order**4 > cfg.ml_budget:
        raise ConfigError(
            f"ML on {cfg.constellation} needs {order**4} hypotheses, over ml_budget {cfg.ml_budget}; use cond-ml"
        )


def config_from_mapping(data: Mapping[str, Any]) -> SimConfig:
    """
    Build a SimConfig from a flat mapping; unknown keys are rejected.
    """
    if not isinstance(data, Mapping):
        raise ConfigError("config must be a flat JSON object")
    known = {item.name for item in fields(SimConfig)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"unknown config key(s): {', '.join(unknown)}")
    return SimConfig(**dict(data))


def load_config(path: Path) -> SimConfig:
    """
    Read a JSON config file.
    """
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        data: Dict[str, Any] = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    return config_from_mapping(data)
