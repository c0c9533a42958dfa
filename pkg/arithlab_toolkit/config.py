"""Runtime budgets loaded from a ``.lab_env`` file with environment overrides."""

import os
import logging
from dataclasses import dataclass, fields
from typing import Optional

from dotenv import dotenv_values

from arithlab_toolkit.errors import ConfigError

logger = logging.getLogger(__name__)

DEFAULT_ENV_FILE = ".lab_env"
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")

_KEYS = {
    "enum_budget": "ARITHLAB_ENUM_BUDGET",
    "bfs_budget": "ARITHLAB_BFS_BUDGET",
    "dense_spectrum_max": "ARITHLAB_DENSE_SPECTRUM_MAX",
    "point_count_max": "ARITHLAB_POINT_COUNT_MAX",
    "height_bits": "ARITHLAB_HEIGHT_BITS",
    "quat_disc_max": "ARITHLAB_QUAT_DISC_MAX",
    "num_threads": "ARITHLAB_NUM_THREADS",
    "log_level": "ARITHLAB_LOG_LEVEL",
}


@dataclass(frozen=True)
class LabConfig:
    enum_budget: int = 10_000_000
    bfs_budget: int = 10_000_000
    dense_spectrum_max: int = 5000
    point_count_max: int = 100_000
    height_bits: int = 8_000_000
    quat_disc_max: int = 1000
    num_threads: int = 4
    log_level: str = "WARNING"


def key_for(field_name: str) -> str:
    """Environment key that controls ``field_name``."""
    return _KEYS[field_name]


def _coerce(name: str, raw: str, kind: type):
    if kind is int:
        try:
            value = int(raw.replace("_", ""))
        except ValueError:
            raise ConfigError(f"{_KEYS[name]} must be an integer, got {raw!r}")
        if value <= 0:
            raise ConfigError(f"{_KEYS[name]} must be positive, got {value}")
        return value
    level = raw.strip().upper()
    if name == "log_level" and level not in LOG_LEVELS:
        raise ConfigError(f"{_KEYS[name]} must be one of {', '.join(LOG_LEVELS)}, got {raw!r}")
    return level


def load_config(env_path: Optional[str] = None) -> LabConfig:
    """Load budgets from ``env_path`` (default ``.lab_env``); process env wins over the file."""
    if env_path and not os.path.exists(env_path):
        raise ConfigError(f"config file {env_path} does not exist")
    env_path = env_path or DEFAULT_ENV_FILE
    file_values = dotenv_values(env_path) if os.path.exists(env_path) else {}
    if file_values:
        logger.debug("loaded %d keys from %s", len(file_values), env_path)

    overrides = {}
    for f in fields(LabConfig):
        key = _KEYS[f.name]
        raw = os.environ.get(key, file_values.get(key))
        if raw is None or raw == "":
            continue
        kind = int if isinstance(f.default, int) else str
        overrides[f.name] = _coerce(f.name, str(raw), kind)
    return LabConfig(**overrides)


_active: Optional[LabConfig] = None


def get_config() -> LabConfig:
    """The process-wide configuration, loaded lazily on first use."""
    global _active
    if _active is None:
        _active = load_config()
    return _active


def set_config(config: LabConfig) -> None:
    global _active
    _active = config
