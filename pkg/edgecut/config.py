import copy
import logging
import os
from pathlib import Path

import yaml

from .errors import EdgeCutError

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).parent.parent / "config.yaml"

DEFAULTS = {
    "seed": 20240601,
    "truncation": {"depth": 4, "witnesses": 3},
    "treecut": {"backend": "paper"},
    "halin": {"seed_size": 2},
    "logging": {"level": "WARNING"},
    "output": {"format": "json"},
    "report": {"directory": "report"},
}

BACKENDS = ("paper", "gomoryhu")
FORMATS = ("json", "dot")


def _merge(base, override):
    merged = copy.deepcopy(base)
    for key, value in (override or {}).items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config(config_path=None):
    """
    Loads configuration from a YAML file and merges it over the built-in defaults.
    EDGECUT_SEED and EDGECUT_LOG_LEVEL in the environment take precedence.
    """
    if config_path is not None:
        path = Path(config_path)
        if not path.exists():
            raise FileNotFoundError(f"Configuration file {config_path} not found.")
    else:
        path = DEFAULT_CONFIG_PATH if DEFAULT_CONFIG_PATH.exists() else None

    loaded = {}
    if path is not None:
        with open(path, "r") as f:
            loaded = yaml.safe_load(f) or {}
        logger.debug(f"Loaded configuration from {path}")

    config = _merge(DEFAULTS, loaded)

    seed = os.environ.get("EDGECUT_SEED")
    if seed:
        try:
            config["seed"] = int(seed)
        except ValueError:
            raise EdgeCutError("badconfig", f"EDGECUT_SEED must be an integer, got {seed!r}")
    level = os.environ.get("EDGECUT_LOG_LEVEL")
    if level:
        config["logging"]["level"] = level.upper()

    if config["treecut"]["backend"] not in BACKENDS:
        raise EdgeCutError("badconfig", f"Unknown backend: {config['treecut']['backend']}")
    if config["output"]["format"] not in FORMATS:
        raise EdgeCutError("badconfig", f"Unknown output format: {config['output']['format']}")
    return config
