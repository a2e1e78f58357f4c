#!/usr/bin/env python3
"""
Configuration for the eogx command line tool

Settings live in ~/.config/eogx/config.json (or wherever EOGX_CONFIG points)
and are merged over the defaults below; command line flags win over both.
"""

import json
import logging
import os
from pathlib import Path
from typing import Any, Dict, List, Optional

logger = logging.getLogger(__name__)

CONFIG_FILE = Path.home() / ".config" / "eogx" / "config.json"
CONFIG_ENV = "EOGX_CONFIG"
THREADS_ENV = "EOGX_THREADS"

REPORT_FORMATS = ("csv", "json")


def get_config_path() -> Path:
    """Config file location, honoring EOGX_CONFIG"""
    override = os.environ.get(CONFIG_ENV)
    return Path(override).expanduser() if override else CONFIG_FILE


def get_default_config() -> Dict[str, Any]:
    """Get default configuration values"""
    return {
        # Randomized suites
        "seed": 7,
        "samples": 1000,
        "random_vertices": 40,
        # Search budgets, per exact_ex / eex_exact call
        "budget_nodes": 5_000_000,
        "budget_secs": 600,
        # 0 means one worker per CPU
        "threads": 0,
        # Exhaustive sweep sizes
        "exhaustive_max_edges": 6,  # edge-ordered trees
        "exhaustive_bigraph_edges": 8,  # connected bigraphs
        "exhaustive_matrix_size": 4,  # all matrices up to this many rows and columns
        # Largest n for table1 and the oracle suite
        "max_n": 6,
        "report_format": "json",
    }


def _check(config: Dict[str, Any]) -> Dict[str, Any]:
    for key in ("seed", "samples", "random_vertices", "budget_nodes", "threads",
                "exhaustive_max_edges", "exhaustive_bigraph_edges",
                "exhaustive_matrix_size", "max_n"):
        value = config[key]
        if isinstance(value, bool) or not isinstance(value, int) or value < 0:
            raise ValueError(f"Config value '{key}' must be a non-negative integer, got {value!r}")
    if not isinstance(config["budget_secs"], (int, float)) or config["budget_secs"] <= 0:
        raise ValueError(f"Config value 'budget_secs' must be positive, got {config['budget_secs']!r}")
    if config["report_format"] not in REPORT_FORMATS:
        raise ValueError(
            f"Config value 'report_format' must be one of {', '.join(REPORT_FORMATS)}, "
            f"got {config['report_format']!r}"
        )
    return config


def load_config(config_file: Optional[Path] = None) -> Dict[str, Any]:
    """Load configuration, user values over defaults"""
    default_config = get_default_config()
    path = config_file or get_config_path()

    if not path.exists():
        logger.debug("No config file at %s, using defaults", path)
        return default_config

    try:
        with open(path, "r") as f:
            user_config = json.load(f)
    except (json.JSONDecodeError, OSError):
        logger.warning("Could not load config file %s, using defaults", path)
        return default_config

    if not isinstance(user_config, dict):
        logger.warning("Config file %s does not hold a JSON object, using defaults", path)
        return default_config

    unknown = sorted(set(user_config) - set(default_config))
    if unknown:
        logger.warning("Ignoring unknown config keys: %s", ", ".join(unknown))

    merged_config = {**default_config, **{k: v for k, v in user_config.items() if k not in unknown}}
    return _check(merged_config)


def save_config(config: Dict[str, Any], config_file: Optional[Path] = None) -> Path:
    """Save configuration to file"""
    path = config_file or get_config_path()
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        json.dump(config, f, indent=2)
    return path


def apply_config_overrides(config: Dict[str, Any], args: Any) -> List[str]:
    """Apply environment and command line overrides to config values"""
    overrides = []

    threads_env = os.environ.get(THREADS_ENV)
    if threads_env:
        try:
            config["threads"] = int(threads_env)
        except ValueError:
            raise ValueError(f"{THREADS_ENV} must be an integer, got {threads_env!r}") from None
        overrides.append(f"Threads: {threads_env} ({THREADS_ENV})")

    for flag, key in (
        ("seed", "seed"),
        ("samples", "samples"),
        ("budget_nodes", "budget_nodes"),
        ("budget_secs", "budget_secs"),
        ("threads", "threads"),
        ("max_edges", "exhaustive_max_edges"),
        ("max_bigraph_edges", "exhaustive_bigraph_edges"),
        ("max_n", "max_n"),
        ("format", "report_format"),
    ):
        value = getattr(args, flag, None)
        if value is not None:
            config[key] = value
            overrides.append(f"{key}: {value}")

    _check(config)
    return overrides


def resolve_threads(config: Dict[str, Any]) -> int:
    """Worker count, with 0 meaning the available parallelism"""
    threads = int(config["threads"])
    return threads if threads > 0 else (os.cpu_count() or 1)
