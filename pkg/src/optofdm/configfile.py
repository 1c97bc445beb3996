"""Flat key = value experiment config files.

Lines are ``key = value``; blank lines and ``#`` comments are ignored.
Keys mirror :class:`optofdm.harness.ExperimentConfig` fields; list
values (``orders``, ``scales``) are comma-separated.  Example::

    format = see
    n = 64
    orders = 16
    components = 2
    allocation = SEE_b
    receiver = hard
    snr_start = 12
    snr_stop = 30
    snr_step = 1
    seed = 7
"""

from __future__ import annotations

import dataclasses
from pathlib import Path

from .harness import ConfigError, ExperimentConfig

__all__ = ["parse_value", "read_config_file", "config_from_sources"]

_FIELDS = {f.name: f for f in dataclasses.fields(ExperimentConfig)}
_BOOL = {"true": True, "false": False, "1": True, "0": False, "yes": True, "no": False}


def parse_value(key: str, raw: str):
    raw = raw.strip()
    if key not in _FIELDS:
        raise ConfigError(f"unknown config key {key!r}")
    if key in ("orders", "scales"):
        parts = [p for p in raw.replace("/", ",").split(",") if p.strip()]
        conv = int if key == "orders" else float
        return tuple(conv(p) for p in parts)
    if key == "receiver_clip":
        try:
            return _BOOL[raw.lower()]
        except KeyError:
            raise ConfigError(f"boolean expected for {key}, got {raw!r}") from None
    if key in ("format", "allocation", "receiver", "eu_scaling", "out"):
        return raw
    if key in ("n", "components", "min_errors", "max_bits", "seed", "workers",
               "blocks_per_trial", "trials_per_chunk", "frames"):
        try:
            return int(raw)
        except ValueError:
            raise ConfigError(f"integer expected for {key}, got {raw!r}") from None
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"number expected for {key}, got {raw!r}") from None


def read_config_file(path) -> dict:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    values: dict = {}
    for lineno, line in enumerate(path.read_text().splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
        key, raw = (part.strip() for part in stripped.split("=", 1))
        values[key] = parse_value(key, raw)
    return values


def config_from_sources(config_path=None, overrides: dict | None = None) -> ExperimentConfig:
    """Config file first, explicit overrides (CLI flags) on top."""
    values = read_config_file(config_path) if config_path else {}
    for key, val in (overrides or {}).items():
        if val is None:
            continue
        if key not in _FIELDS:
            raise ConfigError(f"unknown config key {key!r}")
        values[key] = val
    try:
        cfg = ExperimentConfig(**values)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc
    return cfg.validate()
