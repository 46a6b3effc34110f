from __future__ import annotations

import json
from copy import deepcopy
from pathlib import Path
from typing import Any

import tomllib

from bgsa.exceptions import ConfigError
from .sections.root import ConfigData

SUFFIXES = {".toml", ".json"}


class Config:
    def __init__(self, raw: dict[str, Any]):
        self.data = ConfigData(raw)

    @staticmethod
    def load(path: str | Path, overrides: dict[str, dict[str, Any]] | None = None) -> Config:
        """Loads a config file and applies `overrides` section by section.

        A `run.json` written by a previous run is itself a valid config file.
        """
        raw = Config._load_raw(path)
        return Config(merge(raw, overrides or {}))

    @staticmethod
    def from_overrides(overrides: dict[str, dict[str, Any]]) -> Config:
        return Config(merge({}, overrides))

    @staticmethod
    def _load_raw(path: str | Path) -> dict[str, Any]:
        """Loads the given config file."""
        path = Path(path)
        if path.suffix not in SUFFIXES:
            msg = "Could not load config: "
            if not path.suffix:
                raise ConfigError(msg + "File has no suffix")
            raise ConfigError(msg + f'Unknown file suffix "{path.suffix}"')
        try:
            with open(path, "rb") as f:
                raw = json.load(f) if path.suffix == ".json" else tomllib.load(f)
        except FileNotFoundError:
            raise ConfigError(f"Config file '{path}' not found") from None
        except (json.JSONDecodeError, tomllib.TOMLDecodeError) as e:
            raise ConfigError(f"Could not parse config '{path}': {e}") from None
        if not isinstance(raw, dict):
            raise ConfigError(f"Config '{path}' must contain a table at the top level")
        return raw


def merge(raw: dict[str, Any], overrides: dict[str, dict[str, Any]]) -> dict[str, Any]:
    """Copy of `raw` with the non-None values of `overrides` set per section."""
    out = deepcopy(raw)
    for section, values in overrides.items():
        target = out.setdefault(section, {})
        if not isinstance(target, dict):
            raise ConfigError(f"[{section}] must be a table")
        target.update({k: v for k, v in values.items() if v is not None})
    return out
