from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Any

from bgsa.exceptions import ConfigError


class Section(ABC):
    name: str = ''

    @abstractmethod
    def __init__(self, raw: dict[str, Any]) -> None:
        if not isinstance(raw, dict):
            raise ConfigError(f"[{self.name}] must be a table, got {type(raw).__name__}")
        self._raw = raw

    def _int(self, key: str, default: int | None = None, minimum: int | None = None) -> int:
        value = self._raw.get(key, default)
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"[{self.name}] {key} must be an integer, got {value!r}")
        if minimum is not None and value < minimum:
            raise ConfigError(f"[{self.name}] {key} must be at least {minimum}, got {value}")
        return value

    def _float(self, key: str, default: float | None = None) -> float:
        value = self._raw.get(key, default)
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"[{self.name}] {key} must be a number, got {value!r}")
        return float(value)

    def _bool(self, key: str, default: bool) -> bool:
        value = self._raw.get(key, default)
        if not isinstance(value, bool):
            raise ConfigError(f"[{self.name}] {key} must be true or false, got {value!r}")
        return value

    def _list(self, key: str, default: list[str]) -> list[str]:
        value = self._raw.get(key, default)
        if isinstance(value, str):
            value = [v for v in value.split(',') if v.strip()]
        if not isinstance(value, list) or not value:
            raise ConfigError(f"[{self.name}] {key} must be a non-empty list, got {value!r}")
        return [str(v).strip() for v in value]
