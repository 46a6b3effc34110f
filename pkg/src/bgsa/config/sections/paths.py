from __future__ import annotations

from pathlib import Path
from typing import Any

from bgsa.exceptions import ConfigError
from ._abstract import Section


class PathsSection(Section):
    name = 'paths'

    matrix: Path | None
    labels: Path | None
    gmt: Path | None
    out: Path | None

    def __init__(self, raw: dict[str, Any]) -> None:
        super().__init__(raw)

        for key in ('matrix', 'labels', 'gmt', 'out'):
            value = raw.get(key)
            if value is not None and not str(value):
                raise ConfigError(f"[paths] {key} must not be empty")
            setattr(self, key, Path(value) if value is not None else None)

    def require(self, *keys: str) -> None:
        missing = [k for k in keys if getattr(self, k) is None]
        if missing:
            raise ConfigError(f"Missing required path(s): {', '.join(missing)}")
