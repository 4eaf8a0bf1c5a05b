"""Result files: CSV with a ``#`` header, JSON with a leading ``meta`` object.

Floats use a fixed format and no timestamps are written, so a rerun with the
same config reproduces every file byte for byte.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any, Dict, List, Optional

import pandas as pd

from app.Core.config import get_settings
from app.features.scenario.schemas import ScenarioConfig

FLOAT_FORMAT = "%.10e"
TOOL_NAME = "qrefl"


def meta(config: ScenarioConfig, **extra: Any) -> Dict[str, Any]:
    info: Dict[str, Any] = {
        "tool": TOOL_NAME,
        "version": get_settings().app_version,
        "config": config.model_dump(mode="json"),
    }
    info.update(extra)
    return info


def header_lines(config: ScenarioConfig, **extra: Any) -> List[str]:
    lines = [f"{TOOL_NAME} {get_settings().app_version}", f"config: {config.canonical_json()}"]
    for key in sorted(extra):
        lines.append(f"{key}: {json.dumps(_clean(extra[key]), sort_keys=True)}")
    return lines


class ResultWriter:
    def __init__(self, directory: str | Path, config: ScenarioConfig) -> None:
        self.directory = Path(directory)
        self.config = config
        self.formats = set(config.output.formats)
        self.written: List[Path] = []

    @classmethod
    def for_config(cls, config: ScenarioConfig, override: Optional[str | Path] = None) -> "ResultWriter":
        directory = override or config.output.directory or get_settings().output_dir
        return cls(directory, config)

    def _target(self, name: str) -> Path:
        self.directory.mkdir(parents=True, exist_ok=True)
        return self.directory / name

    def csv(self, name: str, table: pd.DataFrame, **extra: Any) -> Optional[Path]:
        if "csv" not in self.formats:
            return None
        path = self._target(name)
        with path.open("w", encoding="utf-8", newline="\n") as fh:
            for line in header_lines(self.config, **extra):
                fh.write(f"# {line}\n")
            table.to_csv(fh, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        self.written.append(path)
        return path

    def json(self, name: str, payload: Dict[str, Any], **extra: Any) -> Optional[Path]:
        if "json" not in self.formats:
            return None
        path = self._target(name)
        body = {"meta": meta(self.config, **extra), **_clean(payload)}
        path.write_text(json.dumps(body, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        self.written.append(path)
        return path


def _clean(value: Any) -> Any:
    """JSON-safe copy: non-finite floats become null and int keys become strings."""
    if isinstance(value, dict):
        return {str(k): _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    if isinstance(value, float):
        return value if math.isfinite(value) else None
    if hasattr(value, "item"):
        return _clean(value.item())
    return value


__all__ = ["ResultWriter", "meta", "header_lines", "FLOAT_FORMAT"]
