import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional

from pydantic import ValidationError

from ..errors import ConfigError
from ..model.models import RunConfig

logger = logging.getLogger("RunConfigParser")


class RunConfigParser:
    """
    Strict parser for run configurations.

    Guarantees:
        - Either returns a validated RunConfig or raises ConfigError
        - ConfigError carries the line of the offending text when it can be found
        - Unknown keys are rejected
    """

    def __init__(self, max_size: int = 5_000_000):
        self.max_size = max_size

    # ============================================================
    # Public API
    # ============================================================

    def parse_file(self, path: str) -> RunConfig:
        try:
            text = Path(path).read_text()
        except OSError as e:
            raise ConfigError(f"cannot read config file {path}: {e}")
        return self.parse(text)

    def parse(self, text: str) -> RunConfig:
        if not text or not text.strip():
            raise ConfigError("config is empty")
        if len(text) > self.max_size:
            raise ConfigError(f"config exceeds {self.max_size} characters")

        data = self._load(text)
        if not isinstance(data, dict):
            raise ConfigError(f"config must be a JSON object, got {type(data).__name__}", line=1)

        try:
            config = RunConfig.model_validate(data)
        except ValidationError as e:
            first = e.errors()[0]
            key = ".".join(str(part) for part in first["loc"])
            top = str(first["loc"][0]) if first["loc"] else None
            raise ConfigError(first["msg"], key=key or None, line=self._line_of(text, top))
        logger.debug(f"parsed config for command {config.command}")
        return config

    # ============================================================
    # Internals
    # ============================================================

    def _load(self, text: str) -> Dict[str, Any]:
        try:
            return json.loads(text)
        except json.JSONDecodeError as e:
            raise ConfigError(f"invalid JSON: {e.msg} (column {e.colno})", line=e.lineno)

    @staticmethod
    def _line_of(text: str, key: Optional[str]) -> Optional[int]:
        if not key:
            return None
        needle = f'"{key}"'
        for number, line in enumerate(text.splitlines(), start=1):
            if needle in line:
                return number
        return None


config_parser = RunConfigParser()
