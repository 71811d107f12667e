import logging
import os
from enum import Enum
from typing import List, Optional, Type, TypeVar

logger = logging.getLogger(__name__)

E = TypeVar("E", bound=Enum)


def enum_values(enum_class: Type[E]) -> List[str]:
    return [member.value for member in enum_class]


def str_to_enum(enum_class: Type[E], value) -> Optional[E]:
    """
    Looks up a command or suite name. Case and surrounding blanks are ignored
    and underscores stand for dashes, so "DM_BASIS" finds "dm-basis".
    Unknown names give None and log the accepted values.
    """
    if isinstance(value, enum_class):
        return value
    text = str(value).strip().lower().replace("_", "-")
    try:
        return enum_class(text)
    except ValueError:
        logger.warning(f"unknown {enum_class.__name__} '{value}', expected one of: {', '.join(enum_values(enum_class))}")
        return None


def env_int(name: str, default: int) -> int:
    """Integer environment variable; malformed values fall back to the default."""
    try:
        return int(os.getenv(name, default))
    except (TypeError, ValueError):
        return default


def env_log_level(default: str = "INFO") -> str:
    level = os.getenv("ZONOCALC_LOG_LEVEL", default).upper()
    return level if level in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL") else default


def slug(text: Optional[str]) -> str:
    """File-name friendly version of a label."""
    if not text:
        return "run"
    cleaned = "".join(ch if ch.isalnum() or ch in "-_" else "_" for ch in text)
    return cleaned.strip("_") or "run"
