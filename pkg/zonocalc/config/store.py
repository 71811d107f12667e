import logging
import os
from pathlib import Path
from typing import Dict, List, Optional

import yaml
from pydantic import ValidationError

from ..errors import ConfigError
from ..model.models import SystemEntry
from ..model.types import SuiteName

logger = logging.getLogger("SystemCatalogStore")


class SystemCatalogStore:
    """
    A central store for the shipped test systems. It loads every system YAML
    file from the config directory and gives access by name or by suite.
    """
    _instance = None

    def __new__(cls, *args, **kwargs):
        if not cls._instance:
            cls._instance = super(SystemCatalogStore, cls).__new__(cls)
        return cls._instance

    def __init__(self, config_dir=None):
        # This check prevents re-initialization on subsequent calls
        if hasattr(self, '_initialized') and self._initialized and config_dir is None:
            return

        if config_dir:
            self.config_dir = Path(config_dir)
        else:
            base_dir = Path(os.getenv('ZONOCALC_BASE_DIR', Path(__file__).resolve().parent.parent.parent))
            self.config_dir = base_dir / "config" / "systems"

        self._systems: Dict[str, SystemEntry] = {}
        self._load_systems()
        self._initialized = True

    def _load_systems(self):
        """Loads all systems from the .yaml files in the config directory."""
        if not self.config_dir.exists():
            logger.warning(f"System catalog directory not found at {self.config_dir}")
            return

        for filename in sorted(os.listdir(self.config_dir)):
            if not (filename.endswith(".yaml") or filename.endswith(".yml")):
                continue
            file_path = self.config_dir / filename
            with open(file_path, "r") as f:
                try:
                    data = yaml.safe_load(f)
                    entry = SystemEntry(**data)
                except (yaml.YAMLError, TypeError, ValidationError) as e:
                    logger.warning(f"Error processing YAML file {filename}: {e}")
                    continue
            if entry.name in self._systems:
                logger.warning(f"System '{entry.name}' defined twice; keeping the first definition")
                continue
            self._systems[entry.name] = entry
        logger.debug(f"Loaded {len(self._systems)} systems from {self.config_dir}")

    def get_system(self, name: str) -> Optional[SystemEntry]:
        return self._systems.get(name)

    def require_system(self, name: str) -> SystemEntry:
        entry = self.get_system(name)
        if entry is None:
            raise ConfigError(f"unknown system '{name}' (known: {', '.join(self.names())})", key="system")
        return entry

    def names(self) -> List[str]:
        return list(self._systems)

    def systems_for(self, suite: SuiteName) -> List[SystemEntry]:
        """Systems that list the suite; 'all' selects every system."""
        if suite == SuiteName.ALL:
            return list(self._systems.values())
        return [entry for entry in self._systems.values() if suite in entry.suites]


# --- Global Singleton Instance ---
system_catalog = SystemCatalogStore()
