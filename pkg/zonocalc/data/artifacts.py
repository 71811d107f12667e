import csv
import io
import json
import logging
import os
import threading
from collections import defaultdict
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from ..errors import ArtifactError

logger = logging.getLogger(__name__)


class ArtifactKind(str, Enum):
    REPORT = "report"
    TABLE = "table"
    GRID = "grid"
    SUMMARY = "summary"
    COUNTEREXAMPLE = "counterexample"


# one lock per output directory, shared by every store writing there
_directory_locks: Dict[str, threading.Lock] = defaultdict(threading.Lock)
_registry_lock = threading.Lock()


def _lock_for(directory: Path) -> threading.Lock:
    with _registry_lock:
        return _directory_locks[str(directory.resolve())]


class ArtifactStore:
    """
    File DAO for run artifacts. JSON is written with sorted keys and a fixed
    indent so reruns of one config reproduce the files byte for byte.
    """

    def __init__(self, output_dir: Optional[str] = None):
        self.output_dir = Path(output_dir or os.getenv("ZONOCALC_OUTPUT_DIR", "zonocalc-out"))
        try:
            self.output_dir.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise ArtifactError(f"cannot create output directory {self.output_dir}: {e}")
        self._lock = _lock_for(self.output_dir)
        self.written: List[Path] = []

    def path_for(self, kind: ArtifactKind, name: str, suffix: str) -> Path:
        return self.output_dir / f"{kind.value}-{name}{suffix}"

    # ------------------------------------------
    # JSON
    # ------------------------------------------

    def write_json(self, kind: ArtifactKind, name: str, payload: Any) -> Path:
        path = self.path_for(kind, name, ".json")
        try:
            text = json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=True) + "\n"
        except (TypeError, ValueError) as e:
            raise ArtifactError(f"artifact {path.name} is not serializable: {e}")
        self._write(path, text)
        return path

    def read_json(self, kind: ArtifactKind, name: str) -> Optional[Dict]:
        path = self.path_for(kind, name, ".json")
        if not path.exists():
            return None
        try:
            with open(path, "r") as f:
                return json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise ArtifactError(str(e))

    # ------------------------------------------
    # CSV
    # ------------------------------------------

    def write_csv(self, kind: ArtifactKind, name: str, header: Sequence[str], rows: Sequence[Sequence]) -> Path:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        path = self.path_for(kind, name, ".csv")
        self._write(path, buffer.getvalue())
        return path

    def write_text(self, kind: ArtifactKind, name: str, suffix: str, text: str) -> Path:
        path = self.path_for(kind, name, suffix)
        self._write(path, text)
        return path

    # ------------------------------------------
    # Serialized writes
    # ------------------------------------------

    def _write(self, path: Path, text: str) -> None:
        tmp = path.with_name(path.name + ".tmp")
        with self._lock:
            try:
                with open(tmp, "w", newline="") as f:
                    f.write(text)
                os.replace(tmp, path)
            except OSError as e:
                logger.exception(f"artifact write failed for {path}")
                raise ArtifactError(str(e))
            self.written.append(path)
        logger.info(f"wrote {path}")
