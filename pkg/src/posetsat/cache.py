"""On-disk cache of run records, keyed by command kind and canonical parameters."""
from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
import time
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Optional

from . import __version__

log = logging.getLogger(__name__)

CACHE_ENV = "POSETSAT_CACHE_DIR"


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "posetsat"


def canonical(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def digest(payload: Any) -> str:
    return hashlib.sha256(canonical(payload).encode()).hexdigest()


@dataclass
class RunRecord:
    command: str
    parameters: dict
    payload: dict
    digest: str = ""
    timestamp: float = 0.0
    version: str = __version__

    def __post_init__(self) -> None:
        if not self.digest:
            self.digest = digest(self.payload)
        if not self.timestamp:
            self.timestamp = time.time()

    @property
    def key(self) -> str:
        return digest({"command": self.command, "parameters": self.parameters})[:32]


class Cache:
    def __init__(self, root: Optional[Path] = None):
        self.root = Path(root) if root is not None else default_cache_dir()

    def _path(self, command: str, parameters: dict) -> Path:
        key = digest({"command": command, "parameters": parameters})[:32]
        return self.root / f"{command}-{key}.json"

    def store(self, record: RunRecord) -> Path:
        self.root.mkdir(parents=True, exist_ok=True)
        path = self._path(record.command, record.parameters)
        fd, tmp = tempfile.mkstemp(dir=self.root, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(asdict(record), fh, sort_keys=True)
            os.replace(tmp, path)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise
        return path

    def load(self, command: str, parameters: dict) -> Optional[RunRecord]:
        path = self._path(command, parameters)
        if not path.exists():
            return None
        try:
            raw = json.loads(path.read_text())
            record = RunRecord(**raw)
        except (OSError, ValueError, TypeError) as exc:
            log.warning("skipping corrupt cache entry %s: %s", path, exc)
            return None
        if record.version != __version__:
            log.info("ignoring cache entry from version %s", record.version)
            return None
        if record.digest != digest(record.payload):
            log.warning("skipping cache entry %s with bad digest", path)
            return None
        if record.command != command or record.parameters != parameters:
            return None
        return record
