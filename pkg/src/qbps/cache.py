"""Content-addressed result cache (one file per key, atomic writes)."""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

from . import __version__

__all__ = ["ResultCache", "cache_key", "default_cache_dir"]


def default_cache_dir() -> Path:
    env = os.environ.get("QBPS_CACHE")
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "qbps"


def cache_key(command: str, payload, version: str = __version__) -> str:
    blob = json.dumps({"command": command, "input": payload, "version": version},
                      sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


class ResultCache:
    def __init__(self, directory: Path | str | None = None, version: str = __version__):
        self.dir = Path(directory) if directory is not None else default_cache_dir()
        self.version = version

    def _path(self, key: str) -> Path:
        return self.dir / f"{key}.json"

    def get(self, key: str) -> str | None:
        try:
            data = json.loads(self._path(key).read_text())
        except (OSError, ValueError):
            return None
        if data.get("version") != self.version:
            return None
        return data.get("output")

    def put(self, key: str, output: str) -> None:
        try:
            self.dir.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=self.dir, prefix=".tmp-", suffix=".json")
            with os.fdopen(fd, "w") as fh:
                json.dump({"version": self.version, "output": output}, fh)
            os.replace(tmp, self._path(key))
        except OSError:
            # caching is best effort
            pass
