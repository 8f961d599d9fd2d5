"""On-disk cache for expensive negative certificates.

Entries are JSON files named by a SHA-256 key over the run configuration,
the package version and a fingerprint of the source of every module that
builds groups or searches them, so editing the construction code changes
the key. The key needs no group construction, which keeps replay cheap.
"""

from __future__ import annotations

import hashlib
import json
import logging
from pathlib import Path
from functools import lru_cache

from . import __version__

log = logging.getLogger(__name__)


FINGERPRINTED = ("perm", "group", "field", "matrix", "wreath", "atlas", "conjugacy", "verifier")


@lru_cache(maxsize=1)
def code_fingerprint() -> str:
    h = hashlib.sha256()
    here = Path(__file__).parent
    for name in FINGERPRINTED:
        h.update((here / f"{name}.py").read_bytes())
    return h.hexdigest()


def cache_key(config: dict) -> str:
    h = hashlib.sha256()
    h.update(json.dumps(config, sort_keys=True).encode())
    h.update(__version__.encode())
    h.update(code_fingerprint().encode())
    return h.hexdigest()


class ResultCache:
    def __init__(self, directory: str | Path):
        self.dir = Path(directory)

    def _path(self, key: str) -> Path:
        return self.dir / f"{key}.json"

    def lookup(self, key: str) -> list[dict] | None:
        path = self._path(key)
        if not path.exists():
            return None
        try:
            data = json.loads(path.read_text())
            if data.get("key") != key or not isinstance(data.get("records"), list):
                raise ValueError("malformed entry")
            return data["records"]
        except (ValueError, OSError, AttributeError) as exc:
            log.warning("ignoring corrupt cache entry %s (%s); recomputing", path.name, exc)
            return None

    def store(self, key: str, records: list[dict]) -> None:
        self.dir.mkdir(parents=True, exist_ok=True)
        tmp = self._path(key).with_suffix(".tmp")
        tmp.write_text(json.dumps({"key": key, "version": __version__, "records": records}, sort_keys=True))
        tmp.replace(self._path(key))
