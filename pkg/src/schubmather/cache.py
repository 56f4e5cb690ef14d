"""On-disk cache of table documents: one JSON file per key, content-hashed."""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

ENV_VAR = "SCHUBMATHER_CACHE_DIR"


def canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def digest(obj) -> str:
    return hashlib.sha256(canonical(obj).encode()).hexdigest()


def cache_key(lie_type: str, n: int, family, alpha, policy: str) -> dict:
    return {"lie_type": lie_type, "n": n, "family": family, "alpha": list(alpha), "policy": policy}


class TableCache:
    def __init__(self, directory: str | os.PathLike):
        self.directory = Path(directory)

    @classmethod
    def from_env(cls, override: str | None = None) -> "TableCache | None":
        where = override or os.environ.get(ENV_VAR)
        return cls(where) if where else None

    def path(self, key: dict) -> Path:
        return self.directory / f"{digest(key)}.json"

    def get(self, key: dict):
        path = self.path(key)
        if not path.exists():
            return None
        try:
            record = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError):
            return None
        # a record whose key or content hash disagrees is treated as a miss
        if record.get("key") != key or record.get("hash") != digest(record.get("value")):
            return None
        return record["value"]

    def put(self, key: dict, value) -> Path:
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self.path(key)
        record = {"key": key, "hash": digest(value), "value": value}
        tmp = path.with_suffix(".tmp")
        # keep insertion order so a hit prints exactly like a fresh result
        tmp.write_text(json.dumps(record, separators=(",", ":")), encoding="utf-8")
        tmp.replace(path)
        return path
