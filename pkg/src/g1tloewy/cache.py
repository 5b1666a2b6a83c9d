"""Append-only persistent store for computed polynomials.

File layout: one JSON header line, then one JSON record per line::

    {"format": "g1tloewy-cache", "version": 1, "namespace": "...", "crc": ...}
    {"k": "<key>", "v": <value>, "crc": <crc32 of k and v>}

Records whose checksum does not match (or that fail to parse, e.g. a
truncated final line after a crash) are dropped on load and counted in
``dropped``. A header mismatch discards the whole file.
"""

from __future__ import annotations

import json
import os
import threading
import zlib
from pathlib import Path
from typing import Any

FORMAT = "g1tloewy-cache"
VERSION = 1
CACHE_ENV = "G1TLOEWY_CACHE_DIR"


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "g1tloewy"


def _crc(*parts: str) -> int:
    return zlib.crc32("\x1f".join(parts).encode())


def _dump(value: Any) -> str:
    return json.dumps(value, separators=(",", ":"), sort_keys=True)


class PersistentCache:
    """Key/value log for one namespace. Safe for concurrent use within a process."""

    def __init__(self, path: str | os.PathLike, namespace: str):
        self.path = Path(path)
        self.namespace = namespace
        self._data: dict[str, Any] = {}
        self._lock = threading.Lock()
        self.dropped = 0
        self.header_ok = True
        self._load()

    def _header(self) -> str:
        head = {"format": FORMAT, "version": VERSION, "namespace": self.namespace}
        head["crc"] = _crc(_dump(head))
        return _dump(head)

    def _load(self) -> None:
        if not self.path.exists():
            return
        with open(self.path, "r", encoding="utf-8", errors="replace") as fh:
            lines = fh.read().split("\n")
        if not lines or lines[0] != self._header():
            self.header_ok = False
            self.dropped = sum(1 for ln in lines[1:] if ln)
            self.path.unlink()
            return
        for line in lines[1:]:
            if not line:
                continue
            try:
                rec = json.loads(line)
                key, val, crc = rec["k"], rec["v"], rec["crc"]
            except (ValueError, KeyError, TypeError):
                self.dropped += 1
                continue
            if not isinstance(key, str) or crc != _crc(key, _dump(val)):
                self.dropped += 1
                continue
            self._data[key] = val
        if self.dropped:
            self._rewrite()

    def _rewrite(self) -> None:
        tmp = self.path.with_suffix(self.path.suffix + ".tmp")
        with open(tmp, "w", encoding="utf-8") as fh:
            fh.write(self._header() + "\n")
            for k, v in self._data.items():
                fh.write(self._record(k, v))
        os.replace(tmp, self.path)

    @staticmethod
    def _record(key: str, value: Any) -> str:
        body = _dump(value)
        return _dump({"k": key, "v": value, "crc": _crc(key, body)}) + "\n"

    def get(self, key: str, default: Any = None) -> Any:
        return self._data.get(key, default)

    def __contains__(self, key: str) -> bool:
        return key in self._data

    def __len__(self) -> int:
        return len(self._data)

    def put(self, key: str, value: Any) -> None:
        with self._lock:
            if key in self._data:
                return
            self._data[key] = value
            self.path.parent.mkdir(parents=True, exist_ok=True)
            new = not self.path.exists()
            with open(self.path, "a", encoding="utf-8") as fh:
                if new:
                    fh.write(self._header() + "\n")
                fh.write(self._record(key, value))

    def items(self):
        return list(self._data.items())
