"""Append-only result cache for the command line.

One JSON record per line, keyed by a digest of (canonical pair, n, m,
method, catalog version).  Counts are stored as strings so any tool can
read the file without big-integer support.  A corrupt line is skipped with
a warning; the cache can only ever cost a recomputation, never produce a
wrong answer.  Writes take an exclusive advisory lock so concurrent CLI
runs append safely.
"""

from __future__ import annotations

import fcntl
import hashlib
import json
import os
import sys
from pathlib import Path

from .formulas import CATALOG_VERSION

ENV_VAR = "MSETPERM_CACHE"


def default_cache_path() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME", os.path.join(os.path.expanduser("~"), ".cache"))
    return Path(base) / "msetperm" / "counts.jsonl"


def _digest(pair: tuple[str, str], n: int, m: int, method: str) -> str:
    payload = json.dumps([list(pair), n, m, method, CATALOG_VERSION])
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


class CountCache:
    def __init__(self, path: Path | None = None):
        self.path = path or default_cache_path()
        self._warned = False

    def _warn(self, message: str) -> None:
        if not self._warned:
            print(f"cache warning: {message}", file=sys.stderr)
            self._warned = True

    def lookup(self, pair: tuple[str, str], n: int, m: int, method: str) -> int | None:
        key = _digest(pair, n, m, method)
        try:
            text = self.path.read_text()
        except FileNotFoundError:
            return None
        except OSError as exc:
            self._warn(f"unreadable cache file {self.path}: {exc}")
            return None
        hit: int | None = None
        for line in text.splitlines():
            if not line.strip():
                continue
            try:
                record = json.loads(line)
                if record["key"] == key and record["version"] == CATALOG_VERSION:
                    hit = int(record["count"])
            except (ValueError, KeyError, TypeError):
                self._warn(f"ignoring corrupt line in {self.path}")
        return hit

    def store(self, pair: tuple[str, str], n: int, m: int, method: str,
              count: int) -> None:
        record = {
            "key": _digest(pair, n, m, method),
            "pair": list(pair),
            "n": n,
            "m": m,
            "method": method,
            "version": CATALOG_VERSION,
            "count": str(count),
        }
        line = json.dumps(record) + "\n"
        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.path, "a") as fh:
                fcntl.flock(fh, fcntl.LOCK_EX)
                fh.write(line)
                fcntl.flock(fh, fcntl.LOCK_UN)
        except OSError as exc:
            self._warn(f"cannot write cache file {self.path}: {exc}")
