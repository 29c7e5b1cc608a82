"""On-disk memo for computed results, keyed by (input hash, kind, window).

The directory comes from ``DGCYCLIC_CACHE`` (default ``~/.cache/dgcyclic``).
Writes go to a temporary file in the same directory and are renamed into
place, so concurrent workers never observe a partial entry.
"""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

ENV_VAR = "DGCYCLIC_CACHE"


def cache_dir():
    root = os.environ.get(ENV_VAR)
    return Path(root) if root else Path.home() / ".cache" / "dgcyclic"


class DiskCache:
    def __init__(self, root=None, enabled=True, version=""):
        self.root = Path(root) if root else cache_dir()
        self.enabled = enabled
        self.version = version

    def _path(self, input_hash, kind, window):
        blob = json.dumps([self.version, input_hash, kind, window], sort_keys=True)
        h = hashlib.sha256(blob.encode()).hexdigest()
        return self.root / h[:2] / f"{h}.json"

    def get(self, input_hash, kind, window):
        if not self.enabled:
            return None
        p = self._path(input_hash, kind, window)
        try:
            with open(p, encoding="utf-8") as fh:
                return json.load(fh)
        except (OSError, ValueError):
            return None

    def put(self, input_hash, kind, window, value):
        if not self.enabled:
            return
        p = self._path(input_hash, kind, window)
        try:
            p.parent.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=p.parent, suffix=".tmp")
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(value, fh, sort_keys=True)
            os.replace(tmp, p)
        except OSError:
            pass  # caching is best-effort

    def memo(self, input_hash, kind, window, compute):
        hit = self.get(input_hash, kind, window)
        if hit is not None:
            return hit
        value = compute()
        self.put(input_hash, kind, window, value)
        return value
