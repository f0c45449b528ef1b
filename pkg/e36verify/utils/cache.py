"""
Content-addressed store for check results.

Entries live under ``<cache_dir>/<key[:2]>/<key>.json``; each file holds the rows and the
sha256 digest of their canonical JSON so that a damaged file is detected on load.
"""

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Dict, List, Optional, Union

from e36verify.exceptions import CacheCorrupt

CACHE_VERSION = 1


def _canonical(payload) -> bytes:
    return json.dumps(payload, sort_keys=True, separators=(',', ':')).encode()


def content_key(payload) -> str:
    """sha256 of the canonical JSON of ``payload`` (anything ``repr`` can pin down)."""
    return hashlib.sha256(_canonical({'version': CACHE_VERSION, 'payload': repr(payload)})).hexdigest()


class ResultCache:
    def __init__(self, directory: Union[str, Path]):
        self.directory = Path(directory)

    def path_for(self, key: str) -> Path:
        return self.directory / key[:2] / f"{key}.json"

    def load(self, key: str) -> Optional[List[Dict[str, str]]]:
        path = self.path_for(key)
        if not path.exists():
            return None
        try:
            with open(path, 'rb') as f:
                stored = json.loads(f.read().decode())
            rows = stored['rows']
            digest = stored['digest']
        except (ValueError, KeyError, TypeError, UnicodeDecodeError) as e:
            raise CacheCorrupt(f"unreadable cache entry {path}: {e}") from e
        if hashlib.sha256(_canonical(rows)).hexdigest() != digest:
            raise CacheCorrupt(f"digest mismatch in cache entry {path}")
        logging.debug(f"Cache hit {key[:12]}")
        return rows

    def store(self, key: str, rows: List[Dict[str, str]]) -> Path:
        path = self.path_for(key)
        path.parent.mkdir(parents=True, exist_ok=True)
        body = _canonical({'digest': hashlib.sha256(_canonical(rows)).hexdigest(), 'rows': rows})
        # write-then-rename keeps readers from seeing half a file
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix='.tmp')
        try:
            with os.fdopen(fd, 'wb') as f:
                f.write(body)
            os.replace(tmp, path)
        except OSError:
            Path(tmp).unlink(missing_ok=True)
            raise
        return path

    def discard(self, key: str) -> None:
        self.path_for(key).unlink(missing_ok=True)
