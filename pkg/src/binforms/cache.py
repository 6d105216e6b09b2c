"""Optional on-disk cache for invariant values at seeded point sets.

Keys are (point-set key, expression text); values are the evaluation vectors
over F_p.  One pickle per point set, written atomically, so repeated CLI runs
(quick suite, then the long membership checks) reuse the expensive basis
evaluations.  Everything works without a cache directory; the pipeline then
keeps values in memory only.
"""

from __future__ import annotations

import hashlib
import os
import pickle
import tempfile
from pathlib import Path
from typing import Dict, List, Optional

ENV_VAR = "BINFORMS_CACHE_DIR"


class EvalCache:
    def __init__(self, root: Optional[str] = None):
        if root is None:
            root = os.environ.get(ENV_VAR) or None
        self.root = Path(root) if root else None
        self._store: Dict[str, Dict[str, List[int]]] = {}
        self._dirty: Dict[str, bool] = {}

    def _bucket(self, pointset_key: str) -> Dict[str, List[int]]:
        bucket = self._store.get(pointset_key)
        if bucket is None:
            bucket = {}
            if self.root is not None:
                path = self._path(pointset_key)
                if path.exists():
                    try:
                        with open(path, "rb") as fh:
                            bucket = pickle.load(fh)
                    except Exception:
                        bucket = {}
            self._store[pointset_key] = bucket
            self._dirty[pointset_key] = False
        return bucket

    def _path(self, pointset_key: str) -> Path:
        digest = hashlib.sha256(pointset_key.encode()).hexdigest()[:24]
        return self.root / f"points-{digest}.pkl"

    def get(self, pointset_key: str, expr_text: str) -> Optional[List[int]]:
        return self._bucket(pointset_key).get(expr_text)

    def put(self, pointset_key: str, expr_text: str, values: List[int]) -> None:
        self._bucket(pointset_key)[expr_text] = list(values)
        self._dirty[pointset_key] = True

    def flush(self) -> None:
        if self.root is None:
            return
        self.root.mkdir(parents=True, exist_ok=True)
        for key, bucket in self._store.items():
            if not self._dirty.get(key):
                continue
            path = self._path(key)
            fd, tmp = tempfile.mkstemp(dir=str(self.root), suffix=".tmp")
            try:
                with os.fdopen(fd, "wb") as fh:
                    pickle.dump(bucket, fh)
                os.replace(tmp, path)
            finally:
                if os.path.exists(tmp):
                    os.unlink(tmp)
            self._dirty[key] = False
