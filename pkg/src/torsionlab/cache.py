"""Persistent store of computed zeros, keyed by family, order and index.

File layout::

    {"format_version": 1,
     "zeros": {"JZero:1.5:3": 10.417..., ...},
     "complete": {"JZero:1.5": 40.0, ...}}

``complete`` records, per (family, order), the bound up to which every zero
is stored. A file that fails to parse or has the wrong version is ignored
and rewritten on the next save; its contents are never trusted.
"""

from __future__ import annotations

import json
import logging
import os
import tempfile
import threading

from . import specfun
from .specfun import ZeroFamily

FORMAT_VERSION = 1
ENV_VAR = "TORSIONLAB_CACHE"

log = logging.getLogger(__name__)


def _order_key(order: float) -> str:
    return repr(float(order))


class ZeroCache:
    def __init__(self, path: str | os.PathLike | None):
        self.path = None if path is None else os.fspath(path)
        self._zeros: dict = {}
        self._complete: dict = {}
        self._dirty = False
        self._lock = threading.Lock()
        if self.path:
            self._load()

    @classmethod
    def from_env(cls, path=None) -> "ZeroCache":
        return cls(path if path is not None else os.environ.get(ENV_VAR))

    def _load(self) -> None:
        try:
            with open(self.path, encoding="utf-8") as fh:
                data = json.load(fh)
            if data.get("format_version") != FORMAT_VERSION:
                raise ValueError("format version mismatch")
            zeros = {str(k): float(v) for k, v in data["zeros"].items()}
            complete = {str(k): float(v) for k, v in data["complete"].items()}
        except FileNotFoundError:
            return
        except (OSError, ValueError, KeyError, TypeError, AttributeError) as exc:
            log.warning("ignoring unreadable zero cache %s: %s", self.path, exc)
            self._dirty = True
            return
        self._zeros, self._complete = zeros, complete

    def zeros_upto(self, family, order: float, upto: float) -> list:
        """All zeros of ``family`` at ``order`` not exceeding ``upto``."""
        fam = ZeroFamily(family)
        okey = f"{fam.value}:{_order_key(order)}"
        with self._lock:
            done = self._complete.get(okey)
            if done is not None and done >= upto:
                out = []
                k = 1
                while True:
                    z = self._zeros.get(f"{okey}:{k}")
                    if z is None or z > upto:
                        break
                    out.append(z)
                    k += 1
                return out
        found = specfun.zeros(fam, order, upto=upto)
        with self._lock:
            for k, z in enumerate(found, start=1):
                self._zeros[f"{okey}:{k}"] = z
            self._complete[okey] = float(upto)
            self._dirty = True
        return found

    __call__ = zeros_upto

    def save(self) -> None:
        """Write atomically; no-op without a path or when nothing changed."""
        if not self.path or not self._dirty:
            return
        with self._lock:
            payload = {"format_version": FORMAT_VERSION, "zeros": self._zeros, "complete": self._complete}
            directory = os.path.dirname(os.path.abspath(self.path))
            os.makedirs(directory, exist_ok=True)
            fd, tmp = tempfile.mkstemp(prefix=".zerocache-", dir=directory)
            try:
                with os.fdopen(fd, "w", encoding="utf-8") as fh:
                    json.dump(payload, fh, sort_keys=True)
                os.replace(tmp, self.path)
            except BaseException:
                if os.path.exists(tmp):
                    os.unlink(tmp)
                raise
            self._dirty = False
