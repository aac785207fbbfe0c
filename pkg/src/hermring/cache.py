"""On-disk series cache in the shared text format.

Layout: ``<root>/trunc<M>/<kind>-<name>.txt`` plus a ``manifest.txt`` per
truncation listing name, kind, weight, provenance tag and SHA-256 digest.
"""

from __future__ import annotations

import hashlib
import os
import re
import shutil
import tempfile
from pathlib import Path

from .series import FORMAT_VERSION, from_text

ENV_VAR = "HERMRING_CACHE"


def default_cache_dir() -> Path | None:
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else None


def _safe(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.+-]", lambda m: f"%{ord(m.group()):02x}", name)


def atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class SeriesStore:
    def __init__(self, root: Path | str):
        self.root = Path(root)

    def _path(self, kind: str, name: str, trunc: int) -> Path:
        return self.root / f"trunc{trunc}" / f"{kind}-{_safe(name)}.txt"

    def load(self, kind: str, name: str, trunc: int, weight: int | None):
        path = self._path(kind, name, trunc)
        if not path.exists():
            return None
        text = path.read_text()
        header = dict(
            line[1:].strip().split("=", 1) for line in text.splitlines() if line.startswith("#") and "=" in line
        )
        expected = {
            "name": name,
            "kind": kind,
            "trunc": str(trunc),
            "weight": "none" if weight is None else str(weight),
            "version": str(FORMAT_VERSION),
        }
        if any(header.get(k) != v for k, v in expected.items()):
            return None
        return from_text(text)

    def save(self, series, name: str, tag: str = "") -> None:
        text = series.to_text(name)
        atomic_write(self._path(series.kind, name, series.trunc), text)
        self._update_manifest(series, name, tag, hashlib.sha256(text.encode()).hexdigest())

    def _update_manifest(self, series, name: str, tag: str, digest: str) -> None:
        path = self.root / f"trunc{series.trunc}" / "manifest.txt"
        rows = {}
        if path.exists():
            for line in path.read_text().splitlines():
                key = line.split("\t", 2)[:2]
                rows[tuple(key)] = line
        weight = "none" if series.weight is None else str(series.weight)
        rows[(series.kind, name)] = "\t".join((series.kind, name, weight, digest, tag))
        atomic_write(path, "".join(rows[k] + "\n" for k in sorted(rows)))

    def listing(self) -> list[str]:
        if not self.root.exists():
            return []
        out = []
        for manifest in sorted(self.root.glob("trunc*/manifest.txt")):
            for line in manifest.read_text().splitlines():
                kind, name, weight, digest = line.split("\t")[:4]
                out.append(f"{manifest.parent.name}\t{kind}\t{name}\tweight={weight}\t{digest[:12]}")
        return out

    def clear(self) -> int:
        if not self.root.exists():
            return 0
        n = 0
        for sub in self.root.glob("trunc*"):
            n += sum(1 for f in sub.glob("*.txt") if f.name != "manifest.txt")
            shutil.rmtree(sub)
        return n
