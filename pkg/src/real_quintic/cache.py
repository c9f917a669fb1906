"""On-disk amplitude cache.

Layout of a cache directory::

    F_g{g}_h{h}_n{n}.txt      ring text serialization (with checksum line)
    ambiguity_g{g}_h{h}.json  resolved ambiguity coefficients (with checksum)

Entries are exact and independent of any series truncation.  Writes go to a
temporary file in the same directory followed by an atomic rename.
"""

from __future__ import annotations

import hashlib
import json
import os
import re
import tempfile
from fractions import Fraction
from pathlib import Path

from .ring import RingElement, RingError, parse, serialize

ENV_VAR = "REAL_QUINTIC_CACHE"

_F_RE = re.compile(r"^F_g(\d+)_h(\d+)_n(\d+)\.txt$")
_A_RE = re.compile(r"^ambiguity_g(\d+)_h(\d+)\.json$")


class CacheError(RuntimeError):
    """A cache entry is missing, unreadable or fails its checksum."""

    def __init__(self, entry: str, reason: str):
        super().__init__(f"cache entry {entry}: {reason}")
        self.entry = entry


def default_root(explicit=None):
    """``explicit`` if given, else the environment variable, else ``None``."""
    if explicit:
        return Path(explicit)
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else None


def _atomic_write(path: Path, text: str) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _json_body(g, h, coeffs) -> dict:
    return {"g": g, "h": h, "coefficients": [str(Fraction(c)) for c in coeffs]}


def _digest(body: dict) -> str:
    return hashlib.sha256(json.dumps(body, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


class AmplitudeCache:
    def __init__(self, root):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    # file names
    def amplitude_path(self, g, h, n) -> Path:
        return self.root / f"F_g{g}_h{h}_n{n}.txt"

    def ambiguity_path(self, g, h) -> Path:
        return self.root / f"ambiguity_g{g}_h{h}.json"

    # amplitudes
    def has_amplitude(self, g, h, n) -> bool:
        return self.amplitude_path(g, h, n).exists()

    def load_amplitude(self, g, h, n) -> RingElement:
        path = self.amplitude_path(g, h, n)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise CacheError(path.name, f"unreadable ({exc.strerror})") from exc
        try:
            return parse(text)
        except (RingError, ValueError, ArithmeticError) as exc:
            raise CacheError(path.name, str(exc)) from exc

    def store_amplitude(self, g, h, n, e: RingElement) -> bool:
        """Write unless an identical file already exists; returns ``True`` if written."""
        path = self.amplitude_path(g, h, n)
        text = serialize(e)
        if path.exists() and path.read_text(encoding="utf-8") == text:
            return False
        _atomic_write(path, text)
        return True

    # ambiguities
    def has_ambiguity(self, g, h) -> bool:
        return self.ambiguity_path(g, h).exists()

    def load_ambiguity(self, g, h) -> list:
        path = self.ambiguity_path(g, h)
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
            checksum = data.pop("checksum")
        except (OSError, ValueError, KeyError, AttributeError) as exc:
            raise CacheError(path.name, f"malformed ({exc})") from exc
        if _digest(data) != checksum:
            raise CacheError(path.name, "checksum mismatch")
        if (data.get("g"), data.get("h")) != (g, h):
            raise CacheError(path.name, "labels do not match the file name")
        return [Fraction(c) for c in data["coefficients"]]

    def store_ambiguity(self, g, h, coeffs) -> bool:
        body = _json_body(g, h, coeffs)
        text = json.dumps({**body, "checksum": _digest(body)}, indent=1, sort_keys=True) + "\n"
        path = self.ambiguity_path(g, h)
        if path.exists() and path.read_text(encoding="utf-8") == text:
            return False
        _atomic_write(path, text)
        return True

    # inventory
    def entries(self) -> list:
        """``(kind, key, file name)`` for every recognised file, sorted."""
        out = []
        for p in sorted(self.root.iterdir()):
            m = _F_RE.match(p.name)
            if m:
                out.append(("amplitude", tuple(int(x) for x in m.groups()), p.name))
                continue
            m = _A_RE.match(p.name)
            if m:
                out.append(("ambiguity", tuple(int(x) for x in m.groups()), p.name))
        return out

    def audit(self) -> list:
        """``(file name, error or None)`` for every entry."""
        report = []
        for kind, key, name in self.entries():
            try:
                if kind == "amplitude":
                    self.load_amplitude(*key)
                else:
                    self.load_ambiguity(*key)
                report.append((name, None))
            except CacheError as exc:
                report.append((name, str(exc)))
        return report
