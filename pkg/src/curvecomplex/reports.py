"""Check reports: one schema for every experiment, serialized deterministically."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
import tempfile
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .surface import Surface

__version__ = "0.1.0"

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


def _source_digest() -> str:
    h = hashlib.sha256()
    here = Path(__file__).parent
    for p in sorted(here.glob("*.py")):
        h.update(p.name.encode())
        h.update(p.read_bytes())
    return h.hexdigest()[:10]


BUILD_ID = f"v{__version__}-g{_source_digest()}"


@dataclass
class Report:
    check: str
    surface: Surface | None
    parameters: dict
    truncation: dict
    verdict: str
    witnesses: list = field(default_factory=list)
    metrics: dict = field(default_factory=dict)
    diagnosis: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_json(self) -> dict:
        out = {
            "build": BUILD_ID,
            "check": self.check,
            "surface": self.surface.to_json() if self.surface is not None else None,
            "parameters": self.parameters,
            "truncation": self.truncation,
            "verdict": self.verdict,
            "witnesses": self.witnesses,
            "metrics": self.metrics,
        }
        if self.diagnosis:
            out["diagnosis"] = self.diagnosis
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2, default=_default) + "\n"


def _default(x):
    if hasattr(x, "to_json"):
        return x.to_json()
    if isinstance(x, (set, frozenset, tuple)):
        return list(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def combine(verdicts) -> str:
    verdicts = list(verdicts)
    if FAIL in verdicts:
        return FAIL
    if INCONCLUSIVE in verdicts:
        return INCONCLUSIVE
    return PASS


def histogram_csv(values) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["value", "count"])
    for v, c in sorted(Counter(values).items()):
        w.writerow([v, c])
    return buf.getvalue()


def write_atomic(path: str | os.PathLike, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    with os.fdopen(fd, "w") as f:
        f.write(text)
    os.replace(tmp, path)
