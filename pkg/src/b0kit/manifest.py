"""Replayable run records.

A manifest stores the command and its complete inputs (seed included), so
``replay`` can rerun it and compare results with timing fields removed.
"""

from __future__ import annotations

import json
import platform
import time
from dataclasses import dataclass, field
from importlib import metadata

TIMING_KEYS = frozenset({"seconds", "timing"})


def versions() -> dict:
    out = {"python": platform.python_version()}
    for dist in ("artifact", "numpy", "sympy"):
        try:
            out[dist] = metadata.version(dist)
        except metadata.PackageNotFoundError:
            out[dist] = "unknown"
    return out


def strip_timing(obj):
    """Copy of a JSON value with every timing field removed."""
    if isinstance(obj, dict):
        return {k: strip_timing(v) for k, v in obj.items() if k not in TIMING_KEYS}
    if isinstance(obj, list):
        return [strip_timing(v) for v in obj]
    return obj


@dataclass
class RunManifest:
    command: str
    inputs: dict
    results: dict
    ok: bool = True
    seed: int | None = None
    versions: dict = field(default_factory=versions)
    timing: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "kind": "run-manifest",
            "command": self.command,
            "inputs": self.inputs,
            "seed": self.seed,
            "versions": self.versions,
            "timing": self.timing,
            "ok": self.ok,
            "results": self.results,
        }

    @classmethod
    def from_json(cls, d: dict) -> "RunManifest":
        if d.get("kind") != "run-manifest":
            raise ValueError("not a run manifest")
        return cls(d["command"], dict(d["inputs"]), d["results"], bool(d.get("ok", True)),
                   d.get("seed"), dict(d.get("versions", {})), dict(d.get("timing", {})))

    def same_results(self, other: "RunManifest") -> bool:
        return _canonical(self.results) == _canonical(other.results) and self.ok == other.ok


def _canonical(results) -> str:
    return json.dumps(strip_timing(json.loads(json.dumps(results))), sort_keys=True)


class Stopwatch:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = round(time.perf_counter() - self.t0, 3)
        return False
