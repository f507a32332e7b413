"""Structured verification reports."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

SCHEMA_VERSION = 1


@dataclass
class Check:
    name: str
    status: str  # pass | fail | skip
    details: str = ""
    stats: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in ("pass", "fail", "skip"):
            raise ValueError(f"bad status {self.status!r}")
        if self.status == "fail" and not self.details:
            self.details = "check failed"

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "details": self.details,
                "stats": {k: _jsonable(v) for k, v in self.stats.items()}}


def _jsonable(v):
    if isinstance(v, bool):
        return v
    if isinstance(v, int):
        return v
    v = float(v)
    if v != v or v in (float("inf"), float("-inf")):
        return str(v)
    return v


@dataclass
class Report:
    suite: str
    seed: int = 0
    tolerances: dict[str, float] = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    elapsed_ms: float = 0.0
    _t0: float = field(default_factory=time.perf_counter, repr=False)

    def add(self, name: str, ok: bool, details: str = "", **stats) -> Check:
        c = Check(name, "pass" if ok else "fail", details if details or ok else f"{name} failed", stats)
        self.checks.append(c)
        return c

    def skip(self, name: str, details: str = "") -> Check:
        c = Check(name, "skip", details)
        self.checks.append(c)
        return c

    def extend(self, other: "Report") -> None:
        self.checks.extend(other.checks)
        for k, v in other.tolerances.items():
            self.tolerances.setdefault(k, v)

    def finish(self) -> "Report":
        self.elapsed_ms = (time.perf_counter() - self._t0) * 1000.0
        return self

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "suite": self.suite,
            "seed": self.seed,
            "tolerances": {k: _jsonable(v) for k, v in self.tolerances.items()},
            "checks": [c.to_json() for c in self.checks],
            "passed": self.ok,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def summary(self) -> str:
        lines = [f"suite {self.suite} (seed {self.seed})"]
        for c in self.checks:
            line = f"  [{c.status.upper():4}] {c.name}"
            if c.status != "pass" and c.details:
                line += f": {c.details}"
            lines.append(line)
        n_fail = len(self.failures)
        lines.append(f"{len(self.checks)} checks, {n_fail} failed, {self.elapsed_ms:.0f} ms")
        return "\n".join(lines)
