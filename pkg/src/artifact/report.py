"""Verdict records shared by the verification routines and the CLI."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Optional

from .series import PSeries


@dataclass
class Mismatch:
    index: Any
    lhs: str
    rhs: str

    def to_obj(self) -> dict:
        return {"index": list(self.index) if isinstance(self.index, tuple) else self.index, "lhs": self.lhs, "rhs": self.rhs}


@dataclass
class VerdictReport:
    """Outcome of one identity check; ``kind`` is "theorem" or "conjecture"."""

    identity: str
    params: dict
    verdict: str
    mismatch: Optional[Mismatch] = None
    wall_time_ms: Optional[float] = None
    kind: str = "theorem"
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in ("pass", "fail"):
            raise ValueError("verdict must be pass or fail")
        if self.verdict == "fail" and self.mismatch is None:
            raise ValueError("a failing verdict needs a mismatch")

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_obj(self, timing: bool = True) -> dict:
        obj = {
            "identity": self.identity,
            "kind": self.kind,
            "params": self.params,
            "verdict": self.verdict,
            "mismatch": self.mismatch.to_obj() if self.mismatch else None,
            "wall_time_ms": (round(self.wall_time_ms, 1) if self.wall_time_ms is not None else None) if timing else None,
        }
        if self.notes:
            obj["notes"] = self.notes
        return obj

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_obj(timing), sort_keys=True, separators=(",", ":"))


def series_mismatch(lhs: PSeries, rhs: PSeries) -> Optional[Mismatch]:
    """First differing coefficient of two series, or None when they agree."""
    v = lhs.first_difference(rhs)
    if v is None:
        return None
    return Mismatch(v, str(lhs[v]), str(rhs[v]))


def scalar_mismatch(index, lhs, rhs) -> Optional[Mismatch]:
    return None if lhs == rhs else Mismatch(index, str(lhs), str(rhs))


def verdict(identity: str, params: dict, mismatch: Optional[Mismatch], kind: str = "theorem", started: float | None = None, **notes) -> VerdictReport:
    elapsed = (time.perf_counter() - started) * 1000 if started is not None else None
    return VerdictReport(identity, params, "fail" if mismatch else "pass", mismatch, elapsed, kind, dict(notes))


def combine(reports: Iterable[VerdictReport], identity: str, params: dict, kind: str = "theorem") -> VerdictReport:
    """Merge per-seed reports: pass only if every seed passed."""
    reports = list(reports)
    total = sum(r.wall_time_ms or 0.0 for r in reports)
    failing = next((r for r in reports if not r.passed), None)
    notes: dict = {}
    for r in reports:
        notes.update(r.notes)
    if failing is not None:
        return VerdictReport(identity, params, "fail", failing.mismatch, total, kind, notes)
    return VerdictReport(identity, params, "pass", None, total, kind, notes)


def timed(fn: Callable[[], Optional[Mismatch]]) -> tuple[Optional[Mismatch], float]:
    t0 = time.perf_counter()
    out = fn()
    return out, (time.perf_counter() - t0) * 1000
