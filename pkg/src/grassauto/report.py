"""Run reports: counts, verdicts and timings of one CLI invocation."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field as _f
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Iterator

PASS = "pass"
FAIL = "fail"


@dataclass
class RunReport:
    command: str
    field: dict[str, Any] = _f(default_factory=dict)
    counts: dict[str, Any] = _f(default_factory=dict)
    verdicts: dict[str, str] = _f(default_factory=dict)
    seeds: dict[str, Any] = _f(default_factory=dict)
    details: dict[str, Any] = _f(default_factory=dict)
    first_violation: str | None = None
    # everything that differs between identical runs lives here
    timing: dict[str, Any] = _f(default_factory=dict)

    def __post_init__(self) -> None:
        self.timing.setdefault("started", datetime.now(timezone.utc).isoformat(timespec="seconds"))
        self.timing.setdefault("phases", {})

    @contextmanager
    def phase(self, name: str) -> Iterator[None]:
        t0 = time.perf_counter()
        try:
            yield
        finally:
            self.timing["phases"][name] = round(time.perf_counter() - t0, 3)

    def verdict(self, name: str, ok: bool, violation: str | None = None) -> bool:
        self.verdicts[name] = PASS if ok else FAIL
        if not ok and self.first_violation is None:
            self.first_violation = violation or f"{name} failed"
        return ok

    @property
    def ok(self) -> bool:
        return bool(self.verdicts) and all(v == PASS for v in self.verdicts.values())

    def as_dict(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "field": self.field,
            "counts": self.counts,
            "verdicts": self.verdicts,
            "seeds": self.seeds,
            "details": self.details,
            "first_violation": self.first_violation,
            "timing": self.timing,
        }

    def dumps(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2, default=_jsonable) + "\n"


def _jsonable(obj: Any) -> Any:
    if hasattr(obj, "item"):
        return obj.item()
    if isinstance(obj, (set, frozenset, tuple)):
        return list(obj)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def emit_report(report: RunReport, path: str | Path | None = None) -> str:
    text = report.dumps()
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def strip_timing(text: str) -> dict[str, Any]:
    data = json.loads(text)
    data.pop("timing", None)
    return data
