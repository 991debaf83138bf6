"""Verification results and the JSON/text report document."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass
class Check:
    name: str
    paper_ref: str
    status: str
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "paper_ref": self.paper_ref, "status": self.status, "details": self.details}


def check(name: str, ref: str, ok: bool, **details) -> Check:
    return Check(name, ref, PASS if ok else FAIL, details)


def all_passed(checks: Iterable[Check]) -> bool:
    return all(c.status != FAIL for c in checks)


def first_failure(checks: Iterable[Check]) -> Check | None:
    return next((c for c in checks if c.status == FAIL), None)


@dataclass
class ReportDocument:
    version: str
    config: dict[str, Any]
    checks: list[Check] = field(default_factory=list)
    timestamp: str | None = None

    @property
    def overall(self) -> str:
        return PASS if all_passed(self.checks) else FAIL

    def to_dict(self, include_timestamp: bool = True) -> dict[str, Any]:
        out = {
            "tool_version": self.version,
            "config": self.config,
            "checks": [c.to_dict() for c in self.checks],
            "overall": self.overall,
        }
        if include_timestamp and self.timestamp is not None:
            out["timestamp"] = self.timestamp
        return out

    def to_json(self, include_timestamp: bool = True) -> str:
        return json.dumps(self.to_dict(include_timestamp), indent=2, sort_keys=True, default=_jsonable)

    def to_text(self) -> str:
        lines = []
        for c in self.checks:
            summary = c.details.get("summary")
            tail = f"  ({summary})" if summary else ""
            lines.append(f"[{c.status.upper():7}] {c.name}{tail}")
        lines.append(f"overall: {self.overall.upper()} ({sum(c.passed for c in self.checks)}/{len(self.checks)} passed)")
        return "\n".join(lines)


def _jsonable(x):
    try:
        import numpy as np

        if isinstance(x, np.integer):
            return int(x)
        if isinstance(x, np.ndarray):
            return x.tolist()
    except ImportError:  # pragma: no cover
        pass
    return str(x)
