"""Pass/fail reports returned by the verify_* functions."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Report:
    name: str
    checks: dict[str, bool] = field(default_factory=dict)
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def __bool__(self) -> bool:
        return self.ok

    def failures(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]

    def to_dict(self) -> dict:
        return {"name": self.name, "ok": self.ok, "checks": dict(self.checks), "details": _jsonable(self.details)}

    def __str__(self):
        status = "PASS" if self.ok else "FAIL"
        parts = [f"{self.name}: {status}"]
        for k, v in self.checks.items():
            parts.append(f"  {'ok  ' if v else 'FAIL'} {k}")
        return "\n".join(parts)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "item"):
        return x.item()
    if isinstance(x, (int, float, str, bool)) or x is None:
        return x
    return str(x)
