"""Suite reports: ``{"suite", "params", "cases": [{"name", "status", "expected", "actual"}]}``."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

SCHEMA = 1


def _plain(x: Any) -> Any:
    if isinstance(x, (bool, str, type(None))):
        return x
    if isinstance(x, int):
        # JSON consumers lose precision beyond 2^53
        return x if abs(x) < 2 ** 53 else str(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return str(x)


@dataclass
class Report:
    suite: str
    params: dict = field(default_factory=dict)
    cases: list[dict] = field(default_factory=list)

    def check(self, name: str, expected: Any, actual: Any) -> bool:
        ok = expected == actual
        self.add(name, ok, expected, actual)
        return ok

    def add(self, name: str, ok: bool, expected: Any = True, actual: Any = None, status: str | None = None):
        if actual is None:
            actual = ok
        self.cases.append({
            "name": name,
            "status": status or ("pass" if ok else "fail"),
            "expected": _plain(expected),
            "actual": _plain(actual),
        })

    def skip(self, name: str, reason: str):
        self.cases.append({"name": name, "status": "skipped", "expected": None, "actual": reason})

    @property
    def passed(self) -> bool:
        return all(c["status"] != "fail" for c in self.cases)

    def failures(self) -> list[dict]:
        return [c for c in self.cases if c["status"] == "fail"]

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "suite": self.suite,
            "params": _plain(self.params),
            "cases": sorted(self.cases, key=lambda c: c["name"]),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def merge(self, other: Report, prefix: str = "") -> None:
        for c in other.cases:
            self.cases.append(dict(c, name=prefix + c["name"]))
