"""Verification reports: a named list of checks with a stable JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List

STATUSES = ("pass", "fail", "skip")


@dataclass
class Check:
    id: str
    status: str
    expected: str = ""
    got: str = ""
    anchor: str = ""

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    def to_json(self) -> dict:
        return {"id": self.id, "anchor": self.anchor, "status": self.status, "expected": self.expected, "got": self.got}


@dataclass
class Report:
    suite: str
    checks: List[Check] = field(default_factory=list)
    data: Dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def name(self) -> str:
        return self.suite

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, id: str, ok: bool, expected="", got="", anchor: str = "") -> bool:
        self.checks.append(Check(id, "pass" if ok else "fail", _s(expected), _s(got), anchor))
        return bool(ok)

    def skip(self, id: str, reason: str, anchor: str = "") -> None:
        self.checks.append(Check(id, "skip", "", reason, anchor))

    def extend(self, other: "Report", prefix: str = "", anchor: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(f"{prefix}{c.id}", c.status, c.expected, c.got, c.anchor or anchor))

    def summary(self) -> Dict[str, int]:
        return {"pass": sum(c.status == "pass" for c in self.checks), "fail": sum(c.status == "fail" for c in self.checks)}

    def to_json(self) -> dict:
        return {"suite": self.suite, "checks": [c.to_json() for c in self.checks], "summary": self.summary()}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        lines = [f"== {self.suite} =="]
        for c in self.checks:
            line = f"[{c.status.upper():4}] {c.id}"
            if c.anchor:
                line += f"  ({c.anchor})"
            lines.append(line)
            if c.status == "fail":
                lines.append(f"       expected: {c.expected}")
                lines.append(f"       got:      {c.got}")
        s = self.summary()
        lines.append(f"-- {s['pass']} passed, {s['fail']} failed")
        return "\n".join(lines) + "\n"


def _s(x) -> str:
    return x if isinstance(x, str) else str(x)


def parse_report(text: str) -> Report:
    """Inverse of ``Report.dumps``; validates the schema."""
    obj = json.loads(text)
    if set(obj) != {"suite", "checks", "summary"}:
        raise ValueError("report must have exactly the keys suite, checks, summary")
    checks = []
    for c in obj["checks"]:
        if set(c) != {"id", "anchor", "status", "expected", "got"}:
            raise ValueError(f"malformed check {c!r}")
        if c["status"] not in STATUSES:
            raise ValueError(f"bad status {c['status']!r}")
        checks.append(Check(c["id"], c["status"], c["expected"], c["got"], c["anchor"]))
    rep = Report(obj["suite"], checks)
    if rep.summary() != obj["summary"]:
        raise ValueError("summary does not match the checks")
    return rep


def merge(suite: str, reports: List[Report]) -> Report:
    out = Report(suite)
    for r in reports:
        out.extend(r, prefix=f"{r.suite}: ")
    return out
