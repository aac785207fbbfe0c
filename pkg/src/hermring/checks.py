"""Verdict records shared by the verification suites."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


@dataclass(frozen=True)
class Check:
    label: str
    status: str  # PASS, FAIL or SKIP
    detail: str = ""
    rigorous: bool | None = None

    @property
    def passed(self) -> bool:
        return self.status == "PASS"

    def line(self) -> str:
        parts = [self.label, self.status]
        if self.rigorous is not None:
            parts.append("rigorous" if self.rigorous else "consistent-at-truncation")
        if self.detail:
            parts.append(self.detail)
        return " ".join(parts)


def check(label: str, ok: bool, detail: str = "", rigorous: bool | None = None) -> Check:
    return Check(label, "PASS" if ok else "FAIL", detail, rigorous if ok else None)


def summary(checks: Iterable[Check]) -> str:
    checks = list(checks)
    n_pass = sum(c.status == "PASS" for c in checks)
    n_fail = sum(c.status == "FAIL" for c in checks)
    n_rig = sum(bool(c.rigorous) for c in checks if c.status == "PASS")
    return f"TOTAL pass={n_pass} fail={n_fail} rigorous={n_rig}"


def fmt_index(idx) -> str:
    return str(idx) if isinstance(idx, int) else "(" + ",".join(str(x) for x in idx) + ")"


def describe_difference(a, b) -> str:
    diff = a.first_difference(b)
    if diff is None:
        return ""
    idx, x, y = diff
    return f"first difference at {fmt_index(idx)}: {x} != {y}"
