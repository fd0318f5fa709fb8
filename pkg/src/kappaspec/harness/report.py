"""Checks and verification reports."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

RELATIONS = ("<=", ">=", "<", ">", "==")


@dataclass(frozen=True)
class Check:
    """A single signed comparison. ``margin`` > 0 means slack on the passing side."""

    name: str
    lhs: float
    rhs: float
    relation: str
    anchor: str
    tol: float = 0.0

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")

    @property
    def margin(self):
        a, b = float(self.lhs), float(self.rhs)
        if math.isnan(a) or math.isnan(b):
            return math.nan
        if self.relation in ("<=", "<"):
            return b - a
        if self.relation in (">=", ">"):
            return a - b
        return -abs(a - b)

    @property
    def passed(self):
        m = self.margin
        if math.isnan(m):
            return False
        if self.relation in ("<", ">"):
            return m > 0
        return m >= -self.tol

    def as_dict(self):
        return {"name": self.name, "lhs": _num(self.lhs), "rhs": _num(self.rhs), "relation": self.relation,
                "margin": _num(self.margin), "tol": self.tol, "pass": self.passed, "anchor": self.anchor}


def _num(x):
    x = float(x)
    if math.isfinite(x):
        return x
    return str(x)


@dataclass
class VerificationReport:
    suite: str
    checks: list = field(default_factory=list)
    domain: dict | None = None
    provenance: dict = field(default_factory=dict)

    def add(self, check):
        self.checks.append(check)
        return check

    def extend(self, checks):
        self.checks.extend(checks)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    @property
    def failures(self):
        return [c for c in self.checks if not c.passed]

    def as_dict(self):
        return {"suite": self.suite, "passed": self.passed, "domain": self.domain,
                "provenance": self.provenance, "checks": [c.as_dict() for c in self.checks]}

    def to_json(self):
        return json.dumps(self.as_dict(), indent=2, sort_keys=True)

    def to_csv(self):
        rows = ["name,lhs,rhs,relation,margin,pass,anchor"]
        for c in self.checks:
            rows.append(",".join([_quote(c.name), repr(float(c.lhs)), repr(float(c.rhs)), c.relation,
                                  repr(float(c.margin)), str(c.passed).lower(), _quote(c.anchor)]))
        return "\n".join(rows) + "\n"

    def to_table(self):
        width = max([len(c.name) for c in self.checks] + [5])
        lines = [f"suite: {self.suite}"]
        for c in self.checks:
            flag = "PASS" if c.passed else "FAIL"
            lines.append(f"{flag}  {c.name:<{width}}  {float(c.lhs): .10g} {c.relation} {float(c.rhs): .10g}"
                         f"  margin {float(c.margin): .3e}  [{c.anchor}]")
        lines.append(f"{sum(c.passed for c in self.checks)}/{len(self.checks)} checks passed")
        return "\n".join(lines)


def _quote(s):
    if any(ch in s for ch in ',"\n'):
        return '"' + s.replace('"', '""') + '"'
    return s
