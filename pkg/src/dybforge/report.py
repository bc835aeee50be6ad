"""Verification reports: per-identity outcomes with witnesses and timings."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

from .scalar import format_scalar

SCHEMA_VERSION = 1
TOOLKIT_VERSION = "0.1.0"


@dataclass
class IdentityResult:
    name: str
    anchor: str
    passed: bool
    witness: str | None = None
    millis: float = 0.0

    def as_dict(self):
        out = {
            "name": self.name,
            "anchor": self.anchor,
            "pass": self.passed,
            "millis": round(self.millis, 3),
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class Report:
    suite: str
    identities: list = field(default_factory=list)

    @property
    def verdict(self):
        return all(r.passed for r in self.identities)

    def add(self, result):
        self.identities.append(result)
        return result

    def extend(self, other):
        self.identities.extend(other.identities)
        return self

    def run(self, name, anchor, check):
        """check() returns True/False or (ok, witness_text)."""
        start = time.perf_counter()
        out = check()
        millis = (time.perf_counter() - start) * 1000.0
        if isinstance(out, tuple):
            ok, witness = out
        else:
            ok, witness = out, None
        if ok:
            witness = None
        elif witness is None:
            witness = "identity failed"
        return self.add(IdentityResult(name, anchor, bool(ok), witness, millis))

    def as_dict(self):
        return {
            "schema": SCHEMA_VERSION,
            "suite": self.suite,
            "identities": [r.as_dict() for r in self.identities],
            "verdict": "pass" if self.verdict else "fail",
            "toolkit_version": TOOLKIT_VERSION,
        }

    def to_json(self):
        return json.dumps(self.as_dict(), indent=2)

    def to_markdown(self):
        lines = [f"## suite: {self.suite}", ""]
        for r in self.identities:
            mark = "PASS" if r.passed else "FAIL"
            line = f"- [{mark}] {r.name} ({r.anchor}, {r.millis:.0f} ms)"
            if r.witness:
                line += f"\n  witness: {r.witness}"
            lines.append(line)
        lines.append("")
        lines.append(f"verdict: {'pass' if self.verdict else 'fail'}")
        return "\n".join(lines)


def matrix_witness(diff):
    """Text witness from the first nonzero entry of a DynMatrix difference."""
    hit = diff.first_nonzero()
    if hit is None:
        return None
    i, j, value = hit
    return f"entry ({i},{j}) = {format_scalar(value)}"


def matrices_equal(lhs, rhs):
    """(ok, witness) comparison helper for DynMatrix operands."""
    diff = lhs - rhs
    if diff.is_zero():
        return True, None
    return False, matrix_witness(diff)
