"""Verification reports shared by all suites."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

from .engine import Certificate


@dataclass
class IdentityResult:
    name: str
    lhs: str
    rhs: str
    certificate: Certificate
    millis: float | None = None
    # lhs - rhs as an algebra object, kept for soundness cross-checks
    difference: object = field(default=None, repr=False, compare=False)

    def to_dict(self, timing: bool = False) -> dict:
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "certificate": str(self.certificate),
            "millis": round(self.millis, 3) if timing and self.millis is not None else None,
        }


@dataclass
class VerificationReport:
    suite: str
    params: dict = field(default_factory=dict)
    identities: list = field(default_factory=list)
    duration: float = 0.0
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.identities) and all(r.certificate is Certificate.PROVED_ZERO for r in self.identities)

    @property
    def budget_exhausted(self) -> bool:
        return any(r.certificate is Certificate.BUDGET_EXHAUSTED for r in self.identities)

    def failures(self) -> list:
        return [r for r in self.identities if r.certificate is not Certificate.PROVED_ZERO]

    def record(self, name: str, lhs, rhs, certificate: Certificate, millis=None, difference=None) -> IdentityResult:
        r = IdentityResult(name, str(lhs), str(rhs), Certificate(certificate), millis, difference)
        self.identities.append(r)
        return r

    def exact(self, name: str, lhs, rhs) -> IdentityResult:
        """Record an equality of plain values (counts, ranks, evaluations)."""
        cert = Certificate.PROVED_ZERO if lhs == rhs else Certificate.REFUTED
        return self.record(name, lhs, rhs, cert)

    def extend(self, other: "VerificationReport", prefix: str = "") -> None:
        for r in other.identities:
            self.identities.append(
                IdentityResult(prefix + r.name, r.lhs, r.rhs, r.certificate, r.millis, r.difference)
            )
        self.notes.update(other.notes)

    def sort(self) -> None:
        self.identities.sort(key=lambda r: r.name)

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "suite": self.suite,
            "params": self.params,
            "identities": [r.to_dict(timing) for r in self.identities],
            "pass": self.passed,
        }
        if self.notes:
            out["notes"] = self.notes
        if timing:
            out["seconds"] = round(self.duration, 3)
        return out

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=False)

    def summary(self) -> str:
        bad = self.failures()
        status = "PASS" if self.passed else "FAIL"
        return f"{self.suite}: {status} ({len(self.identities) - len(bad)}/{len(self.identities)} identities)"


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.millis = (time.perf_counter() - self.start) * 1000.0
        return False
