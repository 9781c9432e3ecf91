"""Certifying one identity lhs = rhs and recording it in a report."""

from __future__ import annotations

from .engine import Element, SearchPolicy, prove_zero
from .report import Timer, VerificationReport
from .tensor import TensorElement, prove_zero_tensor


def certify(report: VerificationReport, name: str, lhs, rhs, policy: SearchPolicy | None = None, extra=()):
    """prove_zero(lhs - rhs) and record the certificate."""
    with Timer() as t:
        diff = lhs - rhs
        if isinstance(diff, TensorElement):
            outcome = prove_zero_tensor(diff, policy, extra)
        elif isinstance(diff, Element):
            outcome = prove_zero(diff, policy, extra)
        else:
            raise TypeError(f"cannot certify {type(diff).__name__}")
    return report.record(name, lhs, rhs, outcome.certificate, t.millis, diff)
