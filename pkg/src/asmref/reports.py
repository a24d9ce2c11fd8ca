"""Verification report structures shared by the checking operations."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Witness:
    """A failing index tuple or point together with both sides of the equation."""

    indices: tuple
    lhs: object
    rhs: object

    def to_dict(self) -> dict:
        return {"indices": list(self.indices), "lhs": str(self.lhs), "rhs": str(self.rhs)}


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of checking one claim over one range."""

    claim: str
    checked: str
    passed: bool
    witnesses: tuple[Witness, ...] = ()

    def __post_init__(self):
        if not self.passed and not self.witnesses:
            raise ValueError("a failing report requires at least one witness")

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "checked": self.checked,
            "passed": self.passed,
            "witnesses": [w.to_dict() for w in self.witnesses],
        }
