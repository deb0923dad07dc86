from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Report:
    """Outcome of one check.

    ``witness`` maps a role ("A", "B", "Z1", "Zc", ...) to the display name of the
    element playing it, so a failing report can be re-evaluated by hand.
    """

    check: str
    ok: bool
    witness: dict[str, Any] = field(default_factory=dict)
    detail: str = ""
    exhaustive: bool = True

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            text = f"{self.check}: pass"
            if self.detail:
                text += f" ({self.detail})"
        else:
            text = f"{self.check}: {self.detail or 'fail'}"
            if self.witness:
                text += " [" + ", ".join(f"{k}={v}" for k, v in self.witness.items()) + "]"
        if not self.exhaustive:
            text += " (sampled, not exhaustive)"
        return text


def passed(check: str, detail: str = "", exhaustive: bool = True) -> Report:
    return Report(check, True, {}, detail, exhaustive)


def failed(check: str, detail: str, exhaustive: bool = True, **witness: Any) -> Report:
    return Report(check, False, dict(witness), detail, exhaustive)


# Alias used by the cyclic-flat axiom checkers.
AxiomReport = Report
