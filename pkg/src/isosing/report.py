"""Uniform result records shared by every verifier and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS = "PASS"
FAIL = "FAIL"
INCONCLUSIVE = "INCONCLUSIVE"
SKIPPED = "SKIPPED"


@dataclass
class Item:
    label: str
    ok: bool
    detail: str = ""


@dataclass
class Report:
    """A named list of checked items plus free-form notes and derived data."""

    name: str
    items: list[Item] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    data: dict[str, Any] = field(default_factory=dict)
    inconclusive: list[str] = field(default_factory=list)
    skipped: str = ""

    def check(self, label: str, ok: bool, detail: str = "") -> bool:
        self.items.append(Item(label, bool(ok), detail))
        return bool(ok)

    def undecided(self, label: str, detail: str) -> None:
        self.inconclusive.append(f"{label}: {detail}")

    @property
    def ok(self) -> bool:
        return all(i.ok for i in self.items) and not self.inconclusive and not self.skipped

    @property
    def status(self) -> str:
        if any(not i.ok for i in self.items):
            return FAIL
        if self.skipped:
            return SKIPPED
        if self.inconclusive:
            return INCONCLUSIVE
        return PASS

    def failures(self) -> list[Item]:
        return [i for i in self.items if not i.ok]

    def summary(self) -> str:
        n = len(self.items)
        bad = self.failures()
        parts = [f"{n - len(bad)}/{n} items ok"]
        if bad:
            parts.append("failed: " + "; ".join(f"{i.label} ({i.detail})" if i.detail else i.label for i in bad[:5]))
        if self.inconclusive:
            parts.append("inconclusive: " + "; ".join(self.inconclusive[:5]))
        if self.skipped:
            parts.append("skipped: " + self.skipped)
        return ", ".join(parts)
