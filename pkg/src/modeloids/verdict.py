"""Verification results that name the first violated axiom and a witness."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class Verdict:
    """Outcome of an axiom check.

    ``ok`` is True when every axiom holds.  Otherwise ``axiom`` names the
    first violated axiom in the checking order and ``witness`` carries the
    offending elements.
    """

    ok: bool
    axiom: str | None = None
    witness: tuple[Any, ...] | None = None

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "ok"
        if self.witness is None:
            return f"violation: {self.axiom}"
        return f"violation: {self.axiom} witness: {self.witness!r}"


def passed() -> Verdict:
    return Verdict(True)


def violated(axiom: str, witness: tuple[Any, ...] | None = None) -> Verdict:
    return Verdict(False, axiom, witness)
