"""Check reports shared by the verification routines and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Report:
    """Outcome of a named check; ``fields`` are rendered in insertion order."""

    check: str
    passed: bool
    fields: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"check": self.check, **self.fields, "pass": self.passed}

    def to_text(self) -> str:
        body = " ".join(f"{k}={_fmt(v)}" for k, v in self.fields.items())
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.check} {body}".rstrip()


def _fmt(v) -> str:
    if isinstance(v, (list, tuple)):
        return "[" + ",".join(_fmt(x) for x in v) + "]"
    return str(v)
