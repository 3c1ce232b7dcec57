"""Validation reports with bounded witness lists and exact counts."""
from __future__ import annotations

from typing import Any, Iterable

WITNESS_CAP = 16


def render(label: Any) -> str:
    """Canonical string form of an element label.

    Strings are kept as is, tuples are rendered recursively as
    ``(a,b,...)`` and everything else goes through ``str``.
    """
    if isinstance(label, str):
        return label
    if isinstance(label, tuple):
        return "(" + ",".join(render(x) for x in label) + ")"
    return str(label)


def _jsonable(value: Any) -> Any:
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    if isinstance(value, tuple):
        return [_jsonable(v) for v in value]
    if isinstance(value, list):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return render(value)


class ValidationReport:
    """Named checks, each with an exact violation count and at most
    ``WITNESS_CAP`` witnesses."""

    def __init__(self, subject: str = ""):
        self.subject = subject
        self._counts: dict[str, int] = {}
        self._witnesses: dict[str, list] = {}
        self.notes: dict[str, Any] = {}

    def check(self, name: str) -> None:
        """Register a check so that it is listed even when it passes."""
        self._counts.setdefault(name, 0)
        self._witnesses.setdefault(name, [])

    def fail(self, name: str, witness: Any = None) -> None:
        self.check(name)
        self._counts[name] += 1
        if len(self._witnesses[name]) < WITNESS_CAP:
            self._witnesses[name].append(witness)

    def expect(self, name: str, condition: bool, witness: Any = None) -> bool:
        self.check(name)
        if not condition:
            self.fail(name, witness)
        return condition

    @property
    def ok(self) -> bool:
        return all(c == 0 for c in self._counts.values())

    def is_empty(self) -> bool:
        """True iff no violation was recorded."""
        return self.ok

    @property
    def checks(self) -> list[str]:
        return sorted(self._counts)

    def violations(self, name: str | None = None) -> int:
        if name is None:
            return sum(self._counts.values())
        return self._counts.get(name, 0)

    def witnesses(self, name: str) -> list:
        return list(self._witnesses.get(name, []))

    def failed(self) -> list[str]:
        return sorted(k for k, v in self._counts.items() if v)

    def merge(self, other: "ValidationReport", prefix: str = "") -> "ValidationReport":
        for name in other._counts:
            key = prefix + name
            self.check(key)
            self._counts[key] += other._counts[name]
            room = WITNESS_CAP - len(self._witnesses[key])
            self._witnesses[key].extend(other._witnesses[name][:max(room, 0)])
        for k, v in other.notes.items():
            self.notes[prefix + k] = v
        return self

    def to_dict(self) -> dict:
        checks = {}
        for name in sorted(self._counts):
            checks[name] = {
                "ok": self._counts[name] == 0,
                "violations": self._counts[name],
                "witnesses": _jsonable(self._witnesses[name]),
            }
        out = {"ok": self.ok, "checks": checks}
        if self.subject:
            out["subject"] = self.subject
        if self.notes:
            out["notes"] = _jsonable(self.notes)
        return out

    def __repr__(self) -> str:
        state = "ok" if self.ok else "failed: " + ", ".join(self.failed())
        return f"<ValidationReport {self.subject or ''} {state}>"


def combine(reports: Iterable[tuple[str, ValidationReport]], subject: str = "") -> ValidationReport:
    out = ValidationReport(subject)
    for prefix, rep in reports:
        out.merge(rep, prefix)
    return out
