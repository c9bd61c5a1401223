"""A small, JSON-friendly container for exhaustive check results."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterator


@dataclass
class Report:
    """Named boolean flags plus the first witness for each failing flag.

    A flag value of ``None`` means the check was not applicable (its
    hypothesis was unmet); ``notes`` carries the reason.
    """

    flags: dict[str, bool | None] = field(default_factory=dict)
    witnesses: dict[str, Any] = field(default_factory=dict)
    info: dict[str, Any] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def set(self, name: str, value: bool | None, witness: Any = None) -> None:
        self.flags[name] = value
        if value is False and witness is not None:
            self.witnesses[name] = witness

    def __getitem__(self, name: str) -> bool | None:
        return self.flags[name]

    def __contains__(self, name: str) -> bool:
        return name in self.flags

    def __iter__(self) -> Iterator[str]:
        return iter(self.flags)

    def all(self, *names: str) -> bool:
        """True iff every named flag (or every flag, if none given) is True."""
        keys = names or tuple(self.flags)
        return all(self.flags[k] is True for k in keys)

    def failing(self) -> list[str]:
        return [k for k, v in self.flags.items() if v is False]

    def merge(self, other: Report, prefix: str = "") -> None:
        for k, v in other.flags.items():
            self.flags[prefix + k] = v
        for k, v in other.witnesses.items():
            self.witnesses[prefix + k] = v
        for k, v in other.info.items():
            self.info[prefix + k] = v
        self.notes.extend(other.notes)

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"flags": dict(self.flags)}
        if self.witnesses:
            out["witnesses"] = {k: _jsonable(v) for k, v in self.witnesses.items()}
        if self.info:
            out["info"] = {k: _jsonable(v) for k, v in self.info.items()}
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _jsonable(value: Any) -> Any:
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(_jsonable(v) for v in value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, Report):
        return value.to_json()
    return value
