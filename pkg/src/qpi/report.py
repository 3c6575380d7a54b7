"""Schema-versioned JSON-lines reports."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

SCHEMA_VERSION = 1
STATUSES = ("pass", "fail", "error")


@dataclass
class Record:
    name: str
    parameters: dict[str, Any]
    status: str
    witness: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")

    def to_json(self) -> dict:
        return dict(type="record", name=self.name, parameters=self.parameters,
                    status=self.status, witness=self.witness)


@dataclass
class Report:
    command: list[str]
    records: list[Record] = field(default_factory=list)
    duration_s: float = 0.0

    def sort(self) -> None:
        self.records.sort(key=lambda r: r.name)

    def counts(self) -> dict[str, int]:
        out = {s: 0 for s in STATUSES}
        for r in self.records:
            out[r.status] += 1
        return out

    def exit_code(self) -> int:
        c = self.counts()
        if c["error"]:
            return 2
        return 1 if c["fail"] else 0

    def to_lines(self) -> list[str]:
        lines = [dict(type="header", schema_version=SCHEMA_VERSION, command=self.command)]
        lines += [r.to_json() for r in self.records]
        lines.append(dict(type="summary", **self.counts(), duration_s=round(self.duration_s, 3)))
        return [json.dumps(x, sort_keys=True) for x in lines]

    def write(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("\n".join(self.to_lines()) + "\n")

    @classmethod
    def from_lines(cls, lines: list[str]) -> "Report":
        objs = [json.loads(x) for x in lines if x.strip()]
        for o in objs:
            validate(o)
        if not objs or objs[0]["type"] != "header" or objs[-1]["type"] != "summary":
            raise ValueError("report must start with a header and end with a summary")
        rep = cls(objs[0]["command"], duration_s=objs[-1]["duration_s"])
        rep.records = [Record(o["name"], o["parameters"], o["status"], o["witness"]) for o in objs[1:-1]]
        if rep.counts() != {s: objs[-1][s] for s in STATUSES}:
            raise ValueError("summary counts disagree with the records")
        return rep


_REQUIRED = {
    "header": {"schema_version": int, "command": list},
    "record": {"name": str, "parameters": dict, "status": str, "witness": dict},
    "summary": {"pass": int, "fail": int, "error": int, "duration_s": (int, float)},
}


def validate(obj: dict) -> None:
    """Raise ValueError unless ``obj`` is a well-formed report line."""
    kind = obj.get("type")
    if kind not in _REQUIRED:
        raise ValueError(f"unknown line type {kind!r}")
    expected = _REQUIRED[kind]
    extra = set(obj) - set(expected) - {"type"}
    if extra:
        raise ValueError(f"unexpected fields {sorted(extra)} in {kind} line")
    for key, typ in expected.items():
        if key not in obj:
            raise ValueError(f"{kind} line lacks {key!r}")
        if not isinstance(obj[key], typ) or isinstance(obj[key], bool):
            raise ValueError(f"{kind}.{key} has type {type(obj[key]).__name__}")
    if kind == "header" and obj["schema_version"] != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema version {obj['schema_version']}")
    if kind == "record" and obj["status"] not in STATUSES:
        raise ValueError(f"bad status {obj['status']!r}")
