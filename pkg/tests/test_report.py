from __future__ import annotations

import json

import pytest

from qpi.report import SCHEMA_VERSION, Record, Report, validate


def _report() -> Report:
    rep = Report(["verify", "identity", "all"], duration_s=1.25)
    rep.records = [
        Record("b", dict(order=10), "fail", dict(first_mismatch=3)),
        Record("a", dict(order=10), "pass"),
        Record("c", {}, "error", dict(error="ValueError", message="boom")),
    ]
    rep.sort()
    return rep


def test_round_trip():
    rep = _report()
    back = Report.from_lines(rep.to_lines())
    assert [r.name for r in back.records] == ["a", "b", "c"]
    assert back.records[1].witness == dict(first_mismatch=3)
    assert back.counts() == rep.counts() == {"pass": 1, "fail": 1, "error": 1}
    assert back.duration_s == 1.25


def test_layout():
    lines = [json.loads(x) for x in _report().to_lines()]
    assert lines[0] == {"type": "header", "schema_version": SCHEMA_VERSION,
                        "command": ["verify", "identity", "all"]}
    assert [x["type"] for x in lines] == ["header", "record", "record", "record", "summary"]


def test_exit_codes():
    rep = _report()
    assert rep.exit_code() == 2
    rep.records = [r for r in rep.records if r.status != "error"]
    assert rep.exit_code() == 1
    rep.records = [r for r in rep.records if r.status == "pass"]
    assert rep.exit_code() == 0


def test_write(tmp_path):
    path = tmp_path / "r.jsonl"
    _report().write(str(path))
    assert Report.from_lines(path.read_text().splitlines()).counts()["fail"] == 1


@pytest.mark.parametrize("line", [
    {"type": "header", "schema_version": 2, "command": []},
    {"type": "header", "schema_version": 1},
    {"type": "record", "name": "x", "parameters": {}, "status": "maybe", "witness": {}},
    {"type": "record", "name": 3, "parameters": {}, "status": "pass", "witness": {}},
    {"type": "summary", "pass": True, "fail": 0, "error": 0, "duration_s": 0.0},
    {"type": "summary", "pass": 0, "fail": 0, "error": 0, "duration_s": 0.0, "extra": 1},
    {"type": "other"},
])
def test_validate_rejects(line):
    with pytest.raises(ValueError):
        validate(line)


def test_summary_must_match_records():
    lines = _report().to_lines()
    summary = json.loads(lines[-1])
    summary["pass"] = 5
    lines[-1] = json.dumps(summary)
    with pytest.raises(ValueError):
        Report.from_lines(lines)
    with pytest.raises(ValueError):
        Report.from_lines(lines[1:])


def test_bad_status():
    with pytest.raises(ValueError):
        Record("x", {}, "unknown")
