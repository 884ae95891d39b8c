"""Reading and writing student log corpora.

A corpus is a JSON-lines file. Each event is one object:

    {"student_id": "s017", "timestamp": "2013-05-02T10:03:21", "kind": "fail",
     "action": "f1t20", "error_kind": "simple_dependence", "blamed": "f1t16"}

After a student's events, one summary line carries their grade:

    {"student_id": "s017", "grade": 6.5}

Students may interleave; events are grouped by student in file order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path
from typing import Iterable, Optional

from .model import ErrorKind, EventKind, StudentEvent, StudentLog


@dataclass
class CorpusLoadResult:
    """Parsed logs plus diagnostics for every line that could not be used."""

    logs: list[StudentLog]
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems


def event_to_record(event: StudentEvent) -> dict:
    record = {
        "student_id": event.student_id,
        "timestamp": event.timestamp.isoformat(),
        "kind": event.kind.value,
        "action": event.action_code,
        "error_kind": event.error_kind.value,
    }
    if event.blamed_action is not None:
        record["blamed"] = event.blamed_action
    return record


def event_from_record(record: dict) -> StudentEvent:
    return StudentEvent(
        student_id=record["student_id"],
        timestamp=datetime.fromisoformat(record["timestamp"]),
        kind=EventKind(record["kind"]),
        action_code=record["action"],
        error_kind=ErrorKind(record.get("error_kind", "none")),
        blamed_action=record.get("blamed"),
    )


def save_corpus(logs: Iterable[StudentLog], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for log in logs:
            for event in log.events:
                fh.write(json.dumps(event_to_record(event)) + "\n")
            summary = {"student_id": log.student_id, "grade": log.grade}
            fh.write(json.dumps(summary) + "\n")


def load_corpus(path: str | Path) -> CorpusLoadResult:
    """Parse a corpus file, keeping every salvageable student log.

    Lines that fail to parse are reported, not fatal. A student whose events
    are unusable as a whole (out of order, empty) is dropped with a problem
    entry naming them.
    """
    events_by_student: dict[str, list[StudentEvent]] = {}
    grades: dict[str, Optional[float]] = {}
    problems: list[str] = []

    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                problems.append(f"line {line_no}: invalid JSON ({exc.msg})")
                continue
            if not isinstance(record, dict) or "student_id" not in record:
                problems.append(f"line {line_no}: not an event or summary object")
                continue
            if "kind" not in record:
                sid = record["student_id"]
                grade = record.get("grade")
                grades[sid] = float(grade) if grade is not None else None
                continue
            try:
                event = event_from_record(record)
            except (KeyError, ValueError) as exc:
                problems.append(f"line {line_no}: bad event ({exc})")
                continue
            events_by_student.setdefault(event.student_id, []).append(event)

    logs: list[StudentLog] = []
    for sid, events in events_by_student.items():
        try:
            logs.append(StudentLog.from_events(sid, events, grade=grades.get(sid)))
        except ValueError as exc:
            problems.append(f"student {sid}: unusable log ({exc})")
    for sid in grades:
        if sid not in events_by_student:
            problems.append(f"student {sid}: summary line without events")

    return CorpusLoadResult(logs=logs, problems=problems)
