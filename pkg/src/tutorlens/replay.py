"""Replays raw student actions through the tutor's validation rules.

The tutor validates each attempted action against the assignment config and
emits classified events. A valid (or tolerated) attempt emits one `do` event,
followed by `fail` events for every rule it broke. Rule checks run in a fixed
order: dependence first, then incompatibility, then time, then world errors.

Blocking is immediate-checks only. Repeats, wrong-phase attempts, skipped
flow steps and unmet declared dependencies can block an action marked as
blocked; incompatibilities and time windows are deferred and never block.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime
from typing import Iterable, Iterator, Optional

from .model import (
    RELEVANT_ERROR_KINDS,
    AssignmentConfig,
    ErrorKind,
    EventKind,
    StudentEvent,
    StudentLog,
)


@dataclass(frozen=True)
class RawAction:
    """One attempted action as captured by the training environment."""

    student_id: str
    timestamp: datetime
    code: str
    world_error: Optional[str] = None  # environment failure token, if any


class TutorReplay:
    """Stateful validator for one student's raw action stream."""

    def __init__(self, config: AssignmentConfig) -> None:
        self.config = config
        self.reset()

    def reset(self) -> None:
        self.performed: set[str] = set()
        self.performed_at: dict[str, datetime] = {}
        self.cursor: int = 0  # index of the next expected correct-flow action
        self.tainted: bool = False

    # -- immediate checks ---------------------------------------------------

    def _current_phase(self) -> Optional[str]:
        flow = self.config.correct_flow
        if not flow:
            return None
        step = flow[min(self.cursor, len(flow) - 1)]
        spec = self.config.action(step)
        return spec.phase if spec is not None else None

    def _skipped_flow(self, position: int) -> list[str]:
        """Correct-flow steps between the cursor and `position`, still undone."""
        flow = self.config.correct_flow
        if position <= self.cursor:
            return []
        return [c for c in flow[self.cursor : position] if c not in self.performed]

    def _violated_dependencies(self, code: str) -> list[str]:
        """Skipped flow steps first, then unmet declared dependencies."""
        spec = self.config.action(code)
        position = self.config.flow_position(code)
        violated = self._skipped_flow(position) if position is not None else []
        if spec is not None:
            for dep in spec.dependencies:
                if dep not in self.performed and dep not in violated:
                    violated.append(dep)
        return violated

    # -- classification -----------------------------------------------------

    def classify_action(self, raw: RawAction) -> list[StudentEvent]:
        """Validate one attempt and return the events it produces.

        Always returns at least one event. The first event is the `do` or
        `try`; any `fail` events follow it, sharing its timestamp and
        action code.
        """
        code = raw.code
        spec = self.config.action(code)

        def ev(kind: EventKind, error: ErrorKind = ErrorKind.NONE, blamed: Optional[str] = None):
            return StudentEvent(
                student_id=raw.student_id,
                timestamp=raw.timestamp,
                kind=kind,
                action_code=code,
                error_kind=error,
                blamed_action=blamed,
            )

        if spec is None:
            return [ev(EventKind.DO, ErrorKind.NOT_FOUND)]

        is_repeat = code in self.performed
        phase = self._current_phase()
        wrong_phase = phase is not None and spec.phase != phase

        if code in self.config.blocked_actions:
            if is_repeat:
                return [ev(EventKind.TRY, ErrorKind.ALREADY_PERFORMED)]
            if wrong_phase:
                return [ev(EventKind.TRY, ErrorKind.NOT_FOUND)]
            if self._violated_dependencies(code):
                return [ev(EventKind.TRY)]

        if is_repeat:
            return [ev(EventKind.DO, ErrorKind.ALREADY_PERFORMED)]
        if wrong_phase:
            return [ev(EventKind.DO, ErrorKind.NOT_FOUND)]

        events = [ev(EventKind.DO)]

        violated = self._violated_dependencies(code)
        dep_kind = (
            ErrorKind.COMPLEX_DEPENDENCE if len(violated) >= 2 else ErrorKind.SIMPLE_DEPENDENCE
        )
        for missing in violated:
            events.append(ev(EventKind.FAIL, dep_kind, missing))

        for other in spec.incompatibilities:
            if other in self.performed:
                events.append(ev(EventKind.FAIL, ErrorKind.INCOMPATIBILITY, other))

        for tc in spec.time_constraints:
            done_at = self.performed_at.get(tc.other)
            if done_at is None:
                continue
            elapsed = (raw.timestamp - done_at).total_seconds()
            too_soon = tc.min_seconds is not None and elapsed < tc.min_seconds
            too_late = tc.max_seconds is not None and elapsed > tc.max_seconds
            if too_soon or too_late:
                events.append(ev(EventKind.FAIL, ErrorKind.TIME, tc.other))

        if raw.world_error:
            events.append(ev(EventKind.FAIL, ErrorKind.WORLD, raw.world_error))

        self.performed.add(code)
        self.performed_at[code] = raw.timestamp
        position = self.config.flow_position(code)
        if position is not None:
            self.cursor = max(self.cursor, position + 1)

        for e in events:
            if e.error_kind in RELEVANT_ERROR_KINDS:
                self.tainted = True
            elif e.error_kind is ErrorKind.WORLD and spec.world_relevant:
                self.tainted = True

        return events


def replay_student(
    config: AssignmentConfig,
    raw_actions: Iterable[RawAction],
    grade: Optional[float] = None,
) -> StudentLog:
    """Run one student's raw stream through the tutor and build their log."""
    raws = list(raw_actions)
    if not raws:
        raise ValueError("student stream has no actions")
    student_id = raws[0].student_id
    replay = TutorReplay(config)
    events: list[StudentEvent] = []
    for raw in raws:
        if raw.student_id != student_id:
            raise ValueError(f"mixed students in stream: {raw.student_id!r} != {student_id!r}")
        events.extend(replay.classify_action(raw))
    return StudentLog.from_events(student_id, events, grade=grade)


def validation_groups(events: Iterable[StudentEvent]) -> Iterator[list[StudentEvent]]:
    """Regroup a classified stream into per-attempt groups.

    Each group is one `do`/`try` plus the `fail` events emitted by the same
    validation (same timestamp and action code).
    """
    group: list[StudentEvent] = []
    for event in events:
        if event.kind is EventKind.FAIL and group:
            head = group[0]
            if head.timestamp == event.timestamp and head.action_code == event.action_code:
                group.append(event)
                continue
        if group:
            yield group
        group = [event]
    if group:
        yield group
