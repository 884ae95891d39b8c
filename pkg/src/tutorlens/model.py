"""Core vocabulary for procedural-training assignments and student logs.

An assignment is an ordered flow of actions plus extra (wrong but available)
actions, each with dependencies, incompatibilities, optional time constraints
and a pedagogical weight. Student activity is a time-ordered list of
classified events (do / try / fail).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from pathlib import Path
from typing import Iterable, Optional


class EventKind(Enum):
    DO = "do"
    TRY = "try"
    FAIL = "fail"


class ErrorKind(Enum):
    SIMPLE_DEPENDENCE = "simple_dependence"
    COMPLEX_DEPENDENCE = "complex_dependence"
    INCOMPATIBILITY = "incompatibility"
    TIME = "time"
    WORLD = "world"
    ALREADY_PERFORMED = "already_performed"
    NOT_FOUND = "not_found"
    NONE = "none"


class Zone(Enum):
    CORRECT_FLOW = "correct_flow"
    IRRELEVANT_ERRORS = "irrelevant_errors"
    RELEVANT_ERRORS = "relevant_errors"


#: Error kinds that taint a student's run (influence the final result).
RELEVANT_ERROR_KINDS = frozenset(
    {
        ErrorKind.SIMPLE_DEPENDENCE,
        ErrorKind.COMPLEX_DEPENDENCE,
        ErrorKind.INCOMPATIBILITY,
        ErrorKind.TIME,
    }
)


@dataclass(frozen=True)
class TimeConstraint:
    """Elapsed-seconds window between another action and this one."""

    other: str
    min_seconds: Optional[float] = None
    max_seconds: Optional[float] = None


@dataclass(frozen=True)
class ActionSpec:
    """One action available to students in the training environment."""

    code: str
    phase: str
    description: str = ""
    dependencies: tuple[str, ...] = ()
    incompatibilities: tuple[str, ...] = ()
    time_constraints: tuple[TimeConstraint, ...] = ()
    weight: float = 1.0
    tutoring_message: Optional[str] = None
    world_relevant: bool = False  # world errors on this action taint the run

    def __post_init__(self) -> None:
        object.__setattr__(self, "dependencies", tuple(self.dependencies))
        object.__setattr__(self, "incompatibilities", tuple(self.incompatibilities))
        object.__setattr__(
            self,
            "time_constraints",
            tuple(
                tc if isinstance(tc, TimeConstraint) else TimeConstraint(**tc)
                for tc in self.time_constraints
            ),
        )


@dataclass(frozen=True)
class AssignmentConfig:
    """A practical assignment: the correct flow plus every available action."""

    assignment_id: str
    phases: tuple[str, ...]
    correct_flow: tuple[str, ...]
    actions: tuple[ActionSpec, ...]
    blocked_actions: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "phases", tuple(self.phases))
        object.__setattr__(self, "correct_flow", tuple(self.correct_flow))
        object.__setattr__(self, "actions", tuple(self.actions))
        object.__setattr__(self, "blocked_actions", frozenset(self.blocked_actions))
        object.__setattr__(self, "_by_code", {a.code: a for a in self.actions})
        object.__setattr__(
            self, "_flow_index", {c: i for i, c in enumerate(self.correct_flow)}
        )

    def action(self, code: str) -> Optional[ActionSpec]:
        return self._by_code.get(code)  # type: ignore[attr-defined]

    def flow_position(self, code: str) -> Optional[int]:
        return self._flow_index.get(code)  # type: ignore[attr-defined]

    def weight_of(self, code: str) -> float:
        spec = self.action(code)
        return spec.weight if spec is not None else 1.0


@dataclass(frozen=True)
class StudentEvent:
    """One classified event from the intelligent tutor."""

    student_id: str
    timestamp: datetime
    kind: EventKind
    action_code: str
    error_kind: ErrorKind = ErrorKind.NONE
    blamed_action: Optional[str] = None

    def __post_init__(self) -> None:
        if self.kind is EventKind.FAIL and self.error_kind is ErrorKind.NONE:
            raise ValueError("fail events must carry an error kind")
        if self.kind in (EventKind.DO, EventKind.TRY) and self.error_kind not in (
            ErrorKind.NONE,
            ErrorKind.ALREADY_PERFORMED,
            ErrorKind.NOT_FOUND,
        ):
            raise ValueError(f"{self.kind.value} events cannot carry {self.error_kind.value}")

    @property
    def display_code(self) -> str:
        """Code shown on the transition: the blamed action for fail events."""
        if self.kind is EventKind.FAIL and self.blamed_action:
            return self.blamed_action
        return self.action_code

    @property
    def label(self) -> str:
        return f"{self.kind.value} {self.display_code}"


@dataclass(frozen=True)
class StudentLog:
    """Time-ordered classified events of one student."""

    student_id: str
    events: tuple[StudentEvent, ...]
    started_at: datetime
    finished_at: datetime
    grade: Optional[float] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "events", tuple(self.events))
        for ev in self.events:
            if ev.student_id != self.student_id:
                raise ValueError(
                    f"event student {ev.student_id!r} != log student {self.student_id!r}"
                )
        times = [e.timestamp for e in self.events]
        if times != sorted(times):
            raise ValueError("events must be sorted by timestamp")

    @classmethod
    def from_events(
        cls, student_id: str, events: Iterable[StudentEvent], grade: Optional[float] = None
    ) -> "StudentLog":
        evs = tuple(events)
        if not evs:
            raise ValueError("cannot build a log from zero events")
        return cls(
            student_id=student_id,
            events=evs,
            started_at=evs[0].timestamp,
            finished_at=evs[-1].timestamp,
            grade=grade,
        )

    @property
    def duration_seconds(self) -> float:
        return (self.finished_at - self.started_at).total_seconds()


def validate_config(config: AssignmentConfig) -> list[str]:
    """Check every config invariant; returns human-readable violations.

    An empty list means the config is valid. Violations are data, not
    exceptions: callers decide whether to abort.
    """
    violations: list[str] = []
    codes = [a.code for a in config.actions]
    known = set(codes)

    seen: set[str] = set()
    for code in codes:
        if code in seen:
            violations.append(f"action {code!r}: duplicate code")
        seen.add(code)

    flow_seen: set[str] = set()
    for code in config.correct_flow:
        if code not in known:
            violations.append(f"correct_flow step {code!r}: no ActionSpec declared")
        if code in flow_seen:
            violations.append(f"correct_flow step {code!r}: appears more than once")
        flow_seen.add(code)

    for code in sorted(config.blocked_actions):
        if code not in known:
            violations.append(f"blocked action {code!r}: no ActionSpec declared")

    phase_set = set(config.phases)
    for spec in config.actions:
        if spec.phase not in phase_set:
            violations.append(f"action {spec.code!r}: phase {spec.phase!r} not in phases")
        if spec.weight < 0:
            violations.append(f"action {spec.code!r}: negative weight {spec.weight}")
        for dep in spec.dependencies:
            if dep not in known:
                violations.append(f"action {spec.code!r}: dependency {dep!r} undeclared")
        for inc in spec.incompatibilities:
            if inc not in known:
                violations.append(f"action {spec.code!r}: incompatibility {inc!r} undeclared")
        for tc in spec.time_constraints:
            if tc.other not in known:
                violations.append(
                    f"action {spec.code!r}: time constraint references undeclared {tc.other!r}"
                )
            if tc.min_seconds is None and tc.max_seconds is None:
                violations.append(f"action {spec.code!r}: empty time constraint on {tc.other!r}")

    return violations


# ---------------------------------------------------------------------------
# Config file format (JSON document)


def config_to_dict(config: AssignmentConfig) -> dict:
    def action_dict(a: ActionSpec) -> dict:
        d: dict = {"code": a.code, "phase": a.phase, "description": a.description}
        if a.dependencies:
            d["dependencies"] = list(a.dependencies)
        if a.incompatibilities:
            d["incompatibilities"] = list(a.incompatibilities)
        if a.time_constraints:
            d["time_constraints"] = [
                {
                    "other": tc.other,
                    **({"min_seconds": tc.min_seconds} if tc.min_seconds is not None else {}),
                    **({"max_seconds": tc.max_seconds} if tc.max_seconds is not None else {}),
                }
                for tc in a.time_constraints
            ]
        if a.weight != 1.0:
            d["weight"] = a.weight
        if a.tutoring_message is not None:
            d["tutoring_message"] = a.tutoring_message
        if a.world_relevant:
            d["world_relevant"] = True
        return d

    return {
        "assignment_id": config.assignment_id,
        "phases": list(config.phases),
        "correct_flow": list(config.correct_flow),
        "blocked_actions": sorted(config.blocked_actions),
        "actions": [action_dict(a) for a in config.actions],
    }


def config_from_dict(data: dict) -> AssignmentConfig:
    actions = []
    for raw in data.get("actions", []):
        actions.append(
            ActionSpec(
                code=raw["code"],
                phase=raw["phase"],
                description=raw.get("description", ""),
                dependencies=tuple(raw.get("dependencies", ())),
                incompatibilities=tuple(raw.get("incompatibilities", ())),
                time_constraints=tuple(
                    TimeConstraint(
                        other=tc["other"],
                        min_seconds=tc.get("min_seconds"),
                        max_seconds=tc.get("max_seconds"),
                    )
                    for tc in raw.get("time_constraints", ())
                ),
                weight=float(raw.get("weight", 1.0)),
                tutoring_message=raw.get("tutoring_message"),
                world_relevant=bool(raw.get("world_relevant", False)),
            )
        )
    return AssignmentConfig(
        assignment_id=data["assignment_id"],
        phases=tuple(data.get("phases", ())),
        correct_flow=tuple(data.get("correct_flow", ())),
        actions=tuple(actions),
        blocked_actions=frozenset(data.get("blocked_actions", ())),
    )


def load_config(path: str | Path) -> AssignmentConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return config_from_dict(json.load(fh))


def save_config(config: AssignmentConfig, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(config_to_dict(config), indent=2, sort_keys=False) + "\n", encoding="utf-8"
    )
