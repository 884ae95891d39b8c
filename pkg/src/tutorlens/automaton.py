"""Builds the extended automaton summarizing many students' classified logs.

Every event becomes a visit to a state; consecutive visits become labeled
edges. States live in one of three zones: the correct flow across the
middle, irrelevant errors above it, relevant errors below it. A correct
action performed after a relevant error stays in the relevant zone, because
the run it belongs to can no longer end well.

State identity includes an anchor: the flow index of the last correctly
performed flow action before the attempt being summarized. Errors committed
at the same point of the assignment therefore collapse across students.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Iterable, Optional

from .model import (
    RELEVANT_ERROR_KINDS,
    AssignmentConfig,
    ErrorKind,
    EventKind,
    StudentEvent,
    StudentLog,
    Zone,
)
from .replay import validation_groups

START_CODE = "__start__"
START_LABEL = "start"


class StateKind(Enum):
    CORRECT = "correct"
    SIMPLE_DEPENDENCE = "simple_dependence"
    COMPLEX_DEPENDENCE = "complex_dependence"
    INCOMPATIBILITY = "incompatibility"
    TIME = "time"
    WORLD = "world"
    ALREADY_PERFORMED = "already_performed"
    NOT_FOUND = "not_found"
    TRY = "try"
    SUPER_ALREADY_PERFORMED = "super_already_performed"
    SUPER_NOT_FOUND = "super_not_found"


_ZONE_ORDER = {Zone.CORRECT_FLOW: 0, Zone.IRRELEVANT_ERRORS: 1, Zone.RELEVANT_ERRORS: 2}

_FAIL_STATE_KIND = {
    ErrorKind.SIMPLE_DEPENDENCE: StateKind.SIMPLE_DEPENDENCE,
    ErrorKind.COMPLEX_DEPENDENCE: StateKind.COMPLEX_DEPENDENCE,
    ErrorKind.INCOMPATIBILITY: StateKind.INCOMPATIBILITY,
    ErrorKind.TIME: StateKind.TIME,
    ErrorKind.WORLD: StateKind.WORLD,
}

_SUPER_FAMILY = {
    StateKind.ALREADY_PERFORMED: StateKind.SUPER_ALREADY_PERFORMED,
    StateKind.NOT_FOUND: StateKind.SUPER_NOT_FOUND,
}


@dataclass(frozen=True)
class StateNode:
    id: str
    zone: Zone
    kind: StateKind
    validated: str
    blamed: Optional[str]
    anchor: int
    label: str
    students: frozenset[str]
    member_count: int = 1

    def frequency(self, n_students: int) -> float:
        return 100.0 * len(self.students) / n_students if n_students else 0.0


@dataclass(frozen=True)
class EdgeArc:
    from_id: str
    to_id: str
    label: str
    students: frozenset[str]

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.from_id, self.to_id, self.label)

    def frequency(self, n_students: int) -> float:
        return 100.0 * len(self.students) / n_students if n_students else 0.0


@dataclass(frozen=True)
class TraceStep:
    state_id: str
    label: str
    timestamp: str  # ISO-8601, empty for the start marker


@dataclass
class Automaton:
    assignment_id: str
    student_ids: tuple[str, ...]
    states: dict[str, StateNode]
    edges: dict[tuple[str, str, str], EdgeArc]
    traces: dict[str, tuple[TraceStep, ...]]

    @property
    def n_students(self) -> int:
        return len(self.student_ids)

    def sorted_states(self) -> list[StateNode]:
        return sorted(
            self.states.values(), key=lambda s: (_ZONE_ORDER[s.zone], s.anchor, s.label)
        )

    def sorted_edges(self) -> list[EdgeArc]:
        return sorted(self.edges.values(), key=lambda e: e.key)


def state_id(
    zone: Zone, kind: StateKind, validated: str, blamed: Optional[str], anchor: int
) -> str:
    parts = (zone.value, kind.value, validated, blamed or "", str(anchor))
    return ":".join(parts)


def _state_label(kind: StateKind, validated: str, blamed: Optional[str]) -> str:
    if kind in _FAIL_STATE_KIND.values() and blamed:
        return f"{validated}_{blamed}"
    if validated == START_CODE:
        return START_LABEL
    return validated


def _head_state_parts(
    head: StudentEvent, group: list[StudentEvent], tainted: bool, world_relevant: bool
) -> tuple[Zone, StateKind]:
    if head.error_kind is ErrorKind.ALREADY_PERFORMED:
        return Zone.IRRELEVANT_ERRORS, StateKind.ALREADY_PERFORMED
    if head.error_kind is ErrorKind.NOT_FOUND:
        return Zone.IRRELEVANT_ERRORS, StateKind.NOT_FOUND
    if head.kind is EventKind.TRY:
        return Zone.IRRELEVANT_ERRORS, StateKind.TRY
    relevant_here = any(
        e.error_kind in RELEVANT_ERROR_KINDS
        or (e.error_kind is ErrorKind.WORLD and world_relevant)
        for e in group
    )
    if tainted or relevant_here:
        return Zone.RELEVANT_ERRORS, StateKind.CORRECT
    return Zone.CORRECT_FLOW, StateKind.CORRECT


def _fail_state_parts(event: StudentEvent, world_relevant: bool) -> tuple[Zone, StateKind]:
    kind = _FAIL_STATE_KIND[event.error_kind]
    if event.error_kind is ErrorKind.WORLD and not world_relevant:
        return Zone.IRRELEVANT_ERRORS, kind
    return Zone.RELEVANT_ERRORS, kind


class _Builder:
    def __init__(self, config: AssignmentConfig, student_ids: Iterable[str]) -> None:
        self.config = config
        self.student_ids = tuple(student_ids)
        self.state_students: dict[str, set[str]] = {}
        self.state_meta: dict[str, tuple[Zone, StateKind, str, Optional[str], int]] = {}
        self.edge_students: dict[tuple[str, str, str], set[str]] = {}
        self.traces: dict[str, list[TraceStep]] = {}
        self.start_id = self._touch(
            Zone.CORRECT_FLOW, StateKind.CORRECT, START_CODE, None, -1, self.student_ids
        )

    def _touch(
        self,
        zone: Zone,
        kind: StateKind,
        validated: str,
        blamed: Optional[str],
        anchor: int,
        students: Iterable[str],
    ) -> str:
        sid = state_id(zone, kind, validated, blamed, anchor)
        self.state_meta.setdefault(sid, (zone, kind, validated, blamed, anchor))
        self.state_students.setdefault(sid, set()).update(students)
        return sid

    def _edge(self, from_id: str, to_id: str, label: str, student: str) -> None:
        self.edge_students.setdefault((from_id, to_id, label), set()).add(student)

    def add_log(self, log: StudentLog) -> None:
        student = log.student_id
        trace = [TraceStep(self.start_id, START_LABEL, log.started_at.isoformat())]
        self.state_students[self.start_id].add(student)
        prev = self.start_id
        anchor = -1
        tainted = False
        for group in validation_groups(log.events):
            head = group[0]
            spec = self.config.action(head.action_code)
            world_relevant = spec.world_relevant if spec is not None else False
            if head.kind is EventKind.FAIL:
                chain = group  # damaged stream: fails without their do
            else:
                zone, kind = _head_state_parts(head, group, tainted, world_relevant)
                hid = self._touch(zone, kind, head.action_code, None, anchor, (student,))
                self._edge(prev, hid, head.label, student)
                trace.append(TraceStep(hid, head.label, head.timestamp.isoformat()))
                prev = hid
                chain = group[1:]
            for event in chain:
                zone, kind = _fail_state_parts(event, world_relevant)
                fid = self._touch(
                    zone, kind, event.action_code, event.blamed_action, anchor, (student,)
                )
                self._edge(prev, fid, event.label, student)
                trace.append(TraceStep(fid, event.label, event.timestamp.isoformat()))
                prev = fid
            performed = head.kind is EventKind.DO and head.error_kind is ErrorKind.NONE
            if performed:
                for event in group:
                    if event.error_kind in RELEVANT_ERROR_KINDS:
                        tainted = True
                    elif event.error_kind is ErrorKind.WORLD and world_relevant:
                        tainted = True
                position = self.config.flow_position(head.action_code)
                if position is not None:
                    anchor = position
        self.traces[student] = trace

    def finish(self) -> Automaton:
        states = {}
        for sid, (zone, kind, validated, blamed, anchor) in self.state_meta.items():
            states[sid] = StateNode(
                id=sid,
                zone=zone,
                kind=kind,
                validated=validated,
                blamed=blamed,
                anchor=anchor,
                label=_state_label(kind, validated, blamed),
                students=frozenset(self.state_students[sid]),
            )
        edges = {
            key: EdgeArc(key[0], key[1], key[2], frozenset(studs))
            for key, studs in self.edge_students.items()
        }
        return Automaton(
            assignment_id=self.config.assignment_id,
            student_ids=self.student_ids,
            states=states,
            edges=edges,
            traces={sid: tuple(steps) for sid, steps in self.traces.items()},
        )


def build_automaton(
    config: AssignmentConfig, logs: Iterable[StudentLog], collapse: bool = True
) -> Automaton:
    """Summarize a set of student logs into one zoned automaton."""
    logs = list(logs)
    if not logs:
        raise ValueError("empty corpus: at least one student log is required")
    for log in logs:
        for event in log.events:
            known = config.action(event.action_code) is not None
            if not known and event.error_kind is not ErrorKind.NOT_FOUND:
                raise ValueError(
                    f"unknown action in event {event.label!r}"
                    f" of student {log.student_id!r}"
                )
    builder = _Builder(config, (log.student_id for log in logs))
    for log in logs:
        builder.add_log(log)
    automaton = builder.finish()
    return collapse_super_states(automaton) if collapse else automaton


def event_zones(config: AssignmentConfig, log: StudentLog) -> list[Zone]:
    """Zone of every event in the log, in order, under the taint rules."""
    zones: list[Zone] = []
    tainted = False
    for group in validation_groups(log.events):
        head = group[0]
        spec = config.action(head.action_code)
        world_relevant = spec.world_relevant if spec is not None else False
        if head.kind is EventKind.FAIL:
            chain = group
        else:
            zone, _ = _head_state_parts(head, group, tainted, world_relevant)
            zones.append(zone)
            chain = group[1:]
        for event in chain:
            zone, _ = _fail_state_parts(event, world_relevant)
            zones.append(zone)
        if head.kind is EventKind.DO and head.error_kind is ErrorKind.NONE:
            for event in group:
                if event.error_kind in RELEVANT_ERROR_KINDS:
                    tainted = True
                elif event.error_kind is ErrorKind.WORLD and world_relevant:
                    tainted = True
    return zones


# ---------------------------------------------------------------------------
# Super-states


def _components(members: set[str], edges: Iterable[tuple[str, str]]) -> list[set[str]]:
    parent = {m: m for m in members}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    groups: dict[str, set[str]] = {}
    for m in members:
        groups.setdefault(find(m), set()).add(m)
    return list(groups.values())


def collapse_super_states(automaton: Automaton) -> Automaton:
    """Group adjacent runs of repeated or not-found states into super-states.

    Connected groups of two or more same-family states are replaced by one
    node whose member count is the group size. Edges inside a group vanish;
    edges crossing its boundary re-attach to the super-state. Applying the
    collapse twice changes nothing.
    """
    rename: dict[str, str] = {}
    new_states: dict[str, StateNode] = {}

    for family, super_kind in _SUPER_FAMILY.items():
        members = {s.id for s in automaton.states.values() if s.kind is family}
        if not members:
            continue
        internal = [
            (e.from_id, e.to_id)
            for e in automaton.edges.values()
            if e.from_id in members and e.to_id in members
        ]
        for component in _components(members, internal):
            if len(component) < 2:
                continue
            nodes = [automaton.states[m] for m in component]
            member_count = sum(n.member_count for n in nodes)
            digest = hashlib.sha1("|".join(sorted(component)).encode()).hexdigest()[:10]
            sid = f"{Zone.IRRELEVANT_ERRORS.value}:{super_kind.value}:{digest}"
            students = frozenset().union(*(n.students for n in nodes))
            new_states[sid] = StateNode(
                id=sid,
                zone=Zone.IRRELEVANT_ERRORS,
                kind=super_kind,
                validated=nodes[0].validated,
                blamed=None,
                anchor=min(n.anchor for n in nodes),
                label=str(member_count),
                students=students,
                member_count=member_count,
            )
            for m in component:
                rename[m] = sid

    if not rename:
        return automaton

    states: dict[str, StateNode] = {
        s.id: s for s in automaton.states.values() if s.id not in rename
    }
    states.update(new_states)

    edges: dict[tuple[str, str, str], EdgeArc] = {}
    for edge in automaton.edges.values():
        src = rename.get(edge.from_id, edge.from_id)
        dst = rename.get(edge.to_id, edge.to_id)
        if src == dst and edge.from_id in rename and edge.to_id in rename:
            continue  # swallowed inside a super-state
        key = (src, dst, edge.label)
        if key in edges:
            edges[key] = replace(edges[key], students=edges[key].students | edge.students)
        else:
            edges[key] = EdgeArc(src, dst, edge.label, edge.students)

    traces = {
        sid: tuple(
            TraceStep(rename.get(step.state_id, step.state_id), step.label, step.timestamp)
            for step in steps
        )
        for sid, steps in automaton.traces.items()
    }

    return Automaton(
        assignment_id=automaton.assignment_id,
        student_ids=automaton.student_ids,
        states=states,
        edges=edges,
        traces=traces,
    )


# ---------------------------------------------------------------------------
# Serialization


def automaton_to_dict(automaton: Automaton) -> dict:
    n = automaton.n_students
    return {
        "assignment_id": automaton.assignment_id,
        "students": list(automaton.student_ids),
        "states": [
            {
                "id": s.id,
                "zone": s.zone.value,
                "kind": s.kind.value,
                "validated": s.validated,
                "blamed": s.blamed,
                "anchor": s.anchor,
                "label": s.label,
                "member_count": s.member_count,
                "students": sorted(s.students),
                "count": len(s.students),
                "frequency": s.frequency(n),
            }
            for s in automaton.sorted_states()
        ],
        "edges": [
            {
                "from": e.from_id,
                "to": e.to_id,
                "label": e.label,
                "students": sorted(e.students),
                "count": len(e.students),
                "frequency": e.frequency(n),
            }
            for e in automaton.sorted_edges()
        ],
        "traces": {
            sid: [
                {"state": step.state_id, "label": step.label, "timestamp": step.timestamp}
                for step in steps
            ]
            for sid, steps in sorted(automaton.traces.items())
        },
    }


def automaton_from_dict(data: dict) -> Automaton:
    states = {}
    for raw in data["states"]:
        states[raw["id"]] = StateNode(
            id=raw["id"],
            zone=Zone(raw["zone"]),
            kind=StateKind(raw["kind"]),
            validated=raw["validated"],
            blamed=raw.get("blamed"),
            anchor=raw["anchor"],
            label=raw["label"],
            students=frozenset(raw["students"]),
            member_count=raw.get("member_count", 1),
        )
    edges = {}
    for raw in data["edges"]:
        edge = EdgeArc(raw["from"], raw["to"], raw["label"], frozenset(raw["students"]))
        edges[edge.key] = edge
    traces = {
        sid: tuple(TraceStep(s["state"], s["label"], s["timestamp"]) for s in steps)
        for sid, steps in data.get("traces", {}).items()
    }
    return Automaton(
        assignment_id=data["assignment_id"],
        student_ids=tuple(data["students"]),
        states=states,
        edges=edges,
        traces=traces,
    )


def save_automaton(automaton: Automaton, path: str | Path) -> None:
    Path(path).write_text(json.dumps(automaton_to_dict(automaton)) + "\n", encoding="utf-8")


def load_automaton(path: str | Path) -> Automaton:
    with open(path, "r", encoding="utf-8") as fh:
        return automaton_from_dict(json.load(fh))
