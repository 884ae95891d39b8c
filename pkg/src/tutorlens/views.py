"""Read-time views over built automata and layouts.

Frequency filtering drops states and edges below thresholds without
rebuilding anything; date windows rebuild the automaton from the logs that
started inside the window; per-student traces replay a single log.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime
from typing import Optional, Union

from .automaton import (
    START_CODE,
    Automaton,
    EdgeArc,
    StateNode,
    TraceStep,
    build_automaton,
)
from .layout import LayoutGraph
from .model import AssignmentConfig, StudentLog, Zone

EdgeKey = tuple[str, str, str]


def filter_graph(
    automaton: Automaton, min_node_freq: float = 0.0, min_edge_freq: float = 0.0
) -> Automaton:
    """Drop states and edges whose frequency falls below the thresholds.

    Thresholds are percents of the student population; comparisons are
    strict, so a threshold of 100 keeps what every student traversed.
    Edges also vanish when either endpoint was dropped. The start state
    is never removed.
    """
    n = automaton.n_students
    states = {
        sid: s
        for sid, s in automaton.states.items()
        if s.frequency(n) >= min_node_freq or s.validated == START_CODE
    }
    edges = {
        key: e
        for key, e in automaton.edges.items()
        if e.frequency(n) >= min_edge_freq
        and e.from_id in states
        and e.to_id in states
    }
    traces = {
        sid: tuple(step for step in steps if step.state_id in states)
        for sid, steps in automaton.traces.items()
    }
    return Automaton(
        assignment_id=automaton.assignment_id,
        student_ids=automaton.student_ids,
        states=states,
        edges=edges,
        traces=traces,
    )


def filter_layout(
    graph: LayoutGraph, min_node_freq: float = 0.0, min_edge_freq: float = 0.0
) -> LayoutGraph:
    """Same thresholds applied to a finished layout.

    Positions are kept as computed for the full graph, so sliding a
    threshold never reflows the picture.
    """
    nodes = [n for n in graph.nodes if n.frequency >= min_node_freq]
    kept = {n.id for n in nodes}
    edges = [
        e
        for e in graph.edges
        if e.frequency >= min_edge_freq and e.from_id in kept and e.to_id in kept
    ]
    return LayoutGraph(
        assignment_id=graph.assignment_id,
        n_students=graph.n_students,
        width=graph.width,
        height=graph.height,
        bands=dict(graph.bands),
        nodes=nodes,
        edges=edges,
    )


def search_states(
    automaton: Automaton,
    query: str,
    zone: Optional[Zone] = None,
    limit: Optional[int] = None,
) -> list[StateNode]:
    """States whose label starts with the query, most frequent first.

    Matching is case-insensitive; an empty query matches every state, a
    query with no hits yields an empty list. ``zone`` narrows the pool.
    """
    q = query.strip().lower()
    n = automaton.n_students
    hits = [
        s
        for s in automaton.states.values()
        if (zone is None or s.zone is zone) and s.label.lower().startswith(q)
    ]
    hits.sort(key=lambda s: (-len(s.students), s.label))
    return hits if limit is None else hits[:limit]


def date_view(
    config: AssignmentConfig,
    logs: list[StudentLog],
    from_dt: Optional[datetime] = None,
    to_dt: Optional[datetime] = None,
    collapse: bool = True,
) -> Automaton:
    """The automaton rebuilt from logs that started inside the window.

    A log belongs to the window when its first event's timestamp falls in
    [from_dt, to_dt]; open ends are allowed. Frequencies therefore come
    out relative to the students active in the window.
    """
    if from_dt is not None and to_dt is not None and from_dt > to_dt:
        raise ValueError(f"inverted date range: {from_dt} > {to_dt}")
    kept = [
        log
        for log in logs
        if (from_dt is None or log.started_at >= from_dt)
        and (to_dt is None or log.started_at <= to_dt)
    ]
    if not kept:
        raise ValueError("no data in range")
    return build_automaton(config, kept, collapse=collapse)


@dataclass(frozen=True)
class TraceEntry:
    """One visit on a student's path: the state plus the arc that led in."""

    state: StateNode
    event: str  # inbound event label; "start" for the marker
    timestamp: str  # ISO-8601, empty for the marker
    via: Optional[EdgeArc]  # None at the start and inside grouped runs


def student_trace(
    config: AssignmentConfig,
    logs: list[StudentLog],
    student_id: str,
    collapse: bool = True,
) -> list[TraceEntry]:
    """One student's ordered path through their own single-log automaton."""
    log = next((lg for lg in logs if lg.student_id == student_id), None)
    if log is None:
        raise KeyError(f"no student {student_id!r}")
    automaton = build_automaton(config, [log], collapse=collapse)
    entries: list[TraceEntry] = []
    prev: Optional[TraceStep] = None
    for step in automaton.traces[student_id]:
        via = None
        if prev is not None:
            via = automaton.edges.get((prev.state_id, step.state_id, step.label))
        entries.append(
            TraceEntry(
                state=automaton.states[step.state_id],
                event=step.label,
                timestamp=step.timestamp,
                via=via,
            )
        )
        prev = step
    return entries


def details_of(
    automaton: Automaton,
    ref: Union[str, EdgeKey],
    config: Optional[AssignmentConfig] = None,
) -> dict:
    """Details-on-demand payload for a state id or an edge key.

    States get identifiers, counts, frequencies, zone/kind, the action's
    description and tutoring message (when a config is supplied), and
    summaries of incident arcs. Unknown references raise KeyError.
    """
    n = automaton.n_students

    def arc(edge: EdgeArc) -> dict:
        return {
            "from": edge.from_id,
            "to": edge.to_id,
            "label": edge.label,
            "count": len(edge.students),
            "frequency": edge.frequency(n),
        }

    if isinstance(ref, tuple):
        edge = automaton.edges.get(tuple(ref))
        if edge is None:
            raise KeyError(f"no edge {ref!r}")
        return arc(edge) | {"students": sorted(edge.students)}

    state = automaton.states.get(ref)
    if state is None:
        raise KeyError(f"no state {ref!r}")
    spec = config.action(state.validated) if config is not None else None
    return {
        "id": state.id,
        "label": state.label,
        "zone": state.zone.value,
        "kind": state.kind.value,
        "validated": state.validated,
        "blamed": state.blamed,
        "anchor": state.anchor,
        "member_count": state.member_count,
        "count": len(state.students),
        "frequency": state.frequency(n),
        "students": sorted(state.students),
        "description": spec.description if spec else None,
        "tutoring_message": spec.tutoring_message if spec else None,
        "incoming": [arc(e) for e in automaton.sorted_edges() if e.to_id == state.id],
        "outgoing": [arc(e) for e in automaton.sorted_edges() if e.from_id == state.id],
    }
