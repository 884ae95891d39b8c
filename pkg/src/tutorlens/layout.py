"""Positions automaton states on a three-band canvas and colors them.

The middle band holds the correct flow, left to right, one column per flow
step. Errors hang from the column of the flow action performed just before
them: irrelevant errors stack upward into the top band, relevant errors
stack downward into the bottom band. Within a bottom stack, correct
continuations sit nearest the flow, then dependence errors, then
incompatibilities, then time errors, then world errors.

Coordinates are node centers, y grows downward. Node fill encodes the state
kind, outline encodes the zone, edge gray level encodes traversal frequency
(darker = more students).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional

from .automaton import Automaton, StateKind, StateNode
from .model import AssignmentConfig, Zone

RGB = tuple[int, int, int]

FILL_COLORS: dict[StateKind, RGB] = {
    StateKind.CORRECT: (4, 255, 117),
    StateKind.SIMPLE_DEPENDENCE: (255, 128, 0),
    StateKind.COMPLEX_DEPENDENCE: (255, 153, 0),
    StateKind.INCOMPATIBILITY: (215, 104, 89),
    StateKind.TIME: (255, 255, 0),
    StateKind.WORLD: (204, 204, 0),
    StateKind.ALREADY_PERFORMED: (241, 106, 239),
    StateKind.NOT_FOUND: (241, 106, 239),
    StateKind.TRY: (241, 106, 239),
    StateKind.SUPER_ALREADY_PERFORMED: (241, 106, 239),
    StateKind.SUPER_NOT_FOUND: (241, 106, 239),
}

OUTLINE_COLORS: dict[Zone, RGB] = {
    Zone.CORRECT_FLOW: (4, 255, 117),
    Zone.IRRELEVANT_ERRORS: (255, 255, 3),
    Zone.RELEVANT_ERRORS: (255, 0, 1),
}

NODE_HEIGHT = 26
CHAR_WIDTH = 7
LABEL_PADDING = 16
ROW_STEP = 36  # vertical distance between stacked nodes
COLUMN_GAP = 40
STAGGER = 18  # alternate middle-band offset
JITTER = 9  # alternate stack offset
BAND_PAD = 20
MARGIN = 30

_BOTTOM_ORDER = [
    StateKind.CORRECT,
    StateKind.SIMPLE_DEPENDENCE,
    StateKind.COMPLEX_DEPENDENCE,
    StateKind.INCOMPATIBILITY,
    StateKind.TIME,
    StateKind.WORLD,
]
_TOP_ORDER = [
    StateKind.ALREADY_PERFORMED,
    StateKind.SUPER_ALREADY_PERFORMED,
    StateKind.NOT_FOUND,
    StateKind.SUPER_NOT_FOUND,
    StateKind.TRY,
    StateKind.WORLD,
]

Measure = Callable[[str], tuple[float, float]]


def default_measure(label: str) -> tuple[float, float]:
    return (CHAR_WIDTH * len(label) + LABEL_PADDING, NODE_HEIGHT)


def edge_shade(frequency: float) -> int:
    """Gray level for an edge: 0 at 100% of students, 230 near 0%."""
    return int(round(230.0 * (1.0 - frequency / 100.0)))


@dataclass(frozen=True)
class LayoutNode:
    id: str
    x: float
    y: float
    w: float
    h: float
    fill: RGB
    outline: RGB
    label: str
    zone: Zone
    frequency: float


@dataclass(frozen=True)
class LayoutEdge:
    from_id: str
    to_id: str
    shade: int
    frequency: float
    event_label: str


@dataclass
class LayoutGraph:
    assignment_id: str
    n_students: int
    width: float
    height: float
    bands: dict[Zone, tuple[float, float]]
    nodes: list[LayoutNode]
    edges: list[LayoutEdge]


def _column_key(state: StateNode, config: AssignmentConfig) -> float:
    if state.zone is Zone.CORRECT_FLOW:
        position = config.flow_position(state.validated)
        if position is not None:
            return float(position)
        if state.validated == "__start__":
            return -1.0
        return state.anchor + 0.5
    return float(state.anchor)


def _stack_rank(order: list[StateKind], state: StateNode) -> tuple[int, str]:
    try:
        rank = order.index(state.kind)
    except ValueError:
        rank = len(order)
    return (rank, state.label)


def layout_automaton(
    automaton: Automaton,
    config: AssignmentConfig,
    measure: Optional[Measure] = None,
) -> LayoutGraph:
    measure = measure or default_measure
    n = automaton.n_students

    sizes: dict[str, tuple[float, float]] = {
        s.id: measure(s.label) for s in automaton.states.values()
    }

    columns: dict[float, dict[str, list[StateNode]]] = {}
    for state in automaton.states.values():
        key = _column_key(state, config)
        slot = columns.setdefault(key, {"middle": [], "top": [], "bottom": []})
        if state.zone is Zone.CORRECT_FLOW:
            slot["middle"].append(state)
        elif state.zone is Zone.IRRELEVANT_ERRORS:
            slot["top"].append(state)
        else:
            slot["bottom"].append(state)

    max_top = max((len(c["top"]) for c in columns.values()), default=0)
    max_bottom = max((len(c["bottom"]) for c in columns.values()), default=0)

    top_h = 2 * BAND_PAD + max(1, max_top) * ROW_STEP
    mid_h = 2 * BAND_PAD + NODE_HEIGHT + 2 * STAGGER
    bottom_h = 2 * BAND_PAD + max(1, max_bottom) * ROW_STEP
    mid_center = top_h + mid_h / 2.0

    bands = {
        Zone.IRRELEVANT_ERRORS: (0.0, float(top_h)),
        Zone.CORRECT_FLOW: (float(top_h), float(top_h + mid_h)),
        Zone.RELEVANT_ERRORS: (float(top_h + mid_h), float(top_h + mid_h + bottom_h)),
    }

    def column_width(slot: dict[str, list[StateNode]]) -> float:
        widths = [sizes[s.id][0] for group in slot.values() for s in group]
        middles = [sizes[s.id][0] for s in slot["middle"]]
        spread = sum(middles) + 12.0 * (len(middles) - 1) if len(middles) > 1 else 0.0
        return max(max(widths, default=0.0), spread)

    placed: dict[str, tuple[float, float]] = {}
    x = MARGIN
    prev_half = 0.0
    middle_index = 0
    for key in sorted(columns):
        slot = columns[key]
        eff_w = column_width(slot)
        x = x + prev_half + eff_w / 2.0 + (COLUMN_GAP if prev_half else 0.0)
        prev_half = eff_w / 2.0

        middles = sorted(slot["middle"], key=lambda s: s.label)
        if len(middles) > 1:
            cursor = x - eff_w / 2.0
            for state in middles:
                w = sizes[state.id][0]
                y = mid_center + (STAGGER if middle_index % 2 else -STAGGER)
                placed[state.id] = (cursor + w / 2.0, y)
                cursor += w + 12.0
                middle_index += 1
        else:
            for state in middles:
                y = mid_center + (STAGGER if middle_index % 2 else -STAGGER)
                placed[state.id] = (x, y)
                middle_index += 1

        for j, state in enumerate(sorted(slot["top"], key=lambda s: _stack_rank(_TOP_ORDER, s))):
            jitter = JITTER if j % 2 else -JITTER
            y = top_h - BAND_PAD - NODE_HEIGHT / 2.0 - j * ROW_STEP
            placed[state.id] = (x + jitter, y)

        for j, state in enumerate(
            sorted(slot["bottom"], key=lambda s: _stack_rank(_BOTTOM_ORDER, s))
        ):
            jitter = JITTER if j % 2 else -JITTER
            y = top_h + mid_h + BAND_PAD + NODE_HEIGHT / 2.0 + j * ROW_STEP
            placed[state.id] = (x + jitter, y)

    nodes = []
    for state in automaton.sorted_states():
        px, py = placed[state.id]
        w, h = sizes[state.id]
        nodes.append(
            LayoutNode(
                id=state.id,
                x=px,
                y=py,
                w=w,
                h=h,
                fill=FILL_COLORS[state.kind],
                outline=OUTLINE_COLORS[state.zone],
                label=state.label,
                zone=state.zone,
                frequency=state.frequency(n),
            )
        )

    edges = []
    for edge in automaton.sorted_edges():
        freq = edge.frequency(n)
        edges.append(
            LayoutEdge(
                from_id=edge.from_id,
                to_id=edge.to_id,
                shade=edge_shade(freq),
                frequency=freq,
                event_label=edge.label,
            )
        )

    width = x + prev_half + MARGIN
    height = float(top_h + mid_h + bottom_h)
    return LayoutGraph(
        assignment_id=automaton.assignment_id,
        n_students=n,
        width=width,
        height=height,
        bands=bands,
        nodes=nodes,
        edges=edges,
    )


# ---------------------------------------------------------------------------
# Serialization


def layout_to_dict(graph: LayoutGraph) -> dict:
    return {
        "assignment_id": graph.assignment_id,
        "n_students": graph.n_students,
        "width": graph.width,
        "height": graph.height,
        "bands": {zone.value: list(rng) for zone, rng in graph.bands.items()},
        "nodes": [
            {
                "id": node.id,
                "x": node.x,
                "y": node.y,
                "w": node.w,
                "h": node.h,
                "fill": list(node.fill),
                "outline": list(node.outline),
                "label": node.label,
                "zone": node.zone.value,
                "frequency": node.frequency,
            }
            for node in graph.nodes
        ],
        "edges": [
            {
                "from": edge.from_id,
                "to": edge.to_id,
                "shade": edge.shade,
                "frequency": edge.frequency,
                "event_label": edge.event_label,
            }
            for edge in graph.edges
        ],
    }


def layout_from_dict(data: dict) -> LayoutGraph:
    return LayoutGraph(
        assignment_id=data["assignment_id"],
        n_students=data["n_students"],
        width=data["width"],
        height=data["height"],
        bands={Zone(z): (rng[0], rng[1]) for z, rng in data["bands"].items()},
        nodes=[
            LayoutNode(
                id=n["id"],
                x=n["x"],
                y=n["y"],
                w=n["w"],
                h=n["h"],
                fill=tuple(n["fill"]),
                outline=tuple(n["outline"]),
                label=n["label"],
                zone=Zone(n["zone"]),
                frequency=n["frequency"],
            )
            for n in data["nodes"]
        ],
        edges=[
            LayoutEdge(
                from_id=e["from"],
                to_id=e["to"],
                shade=e["shade"],
                frequency=e["frequency"],
                event_label=e["event_label"],
            )
            for e in data["edges"]
        ],
    )


def save_layout(graph: LayoutGraph, path: str | Path) -> None:
    Path(path).write_text(json.dumps(layout_to_dict(graph)) + "\n", encoding="utf-8")


def load_layout(path: str | Path) -> LayoutGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return layout_from_dict(json.load(fh))
