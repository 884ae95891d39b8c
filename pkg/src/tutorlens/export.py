"""Static renderings of a layout graph: SVG and Graphviz DOT."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .layout import LayoutGraph, LayoutNode
from .model import Zone

_BAND_TINT = {
    Zone.IRRELEVANT_ERRORS: "#fffde8",
    Zone.CORRECT_FLOW: "#f0fff4",
    Zone.RELEVANT_ERRORS: "#fff0f0",
}


def _rgb(color: tuple[int, int, int]) -> str:
    return f"rgb({color[0]},{color[1]},{color[2]})"


def to_svg(graph: LayoutGraph) -> str:
    """Self-contained SVG: band backgrounds, edges under labeled boxes."""
    by_id: dict[str, LayoutNode] = {n.id: n for n in graph.nodes}
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{graph.width:.0f}" '
        f'height="{graph.height:.0f}" viewBox="0 0 {graph.width:.2f} {graph.height:.2f}" '
        f'font-family="monospace" font-size="11">'
    ]
    for zone, (y0, y1) in graph.bands.items():
        parts.append(
            f'<rect x="0" y="{y0:.1f}" width="{graph.width:.1f}" '
            f'height="{y1 - y0:.1f}" fill="{_BAND_TINT[zone]}"/>'
        )

    for edge in graph.edges:
        a = by_id.get(edge.from_id)
        b = by_id.get(edge.to_id)
        if a is None or b is None:
            continue
        gray = f"rgb({edge.shade},{edge.shade},{edge.shade})"
        if a.id == b.id:
            r = a.h
            parts.append(
                f'<path d="M {a.x + a.w / 2:.1f} {a.y:.1f} '
                f'a {r} {r} 0 1 1 0 {-1.0}" fill="none" stroke="{gray}"/>'
            )
        else:
            parts.append(
                f'<line x1="{a.x:.1f}" y1="{a.y:.1f}" x2="{b.x:.1f}" y2="{b.y:.1f}" '
                f'stroke="{gray}" stroke-width="1.2"/>'
            )
            # direction marker two thirds of the way along
            mx = a.x + (b.x - a.x) * 2 / 3
            my = a.y + (b.y - a.y) * 2 / 3
            ang = math.atan2(b.y - a.y, b.x - a.x)
            s, c = math.sin(ang), math.cos(ang)
            tips = [
                (mx + 5 * c, my + 5 * s),
                (mx - 4 * s - 3 * c, my + 4 * c - 3 * s),
                (mx + 4 * s - 3 * c, my - 4 * c - 3 * s),
            ]
            points = " ".join(f"{px:.1f},{py:.1f}" for px, py in tips)
            parts.append(f'<polygon points="{points}" fill="{gray}"/>')
            label = escape(edge.event_label)
            parts.append(
                f'<text x="{(a.x + b.x) / 2:.1f}" y="{(a.y + b.y) / 2 - 3:.1f}" '
                f'text-anchor="middle" fill="#555">{label}'
                f"<title>{label} ({edge.frequency:.2f}%)</title></text>"
            )

    for node in graph.nodes:
        label = escape(node.label)
        parts.append(
            f'<g><rect x="{node.x - node.w / 2:.1f}" y="{node.y - node.h / 2:.1f}" '
            f'width="{node.w:.1f}" height="{node.h:.1f}" rx="4" '
            f'fill="{_rgb(node.fill)}" stroke="{_rgb(node.outline)}" stroke-width="2"/>'
            f'<text x="{node.x:.1f}" y="{node.y + 4:.1f}" text-anchor="middle">{label}</text>'
            f"<title>{label} ({node.frequency:.2f}%)</title></g>"
        )

    parts.append("</svg>")
    return "\n".join(parts)


def to_dot(graph: LayoutGraph) -> str:
    """Graphviz source with pinned positions (render with neato -n2)."""
    lines = [
        "digraph behavior {",
        "  graph [splines=line];",
        '  node [shape=box, style="rounded,filled", fontname="monospace"];',
    ]
    for node in graph.nodes:
        y = graph.height - node.y  # dot's y axis points up
        lines.append(
            f'  "{node.id}" [label="{node.label}", pos="{node.x:.1f},{y:.1f}!", '
            f'width={node.w / 72:.3f}, height={node.h / 72:.3f}, '
            f'fillcolor="{_rgb(node.fill)}", color="{_rgb(node.outline)}", '
            f'tooltip="{node.label} ({node.frequency:.2f}%)"];'
        )
    for edge in graph.edges:
        gray = f"#{edge.shade:02x}{edge.shade:02x}{edge.shade:02x}"
        lines.append(
            f'  "{edge.from_id}" -> "{edge.to_id}" '
            f'[label="{edge.event_label}", color="{gray}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
