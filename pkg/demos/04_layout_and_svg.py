"""
Drawing an automaton: bands, columns, and overlap-free stacks
=============================================================

The layout is deterministic and band-disciplined: correct flow marches
left to right through the middle, harmless errors float above it,
relevant errors hang below, pinned under the flow step they blame.
"""

from pathlib import Path

from tutorlens import (
    Zone,
    build_automaton,
    demo_config,
    layout_automaton,
    synthesize_corpus,
)
from tutorlens.export import to_dot, to_svg

config = demo_config()
logs = synthesize_corpus(config, 87, seed=0)
automaton = build_automaton(config, logs)

graph = layout_automaton(automaton, config)
print(f"laid out {len(graph.nodes)} nodes and {len(graph.edges)} edges"
      f" on a {graph.width:.0f} x {graph.height:.0f} canvas")

# Three horizontal bands partition the canvas; every node sits inside its
# zone's band, so the picture reads top to bottom as noise / flow / harm.
for zone in Zone:
    y0, y1 = graph.bands[zone]
    count = sum(1 for node in graph.nodes if node.zone is zone)
    print(f"  band {zone.value:<18} y {y0:7.1f} .. {y1:7.1f} ({count} nodes)")

# The correct flow is strictly ordered: each performed step sits right of
# the one before it.
flow_nodes = {node.id: node for node in graph.nodes
              if node.zone is Zone.CORRECT_FLOW}
xs = [node.x for node in sorted(flow_nodes.values(), key=lambda node: node.x)]
assert xs == sorted(xs)
print(f"\ncorrect-flow column sweep: x {xs[0]:.0f} -> {xs[-1]:.0f}"
      f" over {len(xs)} states")

# Edge ink encodes traversal: the busier the transition, the darker.
darkest = min(graph.edges, key=lambda e: e.shade)
label_of = {s.id: s.label for s in automaton.states.values()}
print(f"darkest edge: {label_of[darkest.from_id]} -> {label_of[darkest.to_id]}"
      f" (shade {darkest.shade}, {darkest.frequency:.1f}% of students)")

out = Path(__file__).resolve().parent / "out"
out.mkdir(exist_ok=True)
svg_path = out / "cohort.svg"
dot_path = out / "cohort.dot"
svg_path.write_text(to_svg(graph), encoding="utf-8")
dot_path.write_text(to_dot(graph), encoding="utf-8")
print(f"\nwrote {svg_path} ({svg_path.stat().st_size} bytes)")
print(f"wrote {dot_path} ({dot_path.stat().st_size} bytes)")
