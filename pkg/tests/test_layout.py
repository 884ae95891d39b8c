from datetime import datetime, timedelta

from tutorlens.automaton import StateKind, build_automaton
from tutorlens.layout import (
    FILL_COLORS,
    OUTLINE_COLORS,
    default_measure,
    edge_shade,
    layout_automaton,
    layout_from_dict,
    layout_to_dict,
)
from tutorlens.model import Zone
from tutorlens.replay import RawAction, replay_student

from conftest import overlapping_pairs, six_step_config

T0 = datetime(2013, 5, 2, 10, 0, 0)


def log_of(cfg, *codes, student="s1"):
    stream = [
        RawAction(student, T0 + timedelta(seconds=45 * i), code)
        for i, code in enumerate(codes)
    ]
    return replay_student(cfg, stream)


def layout_for(cfg, *paths):
    logs = [log_of(cfg, *codes, student=f"s{i + 1}") for i, codes in enumerate(paths)]
    automaton = build_automaton(cfg, logs)
    return layout_automaton(automaton, cfg)


def node_by_label(graph, label, zone=None):
    found = [
        n for n in graph.nodes if n.label == label and (zone is None or n.zone is zone)
    ]
    assert len(found) == 1, f"{label}: {[n.id for n in found]}"
    return found[0]


def test_fill_colors_are_pinned_exactly():
    assert FILL_COLORS[StateKind.CORRECT] == (4, 255, 117)
    assert FILL_COLORS[StateKind.SIMPLE_DEPENDENCE] == (255, 128, 0)
    assert FILL_COLORS[StateKind.COMPLEX_DEPENDENCE] == (255, 153, 0)
    assert FILL_COLORS[StateKind.INCOMPATIBILITY] == (215, 104, 89)
    assert FILL_COLORS[StateKind.TIME] == (255, 255, 0)
    assert FILL_COLORS[StateKind.WORLD] == (204, 204, 0)
    assert FILL_COLORS[StateKind.ALREADY_PERFORMED] == (241, 106, 239)
    assert FILL_COLORS[StateKind.NOT_FOUND] == (241, 106, 239)
    assert FILL_COLORS[StateKind.SUPER_ALREADY_PERFORMED] == (241, 106, 239)
    assert FILL_COLORS[StateKind.SUPER_NOT_FOUND] == (241, 106, 239)


def test_outline_colors_are_pinned_exactly():
    assert OUTLINE_COLORS[Zone.CORRECT_FLOW] == (4, 255, 117)
    assert OUTLINE_COLORS[Zone.IRRELEVANT_ERRORS] == (255, 255, 3)
    assert OUTLINE_COLORS[Zone.RELEVANT_ERRORS] == (255, 0, 1)


def test_default_measure_tracks_label_length():
    assert default_measure("abc") == (7 * 3 + 16, 26)
    assert default_measure("") == (16, 26)


def test_edge_shade_scale():
    assert edge_shade(100.0) == 0
    assert edge_shade(0.0) == 230
    assert edge_shade(50.0) == 115


def test_flow_runs_left_to_right(fig_cfg):
    g = layout_for(fig_cfg, ("1", "2", "3", "4", "5", "6"))
    xs = [node_by_label(g, str(i)).x for i in range(1, 7)]
    assert xs == sorted(xs)
    assert node_by_label(g, "start").x < xs[0]


def test_fail_state_hangs_below_the_divergence_column(fig_cfg):
    g = layout_for(fig_cfg, ("1", "2", "3", "5"))
    three = node_by_label(g, "3")
    fail = node_by_label(g, "5_4")
    assert abs(fail.x - three.x) <= 9.0
    assert fail.y > three.y


def test_bands_partition_the_canvas(fig_cfg):
    g = layout_for(fig_cfg, ("1", "1", "2", "5"), ("1", "2", "3", "4", "5", "6"))
    top = g.bands[Zone.IRRELEVANT_ERRORS]
    mid = g.bands[Zone.CORRECT_FLOW]
    bottom = g.bands[Zone.RELEVANT_ERRORS]
    assert top[0] == 0.0
    assert top[1] == mid[0]
    assert mid[1] == bottom[0]
    assert bottom[1] == g.height


def test_every_node_sits_inside_its_band(fig_cfg):
    g = layout_for(fig_cfg, ("1", "1", "2", "5"), ("1", "2", "3", "4", "5", "6"))
    for node in g.nodes:
        y0, y1 = g.bands[node.zone]
        assert y0 <= node.y - node.h / 2 and node.y + node.h / 2 <= y1, node.id


def test_dependence_stacks_above_incompatibility():
    cfg = six_step_config(blocked=())
    g = layout_for(cfg, ("1", "AC", "3"))
    dep = node_by_label(g, "3_2")
    inc = node_by_label(g, "3_AC")
    assert abs(dep.x - inc.x) <= 2 * 9.0
    assert dep.y < inc.y


def test_auxiliary_correct_action_gets_its_own_column(fig_cfg):
    g = layout_for(fig_cfg, ("1", "2", "3", "AC", "4", "5", "6"))
    ac = node_by_label(g, "AC", zone=Zone.CORRECT_FLOW)
    assert node_by_label(g, "3").x < ac.x < node_by_label(g, "4").x


def test_no_two_nodes_overlap_small(fig_cfg):
    g = layout_for(
        fig_cfg,
        ("1", "2", "3", "5"),
        ("1", "1", "2", "5"),
        ("1", "3", "2", "3"),
        ("1", "2", "AC", "3"),
        ("1", "2", "3", "4", "5", "6"),
    )
    assert overlapping_pairs(g.nodes) == 0


def test_no_two_nodes_overlap_fixture(fixture_config, automaton87):
    g = layout_automaton(automaton87, fixture_config)
    assert overlapping_pairs(g.nodes) == 0


def test_middle_band_staggers_alternate(fig_cfg):
    g = layout_for(fig_cfg, ("1", "2", "3", "4", "5", "6"))
    mid = g.bands[Zone.CORRECT_FLOW]
    center = (mid[0] + mid[1]) / 2
    offsets = [
        node_by_label(g, label).y - center
        for label in ("start", "1", "2", "3", "4", "5", "6")
    ]
    assert all(abs(abs(o) - 18.0) < 1e-9 for o in offsets)
    assert all(a == -b for a, b in zip(offsets, offsets[1:]))


def test_frequencies_survive_into_nodes_and_edges(fig_cfg):
    g = layout_for(fig_cfg, ("1", "2"), ("1", "3"))
    assert node_by_label(g, "start").frequency == 100.0
    one = node_by_label(g, "1")
    assert one.frequency == 100.0
    do2 = [e for e in g.edges if e.event_label == "do 2"]
    assert len(do2) == 1
    assert do2[0].frequency == 50.0
    assert do2[0].shade == 115


def test_layout_serialization_round_trips(fig_cfg):
    g = layout_for(fig_cfg, ("1", "2", "3", "5"), ("1", "1", "2"))
    again = layout_from_dict(layout_to_dict(g))
    assert again.nodes == g.nodes
    assert again.edges == g.edges
    assert again.bands == g.bands
    assert (again.width, again.height) == (g.width, g.height)


def test_custom_measure_is_respected(fig_cfg):
    from tutorlens.automaton import build_automaton

    logs = [log_of(fig_cfg, "1", "2")]
    automaton = build_automaton(fig_cfg, logs)
    g = layout_automaton(automaton, fig_cfg, measure=lambda label: (100.0, 40.0))
    assert all(n.w == 100.0 and n.h == 40.0 for n in g.nodes)
