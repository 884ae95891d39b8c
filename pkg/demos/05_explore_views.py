"""
Interrogating a model: filtering, search, date windows, traces
==============================================================

The automaton for a whole cohort is too dense to stare at. These views
are how an instructor actually works with it: prune the rare states,
search by label, slice by date, follow one student step by step.
"""

from datetime import datetime

from tutorlens import (
    Zone,
    build_automaton,
    date_view,
    demo_config,
    details_of,
    filter_graph,
    search_states,
    student_trace,
    synthesize_corpus,
)

config = demo_config()
logs = synthesize_corpus(config, 87, seed=0)
automaton = build_automaton(config, logs)
print(f"full model: {len(automaton.states)} states, {len(automaton.edges)} edges")

# Raising the frequency threshold strips the one-off detours and leaves
# the common story. The start state survives any cut.
for threshold in (5, 25, 60):
    pruned = filter_graph(automaton, min_node_freq=threshold,
                          min_edge_freq=threshold / 2)
    print(f"  keep states above {threshold:>2}%:"
          f" {len(pruned.states):>4} states, {len(pruned.edges):>4} edges")

# Search is a case-insensitive prefix match over labels, busiest first.
hits = search_states(automaton, "f3t5", zone=Zone.RELEVANT_ERRORS, limit=5)
print(f"\nsearch 'f3t5' in the relevant band: {len(hits)} hits")
for state in hits:
    print(f"  {state.frequency(automaton.n_students):6.2f}%  {state.label}"
          f"  [{state.kind.value}]")

# A date window rebuilds the model from only the sessions started inside
# it, so early-course and late-course cohorts can be compared.
window = date_view(config, logs,
                   from_dt=datetime(2013, 3, 4), to_dt=datetime(2013, 7, 1))
print(f"\nspring sessions only: {window.n_students} of {len(logs)} students,"
      f" {len(window.states)} states")

# A single student's trace walks their own automaton in event order.
sid = logs[2].student_id
trace = student_trace(config, logs, sid)
print(f"\nfirst steps of {sid}:")
for entry in trace[:6]:
    arrow = f"via '{entry.via.label}'" if entry.via else "start"
    print(f"  {entry.timestamp}  [{entry.state.zone.value}]"
          f" {entry.state.label:<8} {arrow}")

# Every state and edge answers with its full record on demand, including
# the tutoring message configured for the action behind it.
def has_message(state):
    spec = config.action(state.validated)
    return spec is not None and spec.tutoring_message is not None

worst = max((s for s in automaton.states.values()
             if s.zone is Zone.RELEVANT_ERRORS and has_message(s)),
            key=lambda s: len(s.students))
record = details_of(automaton, worst.id, config)
print(f"\ndetails of the busiest relevant state '{record['label']}':")
print(f"  kind {record['kind']}, {record['frequency']:.1f}% of students,"
      f" {len(record['incoming'])} arcs in, {len(record['outgoing'])} arcs out")
print(f"  tutor says: {record['tutoring_message']}")
