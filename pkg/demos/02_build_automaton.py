"""
From a corpus of logs to a zoned behavior automaton
===================================================

Every student walks their own path, but the paths overlap. The automaton
merges them: one node per distinct (zone, kind, action, anchor) state,
weighted by how many students passed through it.
"""

from collections import Counter

from tutorlens import (
    Zone,
    build_automaton,
    demo_config,
    synthesize_corpus,
)

config = demo_config()
logs = synthesize_corpus(config, 87, seed=0)
print(f"assignment {config.assignment_id}: flow of {len(config.correct_flow)} steps,"
      f" {len(config.actions)} actions")
print(f"corpus: {len(logs)} students,"
      f" {sum(len(log.events) for log in logs)} events")

automaton = build_automaton(config, logs)
print(f"\nautomaton: {len(automaton.states)} states, {len(automaton.edges)} edges")

# The three zones split the picture: the correct flow through the middle,
# harmless noise above it, real rule violations below.
by_zone = Counter(s.zone for s in automaton.states.values())
for zone in Zone:
    print(f"  {zone.value:<18} {by_zone[zone]:>5} states")

# Frequencies are percentages of the whole cohort. The start state is the
# only one guaranteed to hold everybody.
n = automaton.n_students
top = sorted(automaton.states.values(), key=lambda s: -len(s.students))[:8]
print("\nmost traversed states:")
for state in top:
    print(f"  {state.frequency(n):6.2f}%  [{state.zone.value}] {state.label}")

# Repeated stumbling over already-performed or missing actions collapses
# into numbered super-states; compare against the uncollapsed build.
plain = build_automaton(config, logs, collapse=False)
supers = [s for s in automaton.states.values() if s.member_count > 1]
folded = sum(s.member_count for s in supers)
print(f"\nwithout grouping: {len(plain.states)} states;"
      f" grouping folded {folded} of them"
      f" into {len(supers)} super-states")
biggest = max(supers, key=lambda s: s.member_count)
print(f"largest super-state spans {biggest.member_count} repeated stumbles"
      f" ({biggest.frequency(n):.1f}% of students)")
