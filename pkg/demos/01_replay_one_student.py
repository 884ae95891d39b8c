"""
Replaying one student's raw clicks through the tutor rules
==========================================================

A training environment records nothing but (student, timestamp, action).
The replay turns that stream into classified events: each DO that breaks
a rule earns FAIL events blaming the violated actions.
"""

from datetime import datetime, timedelta

from tutorlens import ActionSpec, AssignmentConfig, RawAction, replay_student

# A tiny bench assignment: connect a cable, power on, then run the test.
# "test" depends on "power_on", and "shortcut" clashes with it.
config = AssignmentConfig(
    assignment_id="bench-basics",
    phases=("bench",),
    correct_flow=("connect", "power_on", "test"),
    actions=(
        ActionSpec("connect", "bench", "Connect the supply cable"),
        ActionSpec("power_on", "bench", "Switch the bench on",
                   dependencies=("connect",)),
        ActionSpec("test", "bench", "Run the self test",
                   dependencies=("power_on",)),
        ActionSpec("shortcut", "bench", "Bypass the breaker",
                   incompatibilities=("power_on",)),
    ),
)

# One student: runs the test far too early, recovers, takes the forbidden
# shortcut, then repeats the test once more for good measure.
t0 = datetime(2013, 5, 6, 9, 30)
clicks = ["test", "connect", "power_on", "shortcut", "test", "test"]
raws = [
    RawAction("maria", t0 + timedelta(seconds=30 * i), code)
    for i, code in enumerate(clicks)
]

log = replay_student(config, raws)

print(f"student {log.student_id}: {len(raws)} clicks -> {len(log.events)} events")
for event in log.events:
    blame = f" (blames {event.blamed_action})" if event.blamed_action else ""
    print(f"  {event.timestamp:%H:%M:%S}  {event.label:<28}"
          f" error={event.error_kind.value}{blame}")

# The premature test skipped two steps at once, so both fails carry the
# complex-dependence kind. The shortcut only failed because power_on was
# already performed: incompatibilities judge the session so far, and the
# final repeated test is flagged but causes no fail of its own.
