from datetime import datetime, timedelta

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tutorlens.model import (
    ActionSpec,
    AssignmentConfig,
    ErrorKind,
    EventKind,
    StudentEvent,
    StudentLog,
    TimeConstraint,
    Zone,
    config_from_dict,
    config_to_dict,
    validate_config,
)

T0 = datetime(2013, 5, 2, 10, 0, 0)


@given(st.sampled_from(list(EventKind)))
def test_event_kind_round_trips(kind):
    assert EventKind(kind.value) is kind


@given(st.sampled_from(list(ErrorKind)))
def test_error_kind_round_trips(kind):
    assert ErrorKind(kind.value) is kind


@given(st.sampled_from(list(Zone)))
def test_zone_round_trips(zone):
    assert Zone(zone.value) is zone


def test_fail_event_requires_an_error_kind():
    with pytest.raises(ValueError):
        StudentEvent("s1", T0, EventKind.FAIL, "a1")


def test_do_event_rejects_relevant_error_kinds():
    with pytest.raises(ValueError):
        StudentEvent("s1", T0, EventKind.DO, "a1", ErrorKind.INCOMPATIBILITY, "a0")


def test_fail_display_code_is_the_blamed_action():
    ev = StudentEvent("s1", T0, EventKind.FAIL, "f1t20", ErrorKind.SIMPLE_DEPENDENCE, "f1t16")
    assert ev.display_code == "f1t16"
    assert ev.label == "fail f1t16"


def test_do_display_code_is_the_validated_action():
    ev = StudentEvent("s1", T0, EventKind.DO, "f1t20")
    assert ev.display_code == "f1t20"
    assert ev.label == "do f1t20"


def test_log_rejects_unsorted_events():
    events = [
        StudentEvent("s1", T0 + timedelta(seconds=5), EventKind.DO, "a"),
        StudentEvent("s1", T0, EventKind.DO, "b"),
    ]
    with pytest.raises(ValueError):
        StudentLog.from_events("s1", events)


def test_log_rejects_foreign_events():
    events = [StudentEvent("s2", T0, EventKind.DO, "a")]
    with pytest.raises(ValueError):
        StudentLog.from_events("s1", events)


def test_log_duration():
    events = [
        StudentEvent("s1", T0, EventKind.DO, "a"),
        StudentEvent("s1", T0 + timedelta(minutes=3), EventKind.DO, "b"),
    ]
    log = StudentLog.from_events("s1", events, grade=7.5)
    assert log.duration_seconds == 180.0
    assert log.grade == 7.5


def _config(**overrides):
    base = dict(
        assignment_id="t",
        phases=("p1",),
        correct_flow=("a", "b"),
        actions=(
            ActionSpec(code="a", phase="p1"),
            ActionSpec(code="b", phase="p1"),
        ),
    )
    base.update(overrides)
    return AssignmentConfig(**base)


def test_valid_config_has_no_violations():
    assert validate_config(_config()) == []


def test_duplicate_action_codes_are_flagged():
    cfg = _config(actions=(ActionSpec("a", "p1"), ActionSpec("a", "p1"), ActionSpec("b", "p1")))
    assert any("duplicate" in v for v in validate_config(cfg))


def test_flow_step_without_spec_is_flagged():
    cfg = _config(correct_flow=("a", "b", "ghost"))
    assert any("ghost" in v for v in validate_config(cfg))


def test_unknown_phase_is_flagged():
    cfg = _config(actions=(ActionSpec("a", "p9"), ActionSpec("b", "p1")))
    assert any("phase" in v for v in validate_config(cfg))


def test_undeclared_dependency_is_flagged():
    cfg = _config(actions=(ActionSpec("a", "p1", dependencies=("zz",)), ActionSpec("b", "p1")))
    assert any("zz" in v for v in validate_config(cfg))


def test_empty_time_constraint_is_flagged():
    cfg = _config(
        actions=(
            ActionSpec("a", "p1", time_constraints=(TimeConstraint(other="b"),)),
            ActionSpec("b", "p1"),
        )
    )
    assert any("time constraint" in v for v in validate_config(cfg))


def test_unknown_blocked_action_is_flagged():
    cfg = _config(blocked_actions=frozenset({"nope"}))
    assert any("nope" in v for v in validate_config(cfg))


def test_config_dict_round_trip():
    cfg = _config(
        actions=(
            ActionSpec(
                "a",
                "p1",
                description="first",
                incompatibilities=("b",),
                time_constraints=(TimeConstraint(other="b", min_seconds=5.0),),
                weight=2.5,
                tutoring_message="careful now",
                world_relevant=True,
            ),
            ActionSpec("b", "p1", dependencies=("a",)),
        ),
        blocked_actions=frozenset({"b"}),
    )
    again = config_from_dict(config_to_dict(cfg))
    assert again == cfg
