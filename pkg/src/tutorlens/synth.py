"""Synthetic assignments and student populations.

Real tutor exports are not distributable, so tests and demos run on
generated corpora. The demo assignment has three phases, a 61-step correct
flow ending in f3t61 and 120 actions overall. Student behavior is drawn
from profiles (skip, repeat, extra, wrong phase, rushing, abandoning) with
a seeded generator, so any corpus is reproducible from its seed.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from datetime import datetime, timedelta
from typing import Optional, Sequence

import numpy as np

from .clustering import error_coefficient
from .model import (
    ActionSpec,
    AssignmentConfig,
    ErrorKind,
    EventKind,
    StudentLog,
    TimeConstraint,
)
from .replay import RawAction, replay_student

WORLD_TOKENS = ("faileddropbotella", "failedpourflask", "failedalignlens")


def demo_config() -> AssignmentConfig:
    """Three-phase laboratory assignment: 61 flow steps, 120 actions."""
    phases = ("p1", "p2", "p3")
    flow_p1 = [f"f1t{i}" for i in range(1, 31)]
    flow_p2 = [f"f2t{i}" for i in range(31, 56)]
    flow_p3 = [f"f3t{i}" for i in range(56, 62)]
    flow = flow_p1 + flow_p2 + flow_p3

    extras_p1 = ["f0t8"] + [f"f1x{i:02d}" for i in range(1, 20)]
    extras_p2 = [f"f2x{i:02d}" for i in range(1, 21)]
    extras_p3 = [f"f3x{i:02d}" for i in range(1, 19)] + ["ac1"]

    dependencies = {
        "f1t1": ("f0t8",),
        "f1t20": ("f1t16",),
        "f2x05": ("f2t31",),
    }
    incompatibilities = {
        "f3t58": ("ac1",),
        "f2t45": ("f2x10",),
    }
    time_constraints = {
        "f3t57": (TimeConstraint(other="f3t56", min_seconds=30.0),),
        "f1t25": (TimeConstraint(other="f1t24", max_seconds=600.0),),
    }
    messages = {
        "f1t16": "Label the sample container before moving on.",
        "f2t52": "The mixture needs both reagents added first.",
        "f3t58": "This step is ruined if the auxiliary valve was opened.",
        "f3t61": "Store the result and sign the worksheet.",
    }

    actions = []
    for phase, codes in (("p1", flow_p1 + extras_p1), ("p2", flow_p2 + extras_p2),
                         ("p3", flow_p3 + extras_p3)):
        for i, code in enumerate(codes):
            actions.append(
                ActionSpec(
                    code=code,
                    phase=phase,
                    description=f"step {code} of the practice",
                    dependencies=dependencies.get(code, ()),
                    incompatibilities=incompatibilities.get(code, ()),
                    time_constraints=time_constraints.get(code, ()),
                    weight=(0.5, 1.0, 1.0, 1.5, 2.0, 1.0, 3.0)[i % 7],
                    tutoring_message=messages.get(code),
                    world_relevant=(code == "f2t50"),
                )
            )

    return AssignmentConfig(
        assignment_id="lab-practice-demo",
        phases=phases,
        correct_flow=tuple(flow),
        actions=tuple(actions),
        blocked_actions=frozenset({"f1t10", "f2x03", "f3t60"}),
    )


@dataclass(frozen=True)
class StudentProfile:
    """Misbehavior rates; all probabilities are per flow step."""

    p_skip: float = 0.0
    skip_span: int = 3
    p_extra: float = 0.0
    p_repeat: float = 0.0
    p_wrong_phase: float = 0.0
    p_unknown: float = 0.0
    p_blocked_try: float = 0.0
    p_world: float = 0.0
    p_rush: float = 0.0  # violating a minimum-delay window
    p_abandon: float = 0.0
    p_prepare: float = 1.0  # doing declared off-flow dependencies in time
    targeted_skips: tuple[str, ...] = ()
    p_target: float = 0.0


PROFILES: dict[str, StudentProfile] = {
    "perfect": StudentProfile(),
    "careful": StudentProfile(
        p_skip=0.01, p_extra=0.02, p_repeat=0.01, p_rush=0.05, p_prepare=0.9
    ),
    "average": StudentProfile(
        p_skip=0.04, p_extra=0.05, p_repeat=0.03, p_wrong_phase=0.01,
        p_blocked_try=0.02, p_world=0.01, p_rush=0.3, p_abandon=0.0005, p_prepare=0.75,
    ),
    "struggling": StudentProfile(
        p_skip=0.10, skip_span=5, p_extra=0.10, p_repeat=0.06, p_wrong_phase=0.03,
        p_unknown=0.01, p_blocked_try=0.04, p_world=0.03, p_rush=0.6,
        p_abandon=0.002, p_prepare=0.5,
    ),
    "chaotic": StudentProfile(
        p_skip=0.22, skip_span=8, p_extra=0.18, p_repeat=0.12, p_wrong_phase=0.08,
        p_unknown=0.03, p_blocked_try=0.08, p_world=0.06, p_rush=0.8,
        p_abandon=0.003, p_prepare=0.3,
    ),
}


def synthesize_student(
    config: AssignmentConfig,
    student_id: str,
    rng: np.random.Generator,
    start: datetime,
    profile: StudentProfile,
) -> list[RawAction]:
    """Walk the flow with seeded detours; returns the raw attempt stream."""
    flow = config.correct_flow
    by_phase: dict[str, list[str]] = {}
    flow_set = set(flow)
    for spec in config.actions:
        if spec.code not in flow_set:
            by_phase.setdefault(spec.phase, []).append(spec.code)

    t = start
    raws: list[RawAction] = []
    performed: set[str] = set()

    def emit(code: str, world: Optional[str] = None, gap: Optional[float] = None) -> None:
        nonlocal t
        t += timedelta(seconds=float(gap if gap is not None else rng.uniform(5.0, 40.0)))
        raws.append(RawAction(student_id, t, code, world))

    def paced_gap(code: str) -> Optional[float]:
        spec = config.action(code)
        if spec is None:
            return None
        for tc in spec.time_constraints:
            if tc.min_seconds is not None and tc.other in performed:
                if rng.random() < profile.p_rush:
                    return float(rng.uniform(3.0, tc.min_seconds * 0.6))
                return float(rng.uniform(tc.min_seconds * 1.2, tc.min_seconds * 2.5))
        return None

    i = 0
    abandoned = False
    while i < len(flow) and not abandoned:
        phase = config.action(flow[i]).phase
        roll = rng.random()
        if roll < profile.p_extra and by_phase.get(phase):
            code = by_phase[phase][rng.integers(len(by_phase[phase]))]
            world = WORLD_TOKENS[rng.integers(len(WORLD_TOKENS))] if rng.random() < 0.2 else None
            emit(code, world)
            performed.add(code)
        elif roll < profile.p_extra + profile.p_repeat and performed:
            emit(sorted(performed)[rng.integers(len(performed))])
        elif roll < profile.p_extra + profile.p_repeat + profile.p_wrong_phase:
            others = [p for p in config.phases if p != phase and by_phase.get(p)]
            if others:
                pool = by_phase[others[rng.integers(len(others))]]
                emit(pool[rng.integers(len(pool))])
        elif roll < profile.p_extra + profile.p_repeat + profile.p_wrong_phase + profile.p_unknown:
            emit(f"ghost{rng.integers(1, 4)}")
        elif rng.random() < profile.p_blocked_try:
            candidates = [
                c for c in sorted(config.blocked_actions)
                if c not in performed
                and (config.flow_position(c) is None or config.flow_position(c) > i)
            ]
            if candidates:
                emit(candidates[rng.integers(len(candidates))])

        if flow[i] in performed:
            i += 1
            continue

        if (
            flow[i] in profile.targeted_skips and rng.random() < profile.p_target
            and i + 1 < len(flow)
        ):
            emit(flow[i + 1])
            performed.add(flow[i + 1])
            # go back and repair the skipped step
        elif rng.random() < profile.p_skip and i + 1 < len(flow):
            span = int(rng.integers(1, profile.skip_span + 1))
            j = min(i + span, len(flow) - 1)
            emit(flow[j], gap=paced_gap(flow[j]))
            performed.add(flow[j])

        if flow[i] in performed:
            i += 1
            continue
        spec = config.action(flow[i])
        for dep in spec.dependencies:
            if dep not in performed and config.flow_position(dep) is None:
                if rng.random() < profile.p_prepare:
                    emit(dep)
                    performed.add(dep)
        world = (
            WORLD_TOKENS[rng.integers(len(WORLD_TOKENS))]
            if rng.random() < profile.p_world
            else None
        )
        emit(flow[i], world, gap=paced_gap(flow[i]))
        performed.add(flow[i])
        i += 1
        if rng.random() < profile.p_abandon:
            abandoned = True

    return raws


def _grade_for(config: AssignmentConfig, log: StudentLog, rng: np.random.Generator) -> float:
    ec = error_coefficient(config, log)
    grade = 10.0 - 0.6 * ec + float(rng.normal(0.0, 0.4))
    return round(min(10.0, max(0.0, grade)), 1)


def _is_clean(log: StudentLog) -> bool:
    return all(
        e.kind is EventKind.DO and e.error_kind is ErrorKind.NONE for e in log.events
    )


_RELEVANT = frozenset(
    {
        ErrorKind.SIMPLE_DEPENDENCE,
        ErrorKind.COMPLEX_DEPENDENCE,
        ErrorKind.INCOMPATIBILITY,
        ErrorKind.TIME,
    }
)


def _has_relevant_error(config: AssignmentConfig, log: StudentLog) -> bool:
    for e in log.events:
        if e.error_kind in _RELEVANT:
            return True
        if e.error_kind is ErrorKind.WORLD:
            spec = config.action(e.action_code)
            if spec is not None and spec.world_relevant:
                return True
    return False


def synthesize_corpus(
    config: AssignmentConfig,
    n_students: int,
    seed: int,
    start: datetime = datetime(2013, 3, 4, 9, 0, 0),
    profile_weights: Optional[dict[str, float]] = None,
    n_perfect: int = 1,
) -> list[StudentLog]:
    """Generate a reproducible corpus with exactly `n_perfect` clean runs.

    Every other student is guaranteed at least one relevant error, so only
    the clean runs finish inside the correct-flow band. A run that comes
    out harmless by chance gets a second flow step attempted before the
    first, which always earns a dependence fail.
    """
    weights = profile_weights or {"careful": 0.25, "average": 0.5, "struggling": 0.25}
    names = sorted(weights)
    probs = np.array([weights[n] for n in names], dtype=float)
    probs /= probs.sum()
    rng = np.random.default_rng(seed)

    logs: list[StudentLog] = []
    for idx in range(n_students):
        sid = f"s{idx + 1:03d}"
        day = rng.integers(0, 240)
        student_start = start + timedelta(days=int(day), minutes=int(rng.integers(0, 360)))
        if idx < n_perfect:
            profile = PROFILES["perfect"]
        else:
            profile = PROFILES[names[rng.choice(len(names), p=probs)]]
        raws = synthesize_student(config, sid, rng, student_start, profile)
        log = replay_student(config, raws)
        if idx >= n_perfect and not _has_relevant_error(config, log):
            early = RawAction(
                sid, raws[0].timestamp - timedelta(seconds=10), config.correct_flow[1]
            )
            raws = [early] + raws
            log = replay_student(config, raws)
        grade = _grade_for(config, log, rng)
        if idx < n_perfect:
            grade = 10.0
        logs.append(replace(log, grade=grade))
    return logs


def synthesize_period_corpus(
    config: AssignmentConfig,
    seed: int,
    n_before: int = 85,
    n_after: int = 17,
    changed_codes: Sequence[str] = ("f1t16", "f2t37"),
) -> tuple[list[StudentLog], list[StudentLog]]:
    """Two cohorts around an environment revision.

    Before the revision students often skip straight over the changed steps;
    after it the targeted mistake largely disappears while the background
    error rates stay put.
    """
    rng = np.random.default_rng(seed)
    before_profile = replace(
        PROFILES["average"], targeted_skips=tuple(changed_codes), p_target=0.6
    )
    after_profile = replace(
        PROFILES["average"], targeted_skips=tuple(changed_codes), p_target=0.05
    )

    def cohort(n: int, profile: StudentProfile, year0: int, years: int, tag: str):
        logs = []
        for idx in range(n):
            sid = f"{tag}{idx + 1:03d}"
            year = year0 + int(rng.integers(0, years))
            start = datetime(year, 3, 1, 9, 0, 0) + timedelta(
                days=int(rng.integers(0, 240)), minutes=int(rng.integers(0, 360))
            )
            raws = synthesize_student(config, sid, rng, start, profile)
            log = replay_student(config, raws)
            logs.append(replace(log, grade=_grade_for(config, log, rng)))
        return logs

    return (
        cohort(n_before, before_profile, 2013, 3, "a"),
        cohort(n_after, after_profile, 2016, 1, "b"),
    )
