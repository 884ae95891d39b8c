from pathlib import Path

import numpy as np
import pytest

from tutorlens import build_automaton, demo_config, load_config, load_corpus
from tutorlens.model import ActionSpec, AssignmentConfig

FIXTURES = Path(__file__).parent.parent / "fixtures"


def six_step_config(blocked=("3",)) -> AssignmentConfig:
    """Six-step flow plus one auxiliary action AC that poisons step 3."""
    actions = [ActionSpec(code=str(i), phase="p1") for i in range(1, 7)]
    actions.append(ActionSpec(code="AC", phase="p1"))
    actions[2] = ActionSpec(code="3", phase="p1", incompatibilities=("AC",))
    return AssignmentConfig(
        assignment_id="six-steps",
        phases=("p1",),
        correct_flow=tuple(str(i) for i in range(1, 7)),
        actions=tuple(actions),
        blocked_actions=frozenset(blocked),
    )


@pytest.fixture(scope="session")
def demo_cfg():
    return demo_config()


@pytest.fixture(scope="session")
def fig_cfg():
    return six_step_config()


@pytest.fixture(scope="session")
def fixture_config():
    return load_config(FIXTURES / "demo_config.json")


@pytest.fixture(scope="session")
def corpus87(fixture_config):
    result = load_corpus(FIXTURES / "corpus87.jsonl")
    assert not result.problems
    assert len(result.logs) == 87
    return result.logs


@pytest.fixture(scope="session")
def corpus_periods(fixture_config):
    result = load_corpus(FIXTURES / "corpus_periods.jsonl")
    assert not result.problems
    return result.logs


@pytest.fixture(scope="session")
def automaton87(fixture_config, corpus87):
    return build_automaton(fixture_config, corpus87)


def overlapping_pairs(nodes) -> int:
    """Number of node pairs whose rectangles intersect (closed borders touch
    is fine). Vectorized so graphs with thousands of nodes stay cheap."""
    if len(nodes) < 2:
        return 0
    x = np.array([n.x for n in nodes])
    y = np.array([n.y for n in nodes])
    w = np.array([n.w for n in nodes])
    h = np.array([n.h for n in nodes])
    count = 0
    chunk = 512
    for i in range(0, len(nodes), chunk):
        sl = slice(i, i + chunk)
        dx = np.abs(x[sl, None] - x[None, :])
        dy = np.abs(y[sl, None] - y[None, :])
        lim_x = (w[sl, None] + w[None, :]) / 2.0
        lim_y = (h[sl, None] + h[None, :]) / 2.0
        hit = (dx < lim_x) & (dy < lim_y)
        idx = np.arange(i, min(i + chunk, len(nodes)))
        hit[np.arange(len(idx)), idx] = False  # self pairs
        count += int(hit.sum())
    return count // 2
