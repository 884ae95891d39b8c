"""Student behavior models for procedural-training logs.

Pipeline: raw attempts replay through the tutor rules into classified
events, many students' events aggregate into a zoned automaton, automata
cluster by behavior, and a deterministic layout renders each cluster for
the interactive viewer.
"""

from .automaton import (
    Automaton,
    EdgeArc,
    StateKind,
    StateNode,
    build_automaton,
    collapse_super_states,
    event_zones,
    load_automaton,
    save_automaton,
)
from .clustering import (
    ClusterResult,
    cluster_logs,
    em_gmm,
    error_coefficient,
    feature_matrix,
    kmeans,
    xmeans,
)
from .layout import (
    FILL_COLORS,
    OUTLINE_COLORS,
    LayoutGraph,
    edge_shade,
    layout_automaton,
    layout_to_dict,
    load_layout,
    save_layout,
)
from .logio import CorpusLoadResult, load_corpus, save_corpus
from .model import (
    ActionSpec,
    AssignmentConfig,
    ErrorKind,
    EventKind,
    StudentEvent,
    StudentLog,
    TimeConstraint,
    Zone,
    load_config,
    save_config,
    validate_config,
)
from .replay import RawAction, TutorReplay, replay_student, validation_groups
from .stats import (
    MannWhitneyResult,
    PeriodComparison,
    WelchResult,
    compare_periods,
    mann_whitney_u,
    row_from_rates,
    welch_t_test,
)
from .store import ModelStore
from .synth import PROFILES, demo_config, synthesize_corpus, synthesize_period_corpus
from .views import (
    TraceEntry,
    date_view,
    details_of,
    filter_graph,
    filter_layout,
    search_states,
    student_trace,
)

__version__ = "0.1.0"

__all__ = [
    "ActionSpec",
    "AssignmentConfig",
    "Automaton",
    "ClusterResult",
    "CorpusLoadResult",
    "EdgeArc",
    "ErrorKind",
    "EventKind",
    "FILL_COLORS",
    "LayoutGraph",
    "MannWhitneyResult",
    "ModelStore",
    "OUTLINE_COLORS",
    "PROFILES",
    "PeriodComparison",
    "RawAction",
    "StateKind",
    "StateNode",
    "StudentEvent",
    "StudentLog",
    "TimeConstraint",
    "TraceEntry",
    "TutorReplay",
    "WelchResult",
    "Zone",
    "build_automaton",
    "cluster_logs",
    "collapse_super_states",
    "compare_periods",
    "date_view",
    "demo_config",
    "details_of",
    "edge_shade",
    "em_gmm",
    "error_coefficient",
    "event_zones",
    "feature_matrix",
    "filter_graph",
    "filter_layout",
    "kmeans",
    "layout_automaton",
    "layout_to_dict",
    "load_automaton",
    "load_config",
    "load_corpus",
    "load_layout",
    "mann_whitney_u",
    "replay_student",
    "row_from_rates",
    "save_automaton",
    "save_config",
    "save_corpus",
    "save_layout",
    "search_states",
    "student_trace",
    "synthesize_corpus",
    "synthesize_period_corpus",
    "validate_config",
    "validation_groups",
    "welch_t_test",
    "xmeans",
]
