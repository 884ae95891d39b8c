"""Statistical comparison of two teaching periods.

Error incidence is counted per student: a student either committed an
(action, blamed) error at least once or did not. Incidence rates are exact
rational numbers so that rate differences between periods carry no float
noise. Hypothesis tests: Welch's unequal-variance t-test on rate
differences, and the Mann-Whitney U test (normal approximation with tie and
continuity corrections) on grades.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from statistics import NormalDist
from typing import Iterable, Optional, Sequence

from scipy.special import betainc

from .model import AssignmentConfig, ErrorKind, EventKind, StudentLog

_COUNTED_KINDS = frozenset(
    {
        ErrorKind.SIMPLE_DEPENDENCE,
        ErrorKind.COMPLEX_DEPENDENCE,
        ErrorKind.INCOMPATIBILITY,
        ErrorKind.TIME,
        ErrorKind.WORLD,
    }
)

_NORMAL = NormalDist()


@dataclass(frozen=True)
class WelchResult:
    t: float
    df: float
    p_value: float


def welch_t_test(a: Sequence[float], b: Sequence[float]) -> WelchResult:
    """Two-sided Welch t-test; groups may have unequal variances."""
    n1, n2 = len(a), len(b)
    if n1 < 2 or n2 < 2:
        raise ValueError("welch_t_test needs at least two values per group")
    m1 = sum(a) / n1
    m2 = sum(b) / n2
    v1 = sum((x - m1) ** 2 for x in a) / (n1 - 1)
    v2 = sum((x - m2) ** 2 for x in b) / (n2 - 1)
    se2 = v1 / n1 + v2 / n2
    if se2 == 0:
        return WelchResult(t=0.0, df=float(n1 + n2 - 2), p_value=1.0)
    t = (m1 - m2) / math.sqrt(se2)
    df = se2 * se2 / ((v1 / n1) ** 2 / (n1 - 1) + (v2 / n2) ** 2 / (n2 - 1))
    # two-sided tail of Student's t via the regularized incomplete beta
    p = float(betainc(df / 2.0, 0.5, df / (df + t * t)))
    return WelchResult(t=t, df=df, p_value=min(max(p, 0.0), 1.0))


@dataclass(frozen=True)
class MannWhitneyResult:
    u: float
    z: float
    p_value: float


def _ranks(values: Sequence[float]) -> list[float]:
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        avg = (i + j) / 2.0 + 1.0
        for idx in order[i : j + 1]:
            ranks[idx] = avg
        i = j + 1
    return ranks


def mann_whitney_u(a: Sequence[float], b: Sequence[float]) -> MannWhitneyResult:
    """Two-sided rank-sum test with tie and continuity corrections."""
    n1, n2 = len(a), len(b)
    if n1 == 0 or n2 == 0:
        raise ValueError("mann_whitney_u needs non-empty groups")
    combined = list(a) + list(b)
    ranks = _ranks(combined)
    r1 = sum(ranks[:n1])
    u1 = n1 * n2 + n1 * (n1 + 1) / 2.0 - r1
    u2 = n1 * n2 - u1
    u = min(u1, u2)

    n = n1 + n2
    tie_counts: dict[float, int] = {}
    for v in combined:
        tie_counts[v] = tie_counts.get(v, 0) + 1
    tie_term = sum(t**3 - t for t in tie_counts.values())
    sigma2 = n1 * n2 / 12.0 * ((n + 1) - tie_term / (n * (n - 1)))
    if sigma2 <= 0:
        return MannWhitneyResult(u=u, z=0.0, p_value=1.0)
    mu = n1 * n2 / 2.0
    z = (abs(u - mu) - 0.5) / math.sqrt(sigma2)
    z = max(z, 0.0)
    p = 2.0 * (1.0 - _NORMAL.cdf(z))
    return MannWhitneyResult(u=u, z=z, p_value=min(max(p, 0.0), 1.0))


# ---------------------------------------------------------------------------
# Period comparison


@dataclass(frozen=True)
class ErrorRow:
    """Incidence of one (action, blamed) error in each period."""

    action: str
    error: str
    count_a: int
    count_b: int
    rate_a: Fraction
    rate_b: Fraction

    @property
    def difference(self) -> Fraction:
        return self.rate_a - self.rate_b

    def swapped(self) -> "ErrorRow":
        return ErrorRow(
            action=self.action,
            error=self.error,
            count_a=self.count_b,
            count_b=self.count_a,
            rate_a=self.rate_b,
            rate_b=self.rate_a,
        )


def row_from_rates(
    action: str, error: str, rate_a: str | Fraction, rate_b: str | Fraction
) -> ErrorRow:
    """Build a row from already-computed rates, kept exact via Fraction."""
    fa = rate_a if isinstance(rate_a, Fraction) else Fraction(str(rate_a))
    fb = rate_b if isinstance(rate_b, Fraction) else Fraction(str(rate_b))
    return ErrorRow(action=action, error=error, count_a=-1, count_b=-1, rate_a=fa, rate_b=fb)


def student_error_keys(log: StudentLog) -> set[tuple[str, str]]:
    """Distinct (validated, blamed) pairs the student failed at least once."""
    keys = set()
    for event in log.events:
        if event.kind is EventKind.FAIL and event.error_kind in _COUNTED_KINDS:
            keys.add((event.action_code, event.blamed_action or ""))
    return keys


@dataclass
class PeriodComparison:
    n_a: int
    n_b: int
    rows: list[ErrorRow]
    grade_test: Optional[MannWhitneyResult] = None
    change_test: Optional[WelchResult] = None

    def visible_rows(self, min_percent: float = 30.0) -> list[ErrorRow]:
        """Rows worth charting: below the cutoff in both periods means hidden."""
        cut = Fraction(str(min_percent)) / 100
        return [r for r in self.rows if r.rate_a >= cut or r.rate_b >= cut]


def compare_periods(
    logs_a: Sequence[StudentLog],
    logs_b: Sequence[StudentLog],
    changed_codes: Optional[Iterable[str]] = None,
) -> PeriodComparison:
    """Compare per-student error incidence between two periods.

    `changed_codes`: action codes affected by an environment revision. Rows
    touching any of them form one group, the rest the other; Welch's t-test
    then asks whether the incidence shift differs between the groups.
    """
    n_a, n_b = len(logs_a), len(logs_b)
    if n_a == 0 or n_b == 0:
        raise ValueError("both periods need at least one student")

    keys_a = [student_error_keys(log) for log in logs_a]
    keys_b = [student_error_keys(log) for log in logs_b]
    all_keys = sorted(set().union(*keys_a, *keys_b)) if (keys_a or keys_b) else []

    rows = []
    for action, error in all_keys:
        ca = sum((action, error) in ks for ks in keys_a)
        cb = sum((action, error) in ks for ks in keys_b)
        rows.append(
            ErrorRow(
                action=action,
                error=error,
                count_a=ca,
                count_b=cb,
                rate_a=Fraction(ca, n_a),
                rate_b=Fraction(cb, n_b),
            )
        )

    grade_test = None
    grades_a = [log.grade for log in logs_a if log.grade is not None]
    grades_b = [log.grade for log in logs_b if log.grade is not None]
    if grades_a and grades_b:
        grade_test = mann_whitney_u(grades_a, grades_b)

    change_test = None
    if changed_codes is not None:
        changed = set(changed_codes)
        mapped = [float(r.difference) for r in rows if r.action in changed or r.error in changed]
        unmapped = [
            float(r.difference) for r in rows if r.action not in changed and r.error not in changed
        ]
        if len(mapped) >= 2 and len(unmapped) >= 2:
            change_test = welch_t_test(mapped, unmapped)

    return PeriodComparison(
        n_a=n_a, n_b=n_b, rows=rows, grade_test=grade_test, change_test=change_test
    )


def comparison_to_dict(comparison: PeriodComparison, min_percent: float = 0.0) -> dict:
    rows = comparison.visible_rows(min_percent) if min_percent > 0 else comparison.rows
    return {
        "n_a": comparison.n_a,
        "n_b": comparison.n_b,
        "rows": [
            {
                "action": r.action,
                "error": r.error,
                "count_a": r.count_a,
                "count_b": r.count_b,
                "rate_a": float(r.rate_a),
                "rate_b": float(r.rate_b),
                "rate_a_exact": str(r.rate_a),
                "rate_b_exact": str(r.rate_b),
                "difference": float(r.difference),
                "difference_exact": str(r.difference),
            }
            for r in rows
        ],
        "grade_test": (
            {
                "u": comparison.grade_test.u,
                "z": comparison.grade_test.z,
                "p_value": comparison.grade_test.p_value,
            }
            if comparison.grade_test
            else None
        ),
        "change_test": (
            {
                "t": comparison.change_test.t,
                "df": comparison.change_test.df,
                "p_value": comparison.change_test.p_value,
            }
            if comparison.change_test
            else None
        ),
    }
