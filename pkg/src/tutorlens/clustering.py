"""Groups students by behavior before building per-group automata.

Three feature extractors are available: the weighted error coefficient
alone, the coefficient plus total working time, and the per-zone event
counts. Grouping methods: none (one group), X-Means (picks the group count
by BIC between bounds), and a diagonal-covariance Gaussian mixture fit by
expectation-maximization at a fixed group count.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy.special import logsumexp

from .automaton import event_zones
from .model import AssignmentConfig, EventKind, StudentLog, Zone

FEATURE_NAMES = ("errors", "errors-time", "zone-events")
METHOD_NAMES = ("none", "xmeans", "em")

KMEANS_TOL = 1e-6
KMEANS_MAX_ITER = 100
EM_TOL = 1e-8
EM_MAX_ITER = 200
VARIANCE_FLOOR = 1e-6


def error_coefficient(config: AssignmentConfig, log: StudentLog) -> float:
    """Sum of action weights over every fail event in the log."""
    return sum(
        config.weight_of(e.action_code) for e in log.events if e.kind is EventKind.FAIL
    )


def feature_matrix(
    config: AssignmentConfig, logs: Sequence[StudentLog], feature: str
) -> np.ndarray:
    if feature == "errors":
        rows = [[error_coefficient(config, log)] for log in logs]
    elif feature == "errors-time":
        rows = [
            [error_coefficient(config, log), log.duration_seconds] for log in logs
        ]
    elif feature == "zone-events":
        rows = []
        for log in logs:
            zones = event_zones(config, log)
            rows.append(
                [
                    sum(z is Zone.CORRECT_FLOW for z in zones),
                    sum(z is Zone.IRRELEVANT_ERRORS for z in zones),
                    sum(z is Zone.RELEVANT_ERRORS for z in zones),
                ]
            )
    else:
        raise ValueError(f"unknown feature {feature!r}, expected one of {FEATURE_NAMES}")
    return np.asarray(rows, dtype=np.float64)


# ---------------------------------------------------------------------------
# k-means


def _kmeans_pp_init(X: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = X.shape[0]
    centers = [X[rng.integers(n)]]
    for _ in range(1, k):
        d2 = np.min(
            ((X[:, None, :] - np.asarray(centers)[None, :, :]) ** 2).sum(axis=2), axis=1
        )
        total = d2.sum()
        if total <= 0:
            centers.append(X[rng.integers(n)])
            continue
        centers.append(X[rng.choice(n, p=d2 / total)])
    return np.asarray(centers)


def kmeans(
    X: np.ndarray,
    k: int,
    rng: np.random.Generator,
    tol: float = KMEANS_TOL,
    max_iter: int = KMEANS_MAX_ITER,
) -> tuple[np.ndarray, np.ndarray, float]:
    """Lloyd iterations from a k-means++ start; returns labels, centers, inertia."""
    n = X.shape[0]
    if k >= n:
        labels = np.arange(n) % max(k, 1)
        centers = np.array([X[labels == c].mean(axis=0) if (labels == c).any() else X[0]
                            for c in range(k)])
        inertia = 0.0
        return labels, centers, inertia

    centers = _kmeans_pp_init(X, k, rng)
    labels = np.zeros(n, dtype=int)
    for _ in range(max_iter):
        d2 = ((X[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        labels = d2.argmin(axis=1)
        new_centers = centers.copy()
        for c in range(k):
            members = X[labels == c]
            if len(members):
                new_centers[c] = members.mean(axis=0)
            else:
                # revive an empty cluster at the point farthest from its center
                farthest = d2[np.arange(n), labels].argmax()
                new_centers[c] = X[farthest]
        shift = np.sqrt(((new_centers - centers) ** 2).sum(axis=1)).max()
        centers = new_centers
        if shift <= tol:
            break
    d2 = ((X[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
    labels = d2.argmin(axis=1)
    inertia = float(d2[np.arange(n), labels].sum())
    return labels, centers, inertia


# ---------------------------------------------------------------------------
# X-Means


def _spherical_loglik(X: np.ndarray, labels: np.ndarray, centers: np.ndarray) -> float:
    n, d = X.shape
    ll = 0.0
    for c in range(centers.shape[0]):
        members = X[labels == c]
        nc = len(members)
        if nc == 0:
            continue
        var = ((members - centers[c]) ** 2).sum() / (nc * d)
        var = max(var, 1e-12)
        ll += nc * np.log(nc / n)
        ll += -0.5 * nc * d * np.log(2.0 * np.pi * var) - 0.5 * nc * d
    return float(ll)


def bic_score(X: np.ndarray, labels: np.ndarray, centers: np.ndarray) -> float:
    """BIC of a spherical mixture: log-likelihood minus (p/2)ln(n)."""
    n, d = X.shape
    k = centers.shape[0]
    p = k * (d + 1)
    return _spherical_loglik(X, labels, centers) - 0.5 * p * np.log(n)


@dataclass
class ClusterResult:
    method: str
    feature: str
    k: int
    labels: np.ndarray
    centers: np.ndarray  # in original feature units
    report: dict = field(default_factory=dict)

    def members(self, cluster: int) -> np.ndarray:
        return np.flatnonzero(self.labels == cluster)


def xmeans(
    X: np.ndarray,
    k_min: int,
    k_max: int,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray, dict]:
    """Grow k from k_min by splitting clusters whenever BIC improves locally."""
    if not 1 <= k_min <= k_max:
        raise ValueError(f"need 1 <= k_min <= k_max, got {k_min}..{k_max}")
    labels, centers, _ = kmeans(X, k_min, rng)
    history = [bic_score(X, labels, centers)]

    while centers.shape[0] < k_max:
        split_any = False
        kept: list[np.ndarray] = []
        for c in range(centers.shape[0]):
            members = X[labels == c]
            room = len(kept) + (centers.shape[0] - c) + 1 <= k_max
            if len(members) < 4 or not room:
                kept.append(centers[c : c + 1])
                continue
            sub_labels, sub_centers, _ = kmeans(members, 2, rng)
            if len(np.unique(sub_labels)) < 2:
                kept.append(centers[c : c + 1])
                continue
            one = bic_score(members, np.zeros(len(members), dtype=int), centers[c : c + 1])
            two = bic_score(members, sub_labels, sub_centers)
            if two > one:
                kept.append(sub_centers)
                split_any = True
            else:
                kept.append(centers[c : c + 1])
        new_centers = np.vstack(kept)[:k_max]
        if not split_any or new_centers.shape[0] == centers.shape[0]:
            break
        # settle the enlarged center set globally
        d2 = ((X[:, None, :] - new_centers[None, :, :]) ** 2).sum(axis=2)
        labels = d2.argmin(axis=1)
        for _ in range(KMEANS_MAX_ITER):
            moved = new_centers.copy()
            for c in range(new_centers.shape[0]):
                pts = X[labels == c]
                if len(pts):
                    moved[c] = pts.mean(axis=0)
            shift = np.sqrt(((moved - new_centers) ** 2).sum(axis=1)).max()
            new_centers = moved
            d2 = ((X[:, None, :] - new_centers[None, :, :]) ** 2).sum(axis=2)
            labels = d2.argmin(axis=1)
            if shift <= KMEANS_TOL:
                break
        centers = new_centers
        history.append(bic_score(X, labels, centers))

    return labels, centers, {"bic_history": history, "k": int(centers.shape[0])}


# ---------------------------------------------------------------------------
# EM for a diagonal-covariance Gaussian mixture


def em_gmm(
    X: np.ndarray,
    k: int,
    rng: np.random.Generator,
    tol: float = EM_TOL,
    max_iter: int = EM_MAX_ITER,
) -> tuple[np.ndarray, np.ndarray, dict]:
    """Fit a k-component diagonal GMM; labels are argmax responsibilities.

    The per-iteration log-likelihood never decreases; each value is recorded.
    Variances are floored at 1e-6 and every floored component-dimension is
    counted in the report.
    """
    n, d = X.shape
    labels, centers, _ = kmeans(X, k, rng)
    means = centers.copy()
    variances = np.empty((k, d))
    weights = np.empty(k)
    floored = 0
    for c in range(k):
        members = X[labels == c]
        weights[c] = max(len(members), 1) / n
        if len(members):
            variances[c] = members.var(axis=0)
        else:
            variances[c] = X.var(axis=0)
    weights /= weights.sum()
    low = variances < VARIANCE_FLOOR
    floored += int(low.sum())
    variances[low] = VARIANCE_FLOOR

    ll_history: list[float] = []
    prev_ll = -np.inf
    for _ in range(max_iter):
        # E-step in log space
        log_prob = np.empty((n, k))
        for c in range(k):
            diff2 = (X - means[c]) ** 2 / variances[c]
            log_prob[:, c] = (
                np.log(weights[c])
                - 0.5 * (d * np.log(2.0 * np.pi) + np.log(variances[c]).sum())
                - 0.5 * diff2.sum(axis=1)
            )
        norm = logsumexp(log_prob, axis=1)
        ll = float(norm.sum())
        ll_history.append(ll)
        resp = np.exp(log_prob - norm[:, None])

        # M-step
        mass = resp.sum(axis=0)
        weights = mass / n
        means = (resp.T @ X) / mass[:, None]
        for c in range(k):
            diff2 = (X - means[c]) ** 2
            variances[c] = (resp[:, c][:, None] * diff2).sum(axis=0) / mass[c]
        low = variances < VARIANCE_FLOOR
        floored += int(low.sum())
        variances[low] = VARIANCE_FLOOR

        if ll - prev_ll <= tol * max(1.0, abs(ll)) and np.isfinite(prev_ll):
            break
        prev_ll = ll

    log_prob = np.empty((n, k))
    for c in range(k):
        diff2 = (X - means[c]) ** 2 / variances[c]
        log_prob[:, c] = (
            np.log(weights[c])
            - 0.5 * (d * np.log(2.0 * np.pi) + np.log(variances[c]).sum())
            - 0.5 * diff2.sum(axis=1)
        )
    labels = log_prob.argmax(axis=1)
    report = {
        "ll_history": ll_history,
        "floored_variances": floored,
        "weights": weights.tolist(),
    }
    return labels, means, report


# ---------------------------------------------------------------------------
# Front door


def _standardize(X: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    mean = X.mean(axis=0)
    std = X.std(axis=0)
    std = np.where(std > 0, std, 1.0)
    return (X - mean) / std, mean, std


def cluster_logs(
    config: AssignmentConfig,
    logs: Sequence[StudentLog],
    method: str = "none",
    feature: str = "errors",
    k: Optional[int] = None,
    k_min: int = 1,
    k_max: int = 8,
    seed: int = 0,
) -> ClusterResult:
    """Assign every log to a behavior group. Columns are standardized first."""
    if method not in METHOD_NAMES:
        raise ValueError(f"unknown method {method!r}, expected one of {METHOD_NAMES}")
    X = feature_matrix(config, logs, feature)
    n = len(logs)

    if method == "none":
        return ClusterResult(
            method=method,
            feature=feature,
            k=1,
            labels=np.zeros(n, dtype=int),
            centers=X.mean(axis=0, keepdims=True) if n else np.zeros((1, X.shape[1])),
            report={},
        )

    rng = np.random.default_rng(seed)
    Z, mean, std = _standardize(X)
    if method == "xmeans":
        labels, centers, report = xmeans(Z, k_min, min(k_max, n), rng)
    else:
        if k is None:
            raise ValueError("method 'em' needs an explicit k")
        labels, centers, report = em_gmm(Z, min(k, n), rng)

    # relabel by ascending first-center coordinate so output order is stable
    order = np.argsort(centers[:, 0], kind="stable")
    remap = np.empty_like(order)
    remap[order] = np.arange(len(order))
    labels = remap[labels]
    centers = centers[order] * std + mean

    return ClusterResult(
        method=method,
        feature=feature,
        k=int(centers.shape[0]),
        labels=labels,
        centers=centers,
        report=report,
    )
