"""Brute-force reference trainers certifying optimality on small instances.

For every feature set of the requested size the constrained optimum is
known in closed form (class centers on the set, shared center elsewhere);
enumerating all sets and evaluating the full objective numerically gives an
independent check of the fast trainers' global-optimality claim.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .dataset import Dataset
from .robust import class_centroids, median_stats
from .sparse_l1 import objective_l1
from .sparse_l2 import objective_l2

MAX_ORACLE_FEATURES = 16
ORACLE_REL_TOL = 1e-9


@dataclass(frozen=True)
class OracleResult:
    """Exhaustive per-set objectives and the best set(s) found."""

    best_objective: float
    best_sets: list[tuple[int, ...]]
    per_set_objectives: dict[tuple[int, ...], float]


def objectives_close(a: float, b: float, rel_tol: float = ORACLE_REL_TOL) -> bool:
    """Relative comparison used for all oracle/trainer agreement checks."""
    return abs(a - b) <= rel_tol * max(1.0, abs(a), abs(b))


def brute_force(d: Dataset, k: int, kind: str) -> OracleResult:
    """Enumerate all k-feature sets and return the exhaustive optimum.

    Guarded to at most MAX_ORACLE_FEATURES features; the enumeration is
    C(m, k) closed-form optima, each re-evaluated through the plain
    objective function rather than any shortcut the trainers use.
    """
    m = d.n_features
    if m > MAX_ORACLE_FEATURES:
        raise ValueError(
            f"brute force supports at most {MAX_ORACLE_FEATURES} features, got {m}"
        )
    if not 0 <= k <= m:
        raise ValueError(f"k out of range: {k} (0..{m})")
    if kind == "l2":
        centers = class_centroids(d)
        center_pos, center_neg = centers.center_pos, centers.center_neg
        shared = 0.5 * (center_pos + center_neg)
        objective = objective_l2
    elif kind == "l1":
        stats = median_stats(d)
        center_pos, center_neg = stats.median_pos, stats.median_neg
        shared = stats.median_pooled
        objective = objective_l1
    else:
        raise ValueError(f"unknown kind {kind!r} (expected 'l1' or 'l2')")

    per_set: dict[tuple[int, ...], float] = {}
    for subset in combinations(range(m), k):
        idx = np.array(subset, dtype=np.intp)
        theta_pos = shared.copy()
        theta_neg = shared.copy()
        theta_pos[idx] = center_pos[idx]
        theta_neg[idx] = center_neg[idx]
        per_set[subset] = objective(d, theta_pos, theta_neg)

    best = min(per_set.values())
    best_sets = [s for s, v in per_set.items() if objectives_close(v, best)]
    return OracleResult(
        best_objective=best, best_sets=best_sets, per_set_objectives=per_set
    )
