"""Exact training of the sparse absolute-distance (L1) center classifier.

Per feature, giving the classes separate centers costs the sum of the two
class median dispersions, while a shared center costs the pooled weighted
median dispersion.  The split gain (their difference, never positive)
ranks the features; the k most negative gains form the globally optimal
selected set, and one ranking covers every sparsity level.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import Dataset, partition
from .model import CenterModel
from .robust import DispersionTriple, median_stats
from .sparsity_path import SparsityPath


@dataclass(frozen=True)
class L1TrainArtifacts:
    """Medians, dispersions, and the split-gain feature ranking.

    ``ranking`` orders split gain ascending (most negative first), ties by
    ascending feature index; a model for any k assembles in O(m).
    """

    median_pos: np.ndarray
    median_neg: np.ndarray
    pooled_median: np.ndarray
    dispersions: DispersionTriple
    ranking: np.ndarray
    feature_names: list[str] | None = None

    @property
    def n_features(self) -> int:
        return int(self.median_pos.shape[0])

    def model_at(self, k: int) -> CenterModel:
        """Optimal model at sparsity k: class medians on the k selected
        features, the pooled weighted median everywhere else."""
        m = self.n_features
        if not 0 <= k <= m:
            raise ValueError(f"k out of range: {k} (0..{m})")
        selected = np.sort(self.ranking[:k])
        theta_pos = self.pooled_median.copy()
        theta_neg = self.pooled_median.copy()
        theta_pos[selected] = self.median_pos[selected]
        theta_neg[selected] = self.median_neg[selected]
        return CenterModel(
            kind="l1",
            theta_pos=theta_pos,
            theta_neg=theta_neg,
            selected=selected,
            k=k,
            feature_names=self.feature_names,
        )


def train_artifacts_l1(d: Dataset) -> L1TrainArtifacts:
    stats = median_stats(d)
    return L1TrainArtifacts(
        median_pos=stats.median_pos,
        median_neg=stats.median_neg,
        pooled_median=stats.median_pooled,
        dispersions=stats.dispersions,
        ranking=np.argsort(stats.dispersions.split_gain, kind="stable"),
        feature_names=d.feature_names,
    )


def train_l1(d: Dataset, k: int) -> CenterModel:
    """Globally optimal L1 center model with at most k differing features."""
    return train_artifacts_l1(d).model_at(k)


def objective_l1(d: Dataset, theta_pos, theta_neg) -> float:
    """Class-balanced mean absolute distance of the samples to their center."""
    theta_pos = np.asarray(theta_pos, dtype=np.float64)
    theta_neg = np.asarray(theta_neg, dtype=np.float64)
    pos, neg = partition(d)
    pos_term = np.sum(np.abs(d.features[:, pos] - theta_pos[:, None])) / pos.size
    neg_term = np.sum(np.abs(d.features[:, neg] - theta_neg[:, None])) / neg.size
    return float(pos_term + neg_term)


def sparsity_path_l1(d: Dataset) -> SparsityPath:
    """Optimal objectives for every sparsity level from one ranking/sort.

    The optimum at sparsity k decomposes per feature: pooled dispersion on
    unselected features, class dispersions on selected ones, so the path is
    the pooled total plus the running sum of the ranked split gains.
    """
    art = train_artifacts_l1(d)
    disp = art.dispersions
    pooled_total = float(np.sum(disp.dispersion_pooled))
    gains = disp.split_gain[art.ranking]
    objectives = pooled_total + np.concatenate(([0.0], np.cumsum(gains)))
    return SparsityPath(
        kind="l1",
        ranking=art.ranking,
        objectives=objectives,
        feature_names=d.feature_names,
    )
