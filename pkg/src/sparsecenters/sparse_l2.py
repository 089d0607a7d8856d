"""Exact training of the sparse squared-distance (L2) center classifier.

The unconstrained centers are the class centroids.  Forcing the centers to
agree outside a set D moves both to the centroid midpoint there, and the
objective then improves with D exactly by half the squared centroid gap
summed over D.  The best k-feature set is therefore the k largest entries
of |centroid_pos - centroid_neg|, which one ranking provides for every k
at once.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import Dataset, partition
from .model import CenterModel
from .robust import class_centroids, recursive_centroid_update
from .sparsity_path import SparsityPath


@dataclass(frozen=True)
class L2TrainArtifacts:
    """Everything batch L2 training derives from the data.

    ``ranking`` orders features by decreasing |centroid_diff| with ties
    broken by ascending index; a model for any sparsity k is assembled from
    these vectors in O(m).
    """

    centroid_pos: np.ndarray
    centroid_neg: np.ndarray
    midpoint: np.ndarray
    centroid_diff: np.ndarray
    ranking: np.ndarray
    feature_names: list[str] | None = None

    @property
    def n_features(self) -> int:
        return int(self.centroid_pos.shape[0])

    def model_at(self, k: int) -> CenterModel:
        """Optimal model at sparsity k: class centroids on the k selected
        features, the shared midpoint everywhere else."""
        m = self.n_features
        if not 0 <= k <= m:
            raise ValueError(f"k out of range: {k} (0..{m})")
        selected = np.sort(self.ranking[:k])
        theta_pos = self.midpoint.copy()
        theta_neg = self.midpoint.copy()
        theta_pos[selected] = self.centroid_pos[selected]
        theta_neg[selected] = self.centroid_neg[selected]
        return CenterModel(
            kind="l2",
            theta_pos=theta_pos,
            theta_neg=theta_neg,
            selected=selected,
            k=k,
            feature_names=self.feature_names,
        )


def train_artifacts_l2(d: Dataset) -> L2TrainArtifacts:
    centers = class_centroids(d)
    diff = centers.center_pos - centers.center_neg
    return L2TrainArtifacts(
        centroid_pos=centers.center_pos,
        centroid_neg=centers.center_neg,
        midpoint=0.5 * (centers.center_pos + centers.center_neg),
        centroid_diff=diff,
        ranking=np.argsort(-np.abs(diff), kind="stable"),
        feature_names=d.feature_names,
    )


def train_l2(d: Dataset, k: int) -> CenterModel:
    """Globally optimal L2 center model with at most k differing features."""
    return train_artifacts_l2(d).model_at(k)


def objective_l2(d: Dataset, theta_pos, theta_neg) -> float:
    """Class-balanced mean squared distance of the samples to their center."""
    theta_pos = np.asarray(theta_pos, dtype=np.float64)
    theta_neg = np.asarray(theta_neg, dtype=np.float64)
    pos, neg = partition(d)
    pos_term = np.sum((d.features[:, pos] - theta_pos[:, None]) ** 2) / pos.size
    neg_term = np.sum((d.features[:, neg] - theta_neg[:, None]) ** 2) / neg.size
    return float(pos_term + neg_term)


def _objective_constant(d: Dataset, center_pos, center_neg) -> float:
    # Objective value with both centers at the centroid midpoint (the k = 0
    # optimum): per-class mean squared norms minus half the squared norm of
    # the centroid sum.
    pos, neg = partition(d)
    mean_sq = (
        np.sum(d.features[:, pos] ** 2) / pos.size
        + np.sum(d.features[:, neg] ** 2) / neg.size
    )
    s = center_pos + center_neg
    return float(mean_sq - 0.5 * np.dot(s, s))


def closed_form_optimum_l2(d: Dataset, selected) -> float:
    """Optimal objective when only ``selected`` features may differ.

    Equals objective_l2 at the per-set optimum (centroids on the set,
    midpoint elsewhere) without assembling the centers: the baseline
    constant minus half the squared centroid gap over the set.
    """
    selected = np.asarray(selected, dtype=np.intp)
    centers = class_centroids(d)
    diff = (centers.center_pos - centers.center_neg)[selected]
    constant = _objective_constant(d, centers.center_pos, centers.center_neg)
    return constant - 0.5 * float(np.dot(diff, diff))


def sparsity_path_l2(d: Dataset) -> SparsityPath:
    """Optimal objectives for every sparsity level from one ranking/sort."""
    art = train_artifacts_l2(d)
    gaps = art.centroid_diff[art.ranking] ** 2
    constant = _objective_constant(d, art.centroid_pos, art.centroid_neg)
    objectives = constant - 0.5 * np.concatenate(([0.0], np.cumsum(gaps)))
    return SparsityPath(
        kind="l2",
        ranking=art.ranking,
        objectives=objectives,
        feature_names=d.feature_names,
    )


class OnlineL2Trainer:
    """Streaming L2 trainer: O(m) state, O(m) per observation.

    Keeps only the running class centroids and counts; ``snapshot`` ranks
    the centroid gap and assembles the same model batch training would
    produce on the samples seen so far.  Not thread-safe for concurrent
    ``observe`` calls.
    """

    def __init__(self, feature_names: list[str] | None = None):
        self._mean_pos: np.ndarray | None = None
        self._mean_neg: np.ndarray | None = None
        self._count_pos = 0
        self._count_neg = 0
        self._n_features: int | None = None
        self._feature_names = feature_names

    @property
    def counts(self) -> tuple[int, int]:
        return self._count_pos, self._count_neg

    def observe(self, sample, label: int) -> None:
        sample = np.asarray(sample, dtype=np.float64)
        if sample.ndim != 1:
            raise ValueError("sample must be a vector")
        if self._n_features is None:
            self._n_features = sample.shape[0]
        elif sample.shape[0] != self._n_features:
            raise ValueError(
                f"dimension mismatch: sample has {sample.shape[0]} entries, "
                f"trainer expects {self._n_features}"
            )
        if not np.all(np.isfinite(sample)):
            raise ValueError("sample values must be finite")
        if label == 1:
            self._mean_pos = recursive_centroid_update(
                self._mean_pos, self._count_pos, sample
            )
            self._count_pos += 1
        elif label == -1:
            self._mean_neg = recursive_centroid_update(
                self._mean_neg, self._count_neg, sample
            )
            self._count_neg += 1
        else:
            raise ValueError(f"label must be -1 or +1, got {label!r}")

    def artifacts(self) -> L2TrainArtifacts:
        if self._count_pos == 0:
            raise ValueError("class empty: positive")
        if self._count_neg == 0:
            raise ValueError("class empty: negative")
        diff = self._mean_pos - self._mean_neg
        return L2TrainArtifacts(
            centroid_pos=self._mean_pos.copy(),
            centroid_neg=self._mean_neg.copy(),
            midpoint=0.5 * (self._mean_pos + self._mean_neg),
            centroid_diff=diff,
            ranking=np.argsort(-np.abs(diff), kind="stable"),
            feature_names=self._feature_names,
        )

    def snapshot(self, k: int) -> CenterModel:
        """Model over everything observed so far; needs both classes seen."""
        return self.artifacts().model_at(k)
