"""Class centers and dispersion statistics: means, medians, weighted medians.

The weighted median here is the minimizer of sum_i w_i |z_i - t|.  With the
cumulative weight W(z) = sum of w_i over z_i <= z and total W, the median is
the smallest value where W reaches W/2; if it lands on W/2 exactly, the
minimizers form a flat interval and its midpoint is returned.  Equality with
W/2 is decided up to a 1e-12 relative tolerance (see kernels).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .dataset import Dataset, partition
from .errors import InternalConsistencyError

# Round-off allowance above the exact bound split_gain <= 0.  Positive gains
# inside (0, SPLIT_GAIN_TOL] are clamped to zero; anything larger means the
# dispersion bookkeeping is broken and is reported as an internal error.
SPLIT_GAIN_TOL = 1e-9


@dataclass(frozen=True)
class ClassCenters:
    """Per-class center vectors; kind records how they were computed."""

    center_pos: np.ndarray
    center_neg: np.ndarray
    kind: str  # "mean" or "median"


@dataclass(frozen=True)
class DispersionTriple:
    """Per-feature absolute deviations about class and pooled medians.

    ``split_gain = (dispersion_pos + dispersion_neg) - dispersion_pooled``
    is the objective change from giving the two classes separate centers on
    a feature; it is nonpositive up to round-off, and the most negative
    entries mark the most discriminative features.
    """

    dispersion_pos: np.ndarray
    dispersion_neg: np.ndarray
    dispersion_pooled: np.ndarray
    split_gain: np.ndarray


def class_centroids(d: Dataset) -> ClassCenters:
    """Per-class feature means (the minimizers of mean squared deviation)."""
    pos, neg = partition(d)
    return ClassCenters(
        center_pos=d.features[:, pos].mean(axis=1),
        center_neg=d.features[:, neg].mean(axis=1),
        kind="mean",
    )


def class_medians(d: Dataset) -> ClassCenters:
    """Per-class feature medians (minimizers of mean absolute deviation)."""
    stats = median_stats(d)
    return ClassCenters(
        center_pos=stats.median_pos, center_neg=stats.median_neg, kind="median"
    )


def weighted_median(z, w) -> tuple[float, float]:
    """Weighted median of ``z`` and the attained dispersion.

    Parameters
    ----------
    z : array-like of p finite reals, p >= 1.
    w : array-like of p nonnegative finite weights with positive sum.

    Returns
    -------
    (median, dispersion) where dispersion = sum_i w[i] * |z[i] - median|.
    Repeated values accumulate their weight; zero-weight points are treated
    as absent when locating the median and the flat-interval endpoint.
    """
    z = np.asarray(z, dtype=np.float64)
    w = np.asarray(w, dtype=np.float64)
    if z.ndim != 1 or w.ndim != 1 or z.shape != w.shape:
        raise ValueError("z and w must be vectors of equal length")
    if z.size == 0:
        raise ValueError("weighted median of an empty vector")
    if not np.all(np.isfinite(z)) or not np.all(np.isfinite(w)):
        raise ValueError("weighted median requires finite values and weights")
    if np.any(w < 0.0):
        raise ValueError("weights must be nonnegative")
    if not np.sum(w) > 0.0:
        raise ValueError("total weight must be positive")
    median, dispersion = kernels.rowwise_weighted_median(z[None, :], w)
    return float(median[0]), float(dispersion[0])


@dataclass(frozen=True)
class MedianStats:
    """Class medians, pooled weighted median, and their dispersion triple."""

    median_pos: np.ndarray
    median_neg: np.ndarray
    median_pooled: np.ndarray
    dispersions: DispersionTriple


def median_stats(d: Dataset) -> MedianStats:
    """All median-based per-feature statistics of a dataset in one pass.

    The pooled median weighs every positive sample by 1/n_pos and every
    negative sample by 1/n_neg, so both classes contribute equal mass.
    """
    pos, neg = partition(d)
    median_pos, disp_pos = kernels.rowwise_weighted_median(
        d.features[:, pos], np.full(pos.size, 1.0 / pos.size)
    )
    median_neg, disp_neg = kernels.rowwise_weighted_median(
        d.features[:, neg], np.full(neg.size, 1.0 / neg.size)
    )
    pooled_w = np.where(d.labels == 1, 1.0 / pos.size, 1.0 / neg.size)
    median_pooled, disp_pooled = kernels.rowwise_weighted_median(
        d.features, pooled_w
    )

    gain = (disp_pos + disp_neg) - disp_pooled
    worst = float(gain.max()) if gain.size else 0.0
    if worst > SPLIT_GAIN_TOL:
        raise InternalConsistencyError(
            f"split gain {worst:g} exceeds {SPLIT_GAIN_TOL:g}; "
            "per-class dispersions cannot exceed the pooled dispersion"
        )
    np.clip(gain, None, 0.0, out=gain)

    triple = DispersionTriple(
        dispersion_pos=disp_pos,
        dispersion_neg=disp_neg,
        dispersion_pooled=disp_pooled,
        split_gain=gain,
    )
    return MedianStats(median_pos, median_neg, median_pooled, triple)


def dispersion_triple(d: Dataset) -> DispersionTriple:
    """Per-feature class and pooled median dispersions plus the split gain."""
    return median_stats(d).dispersions


def recursive_centroid_update(center, count: int, new_sample) -> np.ndarray:
    """Mean of count+1 samples from the mean of the first ``count``.

    O(m) per call; with count = 0 the center argument is ignored.
    """
    new_sample = np.asarray(new_sample, dtype=np.float64)
    if count < 0:
        raise ValueError("count must be nonnegative")
    if count == 0:
        return new_sample.copy()
    center = np.asarray(center, dtype=np.float64)
    return (count / (count + 1.0)) * center + (1.0 / (count + 1.0)) * new_sample
