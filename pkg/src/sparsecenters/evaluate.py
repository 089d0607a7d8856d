"""Train/test splitting, accuracy metrics, and repeated-split evaluation.

Randomness comes from numpy's PCG64 generator seeded explicitly, so every
split and every report is reproducible from (data, parameters, seed).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from ._util import fmt_real
from .dataset import Dataset, partition
from .errors import DataError
from .model import discriminant_matrix, labels_from_scores
from .sparse_l1 import train_l1
from .sparse_l2 import train_l2


@dataclass(frozen=True)
class KStats:
    """Across-split statistics of one sparsity level."""

    k: int
    mean_accuracy: float
    sd_accuracy: float
    mean_balanced_accuracy: float
    mean_train_time_s: float


@dataclass(frozen=True)
class EvalReport:
    """Sparsity-accuracy curve: one KStats per requested sparsity level."""

    kind: str
    rows: tuple[KStats, ...]
    n_splits: int
    split_fraction: float
    seed: int


def _train_count(fraction: float, size: int) -> int:
    # Round half up so an 80% split of 5 samples takes exactly 4.
    return int(math.floor(fraction * size + 0.5))


def split(
    d: Dataset, fraction: float, seed, mode: str = "stratified"
) -> tuple[Dataset, Dataset]:
    """Random train/test split; ``fraction`` of the samples go to training.

    "stratified" (default) splits each class separately so small classes
    survive into the training set; "uniform" permutes all samples together.
    ``seed`` may be an int or a numpy Generator.  The split is deterministic
    given the seed and sorted back into original sample order.  Both folds
    are Datasets, so a class too small to land in each fold (its training
    share rounds to zero, or all its samples are needed for training) is an
    error rather than a silent single-class fold.
    """
    if not 0.0 < fraction < 1.0:
        raise ValueError(f"fraction must be in (0, 1), got {fraction}")
    rng = np.random.default_rng(seed)
    if mode == "stratified":
        train_parts = []
        test_parts = []
        for name, idx in zip(("positive", "negative"), partition(d)):
            n_train = _train_count(fraction, idx.size)
            if n_train == 0:
                raise DataError(
                    f"class too small for the training split: {name}"
                )
            perm = rng.permutation(idx)
            train_parts.append(perm[:n_train])
            test_parts.append(perm[n_train:])
        train_idx = np.sort(np.concatenate(train_parts))
        test_idx = np.sort(np.concatenate(test_parts))
    elif mode == "uniform":
        perm = rng.permutation(d.n_samples)
        n_train = _train_count(fraction, d.n_samples)
        train_idx = np.sort(perm[:n_train])
        test_idx = np.sort(perm[n_train:])
        train_labels = d.labels[train_idx]
        if np.all(train_labels == 1) or np.all(train_labels == -1) or not train_idx.size:
            raise DataError("a class is missing from the training split")
    else:
        raise ValueError(f"unknown split mode {mode!r}")
    if test_idx.size == 0:
        raise DataError("test split is empty")
    test_labels = d.labels[test_idx]
    for name, cls in (("positive", 1), ("negative", -1)):
        if not np.any(test_labels == cls):
            raise DataError(f"class missing from the test split: {name}")
    train = Dataset(d.features[:, train_idx], d.labels[train_idx], d.feature_names)
    test = Dataset(d.features[:, test_idx], test_labels, d.feature_names)
    return train, test


def accuracy(true_labels, predicted) -> float:
    true_labels = np.asarray(true_labels)
    predicted = np.asarray(predicted)
    return float(np.mean(predicted == true_labels))


def balanced_accuracy(true_labels, predicted) -> float:
    """Mean of per-class recalls over the classes present in the truth."""
    true_labels = np.asarray(true_labels)
    predicted = np.asarray(predicted)
    recalls = []
    for cls in (1, -1):
        mask = true_labels == cls
        if np.any(mask):
            recalls.append(float(np.mean(predicted[mask] == cls)))
    return float(np.mean(recalls))


def evaluate(
    d: Dataset,
    kind: str,
    k_list,
    n_splits: int,
    fraction: float,
    seed: int,
    split_mode: str = "stratified",
) -> EvalReport:
    """Repeated-split evaluation of the center classifier itself.

    For each of ``n_splits`` random splits, trains at every requested
    sparsity level on the training part and scores the held-out part;
    reports across-split mean/sd accuracy (sd with ddof=1, zero for a
    single split), mean balanced accuracy, and mean wall-clock time of the
    full training call.  Per-split seeds are spawned from one SeedSequence,
    and all aggregation runs in a fixed order.
    """
    if kind == "l2":
        train = train_l2
    elif kind == "l1":
        train = train_l1
    else:
        raise ValueError(f"unknown kind {kind!r} (expected 'l1' or 'l2')")
    k_list = [int(k) for k in k_list]
    for k in k_list:
        if not 0 <= k <= d.n_features:
            raise ValueError(f"k out of range: {k} (0..{d.n_features})")
    if n_splits < 1:
        raise ValueError("n_splits must be at least 1")

    acc = np.empty((len(k_list), n_splits))
    bal = np.empty((len(k_list), n_splits))
    train_time = np.empty((len(k_list), n_splits))
    children = np.random.SeedSequence(seed).spawn(n_splits)
    for s in range(n_splits):
        train_d, test_d = split(
            d, fraction, np.random.default_rng(children[s]), mode=split_mode
        )
        for i, k in enumerate(k_list):
            started = time.perf_counter()
            model = train(train_d, k)
            train_time[i, s] = time.perf_counter() - started
            predicted = labels_from_scores(
                discriminant_matrix(model, test_d.features)
            )
            acc[i, s] = accuracy(test_d.labels, predicted)
            bal[i, s] = balanced_accuracy(test_d.labels, predicted)

    rows = tuple(
        KStats(
            k=k,
            mean_accuracy=float(np.mean(acc[i])),
            sd_accuracy=float(np.std(acc[i], ddof=1)) if n_splits > 1 else 0.0,
            mean_balanced_accuracy=float(np.mean(bal[i])),
            mean_train_time_s=float(np.mean(train_time[i])),
        )
        for i, k in enumerate(k_list)
    )
    return EvalReport(
        kind=kind,
        rows=rows,
        n_splits=n_splits,
        split_fraction=fraction,
        seed=seed,
    )


def write_report_csv(report: EvalReport, fh) -> None:
    """Write the sparsity-accuracy curve as CSV."""
    fh.write("k,mean_acc,sd_acc,mean_bal_acc,mean_train_time_s\n")
    for row in report.rows:
        fh.write(
            f"{row.k},{fmt_real(row.mean_accuracy)},{fmt_real(row.sd_accuracy)},"
            f"{fmt_real(row.mean_balanced_accuracy)},"
            f"{fmt_real(row.mean_train_time_s)}\n"
        )
