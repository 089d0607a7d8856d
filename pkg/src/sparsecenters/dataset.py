"""In-memory data model, CSV ingestion, and per-feature standardization.

The feature matrix is oriented features x samples: row i holds feature i
across all n samples.  Labels are +1/-1 and both classes must be nonempty.
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass

import numpy as np

from ._util import fmt_real
from .errors import DataError


@dataclass(frozen=True)
class Dataset:
    """Binary-labeled data: (m, n) feature matrix plus n labels in {-1, +1}.

    Instances are immutable after construction (the arrays are frozen) and
    safe for concurrent reads.
    """

    features: np.ndarray
    labels: np.ndarray
    feature_names: list[str] | None = None

    def __post_init__(self):
        features = np.asarray(self.features, dtype=np.float64)
        labels = np.asarray(self.labels, dtype=np.int64)
        if features.ndim != 2:
            raise ValueError("features must be a 2-D matrix (features x samples)")
        if labels.ndim != 1 or features.shape[1] != labels.shape[0]:
            raise ValueError(
                f"label count {labels.shape} does not match "
                f"sample count {features.shape[1]}"
            )
        if labels.size and not np.all((labels == 1) | (labels == -1)):
            raise ValueError("every label must be exactly -1 or +1")
        if np.count_nonzero(labels == 1) == 0:
            raise ValueError("class empty: positive")
        if np.count_nonzero(labels == -1) == 0:
            raise ValueError("class empty: negative")
        if not np.all(np.isfinite(features)):
            raise ValueError("all feature values must be finite")
        if self.feature_names is not None:
            names = list(self.feature_names)
            if len(names) != features.shape[0]:
                raise ValueError(
                    f"{len(names)} feature names for {features.shape[0]} features"
                )
            object.__setattr__(self, "feature_names", names)
        features = features.copy() if features is self.features else features
        labels = labels.copy() if labels is self.labels else labels
        features.setflags(write=False)
        labels.setflags(write=False)
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "labels", labels)

    @property
    def n_features(self) -> int:
        return self.features.shape[0]

    @property
    def n_samples(self) -> int:
        return self.features.shape[1]

    @property
    def n_pos(self) -> int:
        return int(np.count_nonzero(self.labels == 1))

    @property
    def n_neg(self) -> int:
        return int(np.count_nonzero(self.labels == -1))


@dataclass(frozen=True)
class FeatureScale:
    """Per-feature positive scale; standardized value is raw / sigma."""

    sigma: np.ndarray

    def __post_init__(self):
        sigma = np.asarray(self.sigma, dtype=np.float64)
        if sigma.ndim != 1:
            raise ValueError("scale must be a vector")
        if not np.all(np.isfinite(sigma)) or np.any(sigma <= 0.0):
            raise ValueError("every scale entry must be finite and > 0")
        sigma = sigma.copy() if sigma is self.sigma else sigma
        sigma.setflags(write=False)
        object.__setattr__(self, "sigma", sigma)


def partition(d: Dataset) -> tuple[np.ndarray, np.ndarray]:
    """Ascending sample indices of the positive and the negative class."""
    return np.flatnonzero(d.labels == 1), np.flatnonzero(d.labels == -1)


def load_csv(
    path,
    label_column: str = "label",
    positive_label: str = "1",
    negative_label: str = "-1",
) -> Dataset:
    """Read a header-first CSV (one sample per row) into a Dataset.

    The label column is matched by name and its raw values must equal
    ``positive_label`` or ``negative_label`` exactly; no other mapping is
    inferred.  All remaining cells must parse as finite reals.  Row numbers
    in error messages count the header as row 1.
    """
    try:
        fh = open(path, "r", encoding="utf-8", newline="")
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    with fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError(f"{path}: empty file, expected a header row") from None
        hits = [i for i, name in enumerate(header) if name == label_column]
        if not hits:
            raise DataError(f"{path}: label column {label_column!r} not found")
        if len(hits) > 1:
            raise DataError(
                f"{path}: label column {label_column!r} appears more than once"
            )
        label_idx = hits[0]
        feature_names = [h for i, h in enumerate(header) if i != label_idx]

        rows: list[list[float]] = []
        labels: list[int] = []
        for row_num, cells in enumerate(reader, start=2):
            if len(cells) != len(header):
                raise DataError(
                    f"{path}: row {row_num} has {len(cells)} cells, "
                    f"expected {len(header)}"
                )
            raw_label = cells[label_idx]
            if raw_label == positive_label:
                labels.append(1)
            elif raw_label == negative_label:
                labels.append(-1)
            else:
                raise DataError(
                    f"{path}: row {row_num}: unknown label {raw_label!r} "
                    f"(expected {positive_label!r} or {negative_label!r})"
                )
            values = []
            for col, cell in ((i, c) for i, c in enumerate(cells) if i != label_idx):
                try:
                    value = float(cell)
                except ValueError:
                    raise DataError(
                        f"{path}: row {row_num}, column {header[col]!r}: "
                        f"cannot parse {cell!r} as a real number"
                    ) from None
                if not math.isfinite(value):
                    raise DataError(
                        f"{path}: row {row_num}, column {header[col]!r}: "
                        f"value {cell!r} is not finite"
                    )
                values.append(value)
            rows.append(values)

    features = np.array(rows, dtype=np.float64).reshape(len(rows), len(feature_names))
    try:
        return Dataset(features.T, np.array(labels, dtype=np.int64), feature_names)
    except ValueError as exc:
        raise DataError(f"{path}: {exc}") from exc


def write_csv(
    d: Dataset,
    path,
    label_column: str = "label",
    positive_label: str = "1",
    negative_label: str = "-1",
) -> None:
    """Write a Dataset back to CSV; reals carry 17 significant digits."""
    names = d.feature_names or [f"f{i}" for i in range(d.n_features)]
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(list(names) + [label_column])
        for j in range(d.n_samples):
            row = [fmt_real(v) for v in d.features[:, j]]
            row.append(positive_label if d.labels[j] == 1 else negative_label)
            writer.writerow(row)


def standardize(d: Dataset, mode: str = "sd", ddof: int = 1) -> tuple[Dataset, FeatureScale]:
    """Divide each feature row by its spread, returning data and scale.

    ``mode`` selects the spread: "sd" (sample standard deviation) or
    "variance".  ``ddof`` is the delta degrees of freedom of the estimator.
    Constant features get scale 1 (with a warning) instead of failing: they
    carry no class signal and are never selected anyway.
    """
    if mode not in ("sd", "variance"):
        raise ValueError(f"unknown scale mode {mode!r} (expected 'sd' or 'variance')")
    if d.n_samples <= ddof:
        raise ValueError(
            f"cannot standardize {d.n_samples} sample(s) with ddof={ddof}"
        )
    spread = np.var(d.features, axis=1, ddof=ddof)
    if mode == "sd":
        spread = np.sqrt(spread)
    constant = spread == 0.0
    if np.any(constant):
        idx = np.flatnonzero(constant)
        shown = ", ".join(str(i) for i in idx[:5])
        more = "..." if idx.size > 5 else ""
        warnings.warn(
            f"{idx.size} constant feature(s) (indices {shown}{more}); "
            "scale forced to 1",
            RuntimeWarning,
            stacklevel=2,
        )
        spread = np.where(constant, 1.0, spread)
    scale = FeatureScale(spread)
    scaled = Dataset(d.features / scale.sigma[:, None], d.labels, d.feature_names)
    return scaled, scale
