"""Per-sparsity-level training objectives along one global feature ranking."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from ._util import fmt_real


@dataclass(frozen=True)
class SparsityPath:
    """Optimal training objectives for every sparsity level k = 0..m.

    All levels share a single feature ranking, so the selected sets are
    nested: the k-feature set is the first k entries of ``ranking``.
    Models are not stored; they are rebuilt in O(m) from the trainer
    artifacts for any k of interest.
    """

    kind: str  # "l1" or "l2"
    ranking: np.ndarray
    objectives: np.ndarray  # length m + 1, entry k is the optimum at sparsity k
    feature_names: list[str] | None = None

    def __post_init__(self):
        if self.objectives.shape[0] != self.ranking.shape[0] + 1:
            raise ValueError("need one objective per sparsity level 0..m")

    @property
    def n_features(self) -> int:
        return int(self.ranking.shape[0])

    def selected(self, k: int) -> np.ndarray:
        """Sorted indices of the k features selected at sparsity k."""
        if not 0 <= k <= self.n_features:
            raise ValueError(f"k out of range: {k} (0..{self.n_features})")
        return np.sort(self.ranking[:k])

    def rows(self) -> Iterator[tuple[int, float, int | None]]:
        """Yield (k, objective, feature index added at k), None at k = 0."""
        yield 0, float(self.objectives[0]), None
        for k in range(1, self.n_features + 1):
            yield k, float(self.objectives[k]), int(self.ranking[k - 1])


def write_path_csv(path: SparsityPath, fh) -> None:
    """Write the path as CSV: k, objective, newly_added_feature."""
    names = path.feature_names or [f"f{i}" for i in range(path.n_features)]
    fh.write("k,objective,newly_added_feature\n")
    for k, objective, added in path.rows():
        name = "" if added is None else names[added]
        fh.write(f"{k},{fmt_real(objective)},{name}\n")
