from pathlib import Path

import numpy as np
import pytest

from sparsecenters import Dataset

DATA_DIR = Path(__file__).parent / "data"
FOUR_POINT_CSV = DATA_DIR / "four_point.csv"


def random_dataset(rng, m, n, style="normal", even_classes=False) -> Dataset:
    """Random dataset with both classes guaranteed nonempty.

    style "normal" draws i.i.d. standard normals; "ties" draws from a small
    value grid and duplicates a feature row and a sample column, the
    adversarial case for median/tie handling.  ``even_classes`` gives both
    classes an even sample count (requires even n >= 4).
    """
    if style == "normal":
        X = rng.standard_normal((m, n))
    elif style == "ties":
        X = rng.integers(-2, 3, size=(m, n)).astype(np.float64) * 0.5
        if m >= 2:
            X[m - 1] = X[0]
        if n >= 2:
            X[:, n - 1] = X[:, 0]
    else:
        raise ValueError(style)
    if even_classes:
        if n < 4 or n % 2:
            raise ValueError("even classes need an even n >= 4")
        n_pos = 2 * int(rng.integers(1, n // 2))
        labels = np.full(n, -1, dtype=np.int64)
        labels[rng.permutation(n)[:n_pos]] = 1
    else:
        labels = np.where(rng.random(n) < 0.5, 1, -1).astype(np.int64)
        labels[0] = 1
        labels[1] = -1
    return Dataset(X, labels)


@pytest.fixture
def four_point() -> Dataset:
    """Two positive samples on one axis, two negative on the other."""
    return Dataset(
        np.array([[1.0, 3.0, 0.0, 0.0], [0.0, 0.0, 2.0, 4.0]]),
        np.array([1, 1, -1, -1]),
        ["f1", "f2"],
    )


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
