"""Brute-force oracle: enumeration, guards, numeric minimizer cross-check."""

from itertools import combinations

import numpy as np
import pytest
from scipy.optimize import minimize_scalar

from sparsecenters import (
    brute_force,
    objective_l1,
    objective_l2,
    train_l1,
    train_l2,
)
from sparsecenters.oracle import MAX_ORACLE_FEATURES, objectives_close
from conftest import random_dataset


def numeric_per_set_optimum(d, subset, kind):
    """Second independent route: minimize each decoupled 1-D coordinate
    problem numerically instead of using any closed form."""
    lo = float(d.features.min()) - 1.0
    hi = float(d.features.max()) + 1.0
    pos = d.features[:, d.labels == 1]
    neg = d.features[:, d.labels == -1]
    if kind == "l2":
        dev = lambda block, t: np.mean((block - t) ** 2)
    else:
        dev = lambda block, t: np.mean(np.abs(block - t))

    def minimize_1d(fn):
        res = minimize_scalar(fn, bounds=(lo, hi), method="bounded",
                              options={"xatol": 1e-10})
        return float(res.fun)

    total = 0.0
    for i in range(d.n_features):
        if i in subset:
            total += minimize_1d(lambda t: dev(pos[i], t))
            total += minimize_1d(lambda t: dev(neg[i], t))
        else:
            total += minimize_1d(lambda t: dev(pos[i], t) + dev(neg[i], t))
    return total


class TestBruteForce:
    def test_worked_example(self, four_point):
        result = brute_force(four_point, 1, "l2")
        assert result.best_sets == [(1,)]
        assert result.best_objective == 4.0
        assert set(result.per_set_objectives) == {(0,), (1,)}
        assert result.per_set_objectives[(0,)] == pytest.approx(6.5)

    def test_k_edges_have_a_single_set(self, four_point):
        low = brute_force(four_point, 0, "l2")
        assert list(low.per_set_objectives) == [()]
        high = brute_force(four_point, 2, "l2")
        assert list(high.per_set_objectives) == [(0, 1)]
        model = train_l2(four_point, 2)
        assert high.best_objective == pytest.approx(
            objective_l2(four_point, model.theta_pos, model.theta_neg)
        )

    def test_feature_guard(self, rng):
        d = random_dataset(rng, MAX_ORACLE_FEATURES + 1, 6)
        with pytest.raises(ValueError, match="at most 16"):
            brute_force(d, 1, "l2")

    def test_k_and_kind_validation(self, four_point):
        with pytest.raises(ValueError, match="k out of range"):
            brute_force(four_point, 5, "l2")
        with pytest.raises(ValueError, match="unknown kind"):
            brute_force(four_point, 1, "linf")

    def test_ties_are_collected(self):
        from sparsecenters import Dataset

        d = Dataset(
            np.array([[0.0, 0.0, 4.0, 4.0], [0.0, 0.0, 4.0, 4.0]]),
            np.array([1, 1, -1, -1]),
        )
        result = brute_force(d, 1, "l2")
        assert result.best_sets == [(0,), (1,)]


class TestClosedFormCrossCheck:
    """Guard against one wrong closed form hiding on both comparison sides:
    every per-set optimum is re-derived by bounded 1-D numeric minimization."""

    @pytest.mark.parametrize("kind", ["l2", "l1"])
    def test_numeric_minimizer_agrees(self, kind, rng):
        for _ in range(3):
            m = int(rng.integers(2, 5))
            d = random_dataset(rng, m, int(rng.integers(4, 9)))
            k = int(rng.integers(0, m + 1))
            result = brute_force(d, k, kind)
            for subset in combinations(range(m), k):
                numeric = numeric_per_set_optimum(d, set(subset), kind)
                assert result.per_set_objectives[subset] == pytest.approx(
                    numeric, abs=1e-6
                )


class TestTrainerAgreement:
    @pytest.mark.parametrize("kind", ["l2", "l1"])
    def test_fast_trainer_is_never_beaten(self, kind, rng):
        train = train_l2 if kind == "l2" else train_l1
        objective = objective_l2 if kind == "l2" else objective_l1
        for _ in range(8):
            m = int(rng.integers(2, 6))
            d = random_dataset(rng, m, int(rng.integers(4, 12)),
                               "ties" if rng.random() < 0.5 else "normal")
            for k in range(m + 1):
                model = train(d, k)
                value = objective(d, model.theta_pos, model.theta_neg)
                result = brute_force(d, k, kind)
                assert objectives_close(value, result.best_objective)
                assert (
                    tuple(model.selected.tolist()) in result.best_sets
                    or objectives_close(
                        result.per_set_objectives[tuple(model.selected.tolist())],
                        result.best_objective,
                    )
                )
