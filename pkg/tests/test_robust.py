"""Centers, weighted medians, dispersions, and the streaming mean update."""

import numpy as np
import pytest

import sparsecenters.robust as robust
from sparsecenters import (
    Dataset,
    InternalConsistencyError,
    class_centroids,
    class_medians,
    dispersion_triple,
    recursive_centroid_update,
    weighted_median,
)
from conftest import random_dataset


def scan_objective_minimum(z, w):
    """Independent oracle: scan every data point and midpoint of consecutive
    distinct points; the piecewise-linear objective attains its minimum on
    this candidate set."""
    z = np.asarray(z, dtype=float)
    w = np.asarray(w, dtype=float)
    points = np.unique(z)
    candidates = list(points) + [
        0.5 * (a + b) for a, b in zip(points[:-1], points[1:])
    ]
    return min(float(np.sum(w * np.abs(z - t))) for t in candidates)


def median_inequalities_hold(z, w, theta, slack=1e-12):
    """Both discrete-median conditions under the w/total probability mass."""
    z = np.asarray(z, dtype=float)
    w = np.asarray(w, dtype=float)
    total = w.sum()
    p_le = w[z <= theta].sum() / total
    p_ge = w[z >= theta].sum() / total
    return p_le >= 0.5 - slack and p_ge >= 0.5 - slack


class TestWeightedMedian:
    def test_middle_order_statistic(self):
        assert weighted_median([3.0, 1.0, 2.0], [1.0, 1.0, 1.0]) == (2.0, 2.0)

    def test_even_split_takes_the_midpoint(self):
        assert weighted_median([0.0, 10.0], [1.0, 1.0]) == (5.0, 10.0)

    def test_heavy_point_wins_outright(self):
        # cumulative weight at 0 is 3 > half of 4, so no midpoint
        assert weighted_median([0.0, 10.0], [3.0, 1.0]) == (0.0, 10.0)

    def test_dominant_weight_pulls_the_median(self):
        z, w = [1.0, 2.0, 3.0, 4.0], [1.0, 1.0, 1.0, 10.0]
        theta, disp = weighted_median(z, w)
        assert theta == 4.0
        assert disp == scan_objective_minimum(z, w)

    def test_repeated_values_accumulate_weight(self):
        # mass at 3 is exactly half the total, so the flat interval [3, 5]
        # applies and its midpoint is returned
        theta, disp = weighted_median([5.0, 5.0, 3.0], [1.0, 1.0, 2.0])
        assert theta == 4.0
        assert disp == scan_objective_minimum([5.0, 5.0, 3.0], [1.0, 1.0, 2.0])

    def test_zero_weight_points_are_ignored(self):
        theta, _ = weighted_median([0.0, 3.0, 10.0], [1.0, 0.0, 1.0])
        assert theta == 5.0
        filtered, _ = weighted_median([0.0, 10.0], [1.0, 1.0])
        assert theta == filtered

    def test_single_point(self):
        assert weighted_median([7.0], [0.25]) == (7.0, 0.0)

    @pytest.mark.parametrize(
        "z, w, message",
        [
            ([], [], "empty"),
            ([1.0, 2.0], [0.0, 0.0], "total weight"),
            ([1.0, 2.0], [1.0, -1.0], "nonnegative"),
            ([1.0, np.nan], [1.0, 1.0], "finite"),
            ([1.0, np.inf], [1.0, 1.0], "finite"),
            ([1.0, 2.0], [1.0], "equal length"),
        ],
    )
    def test_input_validation(self, z, w, message):
        with pytest.raises(ValueError, match=message):
            weighted_median(z, w)

    def test_minimality_and_median_conditions(self, rng):
        for _ in range(300):
            p = int(rng.integers(1, 9))
            if rng.random() < 0.5:
                z = rng.standard_normal(p)
            else:
                z = rng.integers(-2, 3, size=p).astype(float)
            w = rng.random(p) * np.where(rng.random(p) < 0.2, 0.0, 1.0)
            if w.sum() == 0:
                w[0] = 1.0
            theta, disp = weighted_median(z, w)
            assert disp <= scan_objective_minimum(z, w) + 1e-12
            assert median_inequalities_hold(z[w > 0], w[w > 0], theta)

    def test_uniform_weights_reduce_to_the_sample_median(self, rng):
        for _ in range(100):
            p = int(rng.integers(1, 12))
            z = rng.standard_normal(p)
            theta, _ = weighted_median(z, np.ones(p))
            assert theta == np.median(z)

    def test_translation_equivariance(self, rng):
        for _ in range(50):
            p = int(rng.integers(1, 9))
            z = rng.standard_normal(p)
            w = rng.random(p) + 0.1
            c = float(rng.standard_normal())
            theta, disp = weighted_median(z, w)
            theta_c, disp_c = weighted_median(z + c, w)
            np.testing.assert_allclose(theta_c, theta + c, rtol=1e-12, atol=1e-12)
            np.testing.assert_allclose(disp_c, disp, rtol=1e-9, atol=1e-12)

    def test_weight_rescaling_leaves_the_median_unchanged(self, rng):
        for _ in range(50):
            p = int(rng.integers(1, 9))
            z = rng.standard_normal(p)
            w = rng.random(p) + 0.1
            theta, disp = weighted_median(z, w)
            theta_s, disp_s = weighted_median(z, 7.5 * w)
            assert theta_s == theta
            np.testing.assert_allclose(disp_s, 7.5 * disp, rtol=1e-12)

    def test_permutation_invariance(self, rng):
        z = rng.standard_normal(7)
        w = rng.random(7)
        theta, disp = weighted_median(z, w)
        perm = rng.permutation(7)
        theta_p, disp_p = weighted_median(z[perm], w[perm])
        assert theta_p == theta
        np.testing.assert_allclose(disp_p, disp, rtol=1e-12)


class TestClassCenters:
    def test_centroids_of_the_axis_dataset(self, four_point):
        centers = class_centroids(four_point)
        assert centers.kind == "mean"
        np.testing.assert_array_equal(centers.center_pos, [2.0, 0.0])
        np.testing.assert_array_equal(centers.center_neg, [0.0, 3.0])

    def test_single_sample_classes_are_their_own_center(self):
        d = Dataset(np.array([[4.0, -1.0]]), np.array([1, -1]))
        centers = class_centroids(d)
        assert centers.center_pos[0] == 4.0
        assert centers.center_neg[0] == -1.0

    def test_identical_samples_share_the_center(self):
        d = Dataset(np.full((3, 4), 2.5), np.array([1, -1, 1, -1]))
        centers = class_centroids(d)
        np.testing.assert_array_equal(centers.center_pos, centers.center_neg)

    def test_class_medians_odd_and_even_counts(self):
        d = Dataset(
            np.array([[1.0, 2.0, 9.0, 0.0, 10.0]]),
            np.array([1, 1, 1, -1, -1]),
        )
        centers = class_medians(d)
        assert centers.kind == "median"
        assert centers.center_pos[0] == 2.0
        assert centers.center_neg[0] == 5.0

    def test_class_median_flat_interval(self):
        d = Dataset(
            np.array([[3.0, 3.0, 7.0, 7.0, 0.0]]),
            np.array([1, 1, 1, 1, -1]),
        )
        assert class_medians(d).center_pos[0] == 5.0

    def test_class_medians_match_numpy_median(self, rng):
        for _ in range(40):
            d = random_dataset(rng, int(rng.integers(1, 6)), int(rng.integers(2, 15)))
            centers = class_medians(d)
            pos = d.features[:, d.labels == 1]
            neg = d.features[:, d.labels == -1]
            np.testing.assert_array_equal(centers.center_pos, np.median(pos, axis=1))
            np.testing.assert_array_equal(centers.center_neg, np.median(neg, axis=1))


class TestDispersionTriple:
    def test_constant_feature_has_no_dispersion(self):
        d = Dataset(np.array([[3.0, 3.0, 3.0, 3.0]]), np.array([1, 1, -1, -1]))
        triple = dispersion_triple(d)
        assert triple.dispersion_pos[0] == 0.0
        assert triple.dispersion_neg[0] == 0.0
        assert triple.dispersion_pooled[0] == 0.0
        assert triple.split_gain[0] == 0.0

    def test_separated_classes_give_the_full_gain(self):
        # pooled weighted median of {0,0,10,10} with weight 1/2 each is 5,
        # so the pooled dispersion is 4 * (5/2) = 10 and the gain is -10
        d = Dataset(np.array([[0.0, 0.0, 10.0, 10.0]]), np.array([1, 1, -1, -1]))
        triple = dispersion_triple(d)
        assert triple.dispersion_pos[0] == 0.0
        assert triple.dispersion_neg[0] == 0.0
        assert triple.dispersion_pooled[0] == 10.0
        assert triple.split_gain[0] == -10.0

    def test_gain_is_never_positive(self, rng):
        for style in ("normal", "ties"):
            for _ in range(40):
                d = random_dataset(
                    rng, int(rng.integers(1, 8)), int(rng.integers(2, 16)), style
                )
                assert dispersion_triple(d).split_gain.max() <= 0.0

    def test_pooled_dispersion_matches_the_scalar_median(self, rng):
        d = random_dataset(rng, 4, 9)
        triple = dispersion_triple(d)
        w = np.where(d.labels == 1, 1.0 / d.n_pos, 1.0 / d.n_neg)
        for i in range(d.n_features):
            _, disp = weighted_median(d.features[i], w)
            np.testing.assert_allclose(triple.dispersion_pooled[i], disp, rtol=1e-12)

    def test_inconsistent_dispersions_are_reported(self, monkeypatch, rng):
        d = random_dataset(rng, 3, 8)

        real = robust.kernels.rowwise_weighted_median

        def inflated(values, weights):
            median, disp = real(values, weights)
            return median, disp + 1.0  # class calls run first; pooled breaks the bound

        monkeypatch.setattr(robust.kernels, "rowwise_weighted_median", inflated)
        with pytest.raises(InternalConsistencyError, match="split gain"):
            dispersion_triple(d)


class TestRecursiveCentroidUpdate:
    def test_first_observation_is_the_center(self):
        np.testing.assert_array_equal(
            recursive_centroid_update(None, 0, np.array([7.0, 7.0])), [7.0, 7.0]
        )

    def test_two_then_one_more(self):
        updated = recursive_centroid_update(np.array([2.0, 0.0]), 2, np.array([5.0, 3.0]))
        np.testing.assert_array_equal(updated, [3.0, 1.0])

    def test_negative_count_rejected(self):
        with pytest.raises(ValueError, match="nonnegative"):
            recursive_centroid_update(np.zeros(2), -1, np.zeros(2))

    def test_stream_matches_the_batch_mean(self, rng):
        samples = rng.standard_normal((100, 5))
        center = None
        for count, sample in enumerate(samples):
            center = recursive_centroid_update(center, count, sample)
        np.testing.assert_allclose(center, samples.mean(axis=0), atol=1e-10)

    def test_order_does_not_matter(self, rng):
        samples = rng.standard_normal((60, 3))
        centers = []
        for order in (np.arange(60), rng.permutation(60)):
            center = None
            for count, j in enumerate(order):
                center = recursive_centroid_update(center, count, samples[j])
            centers.append(center)
        np.testing.assert_allclose(centers[0], centers[1], atol=1e-10)
