from __future__ import absolute_import, division, print_function, unicode_literals

import math
import unittest

import numpy as np
import pytest

from prevkit.core import estimators
from prevkit.core.errors import InvalidParameter
from prevkit.core.estimators import PERFECT_TEST
from prevkit.core.estimators import SampleSummary
from prevkit.core.estimators import TestKit

GOOD_KIT = TestKit(0.9, 0.95)
WEAK_KIT = TestKit(0.8, 0.85)


class TestKitValidationTestCase(unittest.TestCase):

    def test_youden(self):
        self.assertAlmostEqual(GOOD_KIT.youden, 0.85, places=12)

    def test_uninformative_kit_rejected(self):
        with self.assertRaises(InvalidParameter):
            TestKit(0.5, 0.5)
        with self.assertRaises(InvalidParameter):
            TestKit(0.3, 0.6)

    def test_probability_out_of_range_rejected(self):
        with self.assertRaises(InvalidParameter):
            TestKit(1.5, 0.9)
        with self.assertRaises(InvalidParameter):
            TestKit(0.9, -0.1)

    def test_invalid_parameter_is_value_error(self):
        with self.assertRaises(ValueError):
            TestKit(0.2, 0.2)

    def test_perfect(self):
        self.assertTrue(PERFECT_TEST.is_perfect)
        self.assertFalse(GOOD_KIT.is_perfect)


class SampleSummaryTestCase(unittest.TestCase):

    def test_valid(self):
        s = SampleSummary(100, 10, 3)
        self.assertEqual((s.population_size, s.sample_size, s.positives), (100, 10, 3))

    def test_sample_of_one_rejected(self):
        with self.assertRaises(InvalidParameter):
            SampleSummary(100, 1, 0)

    def test_sample_larger_than_population_rejected(self):
        with self.assertRaises(InvalidParameter):
            SampleSummary(10, 11, 0)

    def test_too_many_positives_rejected(self):
        with self.assertRaises(InvalidParameter):
            SampleSummary(100, 10, 11)

    def test_non_integer_counts_rejected(self):
        with self.assertRaises(InvalidParameter):
            SampleSummary(100.5, 10, 1)
        with self.assertRaises(InvalidParameter):
            SampleSummary(100, True, 1)

    def test_numpy_integers_accepted(self):
        s = SampleSummary(np.int64(100), np.int32(10), np.int64(2))
        self.assertEqual(s.positives, 2)


@pytest.mark.parametrize("n, positives, expected", [
    (100, 30, 0.30),
    (50, 0, 0.0),
    (3, 2, 2.0 / 3.0),
])
def test_positivity_rate(n, positives, expected):
    assert estimators.positivity_rate(SampleSummary(1000, n, positives)) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("n, N, expected", [
    (100, 100, 0.0),
    (10, 100, 1.0),
    (100, 2000, 100 * 1900 / (2000 * 99)),
])
def test_fpc_factor(n, N, expected):
    assert estimators.fpc_factor(n, N) == pytest.approx(expected, abs=1e-12)


def test_fpc_factor_below_one_exactly_when_n_squared_exceeds_N():
    for N in range(2, 120):
        for n in range(2, N + 1):
            factor = estimators.fpc_factor(n, N)
            assert (factor < 1.0) == (n * n > N), (n, N)
            assert factor >= 0.0


@pytest.mark.parametrize("pi_hat, n, expected", [
    (0.5, 100, 0.0025),
    (0.0, 50, 0.0),
    (0.3, 30, 0.007),
])
def test_var_naive(pi_hat, n, expected):
    assert estimators.var_naive(pi_hat, n) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("pi_hat, n, N, expected", [
    (0.5, 100, 100, 0.0),
    (0.3, 10, 100, 0.021),
    (0.2, 100, 2000, 100 * 1900 / (2000 * 99) * 0.0016),
])
def test_var_fpc(pi_hat, n, N, expected):
    assert estimators.var_fpc(pi_hat, n, N) == pytest.approx(expected, abs=1e-12)


class RoganGladenTestCase(unittest.TestCase):

    def test_interior(self):
        raw, thresholded = estimators.rogan_gladen(0.3, GOOD_KIT)
        self.assertAlmostEqual(raw, 0.25 / 0.85, places=12)
        self.assertEqual(raw, thresholded)

    def test_lower_threshold(self):
        raw, thresholded = estimators.rogan_gladen(0.02, GOOD_KIT)
        self.assertAlmostEqual(raw, -0.03 / 0.85, places=12)
        self.assertEqual(thresholded, 0.0)

    def test_upper_threshold(self):
        raw, thresholded = estimators.rogan_gladen(0.95, GOOD_KIT)
        self.assertGreater(raw, 1.0)
        self.assertEqual(thresholded, 1.0)

    def test_perfect_test_identity(self):
        for k in range(0, 101):
            pi_hat = k / 100
            raw, thresholded = estimators.rogan_gladen(pi_hat, PERFECT_TEST)
            self.assertEqual(raw, pi_hat)
            self.assertEqual(thresholded, pi_hat)

    def test_perfect_test_identity_vectorized(self):
        pi_hat = np.arange(0, 1001) / 1000
        raw, thresholded = estimators.rogan_gladen(pi_hat, PERFECT_TEST)
        np.testing.assert_array_equal(raw, pi_hat)
        np.testing.assert_array_equal(thresholded, pi_hat)

    def test_threshold_soundness(self):
        for kit in (GOOD_KIT, WEAK_KIT):
            for pi_hat in np.linspace(0.0, 1.0, 201):
                raw, thresholded = estimators.rogan_gladen(pi_hat, kit)
                self.assertTrue(0.0 <= thresholded <= 1.0)
                if 1.0 - kit.specificity < pi_hat < kit.sensitivity:
                    self.assertEqual(raw, thresholded)

    def test_vectorized(self):
        raw, thresholded = estimators.rogan_gladen(np.array([0.02, 0.3, 0.95]), GOOD_KIT)
        np.testing.assert_allclose(thresholded, [0.0, 0.25 / 0.85, 1.0], atol=1e-12)
        self.assertEqual(raw.shape, (3,))


@pytest.mark.parametrize("pi_c_hat, kit, N, expected", [
    (0.4, PERFECT_TEST, 50, 0.0),
    (0.5, WEAK_KIT, 100, 0.0014375),
    (0.2, GOOD_KIT, 1000, 0.000056),
])
def test_misclass_extra_variance(pi_c_hat, kit, N, expected):
    assert estimators.misclass_extra_variance(pi_c_hat, kit, N) == pytest.approx(expected, abs=1e-12)


def test_extra_variance_halves_when_population_doubles():
    for N in (50, 100, 777):
        single = estimators.misclass_extra_variance(0.3, WEAK_KIT, N)
        double = estimators.misclass_extra_variance(0.3, WEAK_KIT, 2 * N)
        assert double == pytest.approx(single / 2.0, abs=1e-15)


def test_extra_variance_rejects_negative_prevalence():
    with pytest.raises(InvalidParameter):
        estimators.misclass_extra_variance(-0.1, GOOD_KIT, 100)


class VarTotalTestCase(unittest.TestCase):

    def test_perfect_test_v3_equals_v2(self):
        s = SampleSummary(200, 40, 12)
        bundle = estimators.var_total(0.3, 0.3, s, PERFECT_TEST)
        self.assertEqual(bundle.extra_term, 0.0)
        self.assertEqual(bundle.v3, bundle.v2)

    def test_census_keeps_misclassification_variance(self):
        s = SampleSummary(100, 100, 40)
        pi_hat = 0.4
        _, pi_c_hat = estimators.rogan_gladen(pi_hat, WEAK_KIT)
        bundle = estimators.var_total(pi_hat, pi_c_hat, s, WEAK_KIT)
        self.assertEqual(bundle.v2, 0.0)
        self.assertGreater(bundle.v3, 0.0)
        self.assertAlmostEqual(bundle.v3, bundle.extra_term, places=15)

    def test_composition(self):
        s = SampleSummary(2000, 100, 20)
        _, pi_c_hat = estimators.rogan_gladen(0.2, GOOD_KIT)
        bundle = estimators.var_total(0.2, pi_c_hat, s, GOOD_KIT)
        expected_extra = (pi_c_hat * 0.09 + (1.0 - pi_c_hat) * 0.0475) / 2000
        self.assertAlmostEqual(bundle.v2, 100 * 1900 / (2000 * 99) * 0.0016, places=12)
        self.assertAlmostEqual(bundle.v3, bundle.v2 + expected_extra, places=12)
        self.assertAlmostEqual(bundle.v1, 0.0016, places=12)

    def test_variance_ordering(self):
        for N in (20, 100, 500):
            for n in (2, 10, N):
                for positives in range(0, n + 1, max(1, n // 5)):
                    s = SampleSummary(N, n, positives)
                    est = estimators.estimate(s, WEAK_KIT)
                    self.assertLessEqual(est.variances.v2, est.variances.v3)


@pytest.mark.parametrize("variance, kit, expected", [
    (0.0025, PERFECT_TEST, 0.0025),
    (0.0025, GOOD_KIT, 0.0025 / 0.7225),
    (0.0, WEAK_KIT, 0.0),
])
def test_var_corrected(variance, kit, expected):
    assert estimators.var_corrected(variance, kit) == pytest.approx(expected, abs=1e-12)


class EstimateTestCase(unittest.TestCase):

    def test_perfect_test_collapse(self):
        est = estimators.estimate(SampleSummary(100, 50, 15), PERFECT_TEST)
        self.assertAlmostEqual(est.pi_hat, 0.3, places=12)
        self.assertAlmostEqual(est.pi_c_hat, 0.3, places=12)
        self.assertEqual(est.variances.extra_term, 0.0)
        self.assertAlmostEqual(est.se_pi_c, math.sqrt(est.variances.v2), places=15)

    def test_perfect_census_is_exact_for_every_count(self):
        for N in (100, 500, 1000):
            for k in range(N + 1):
                est = estimators.estimate(SampleSummary(N, N, k), PERFECT_TEST)
                self.assertEqual(est.pi_c_hat, est.pi_hat)
                self.assertEqual(est.pi_c_hat, k / N)
                self.assertEqual(est.se_pi_c, 0.0)

    def test_hand_evaluated_example(self):
        est = estimators.estimate(SampleSummary(500, 150, 40), GOOD_KIT)
        self.assertAlmostEqual(est.pi_hat, 40 / 150, places=12)
        self.assertAlmostEqual(est.pi_c_hat, (40 / 150 - 0.05) / 0.85, places=12)
        self.assertAlmostEqual(est.pi_c_hat, 0.254901960784, places=10)
        self.assertAlmostEqual(est.se_pi_c, math.sqrt(est.variances.v3) / 0.85, places=15)
        self.assertAlmostEqual(est.se_mle, math.sqrt(est.variances.v1) / 0.85, places=15)
        self.assertAlmostEqual(est.se_fpc, math.sqrt(est.variances.v2) / 0.85, places=15)
        self.assertTrue(est.se_fpc <= est.se_pi_c)

    def test_zero_positives_threshold_path(self):
        est = estimators.estimate(SampleSummary(100, 10, 0), WEAK_KIT)
        self.assertEqual(est.pi_hat, 0.0)
        self.assertEqual(est.pi_c_hat, 0.0)
        self.assertLess(est.pi_c_raw, 0.0)
        self.assertEqual(est.variances.v1, 0.0)
        self.assertEqual(est.variances.v2, 0.0)
        # pi_c_hat = 0 leaves only the specificity part of the extra term
        self.assertAlmostEqual(est.variances.v3, 0.85 * 0.15 / 100, places=15)
        self.assertAlmostEqual(est.se_pi_c, math.sqrt(0.85 * 0.15 / 100) / 0.65, places=12)


class ConditionalMomentsTestCase(unittest.TestCase):

    def test_perfect_test(self):
        self.assertEqual(estimators.conditional_moments(10, 4, PERFECT_TEST), (4.0, 0.0))

    def test_values(self):
        mean, variance = estimators.conditional_moments(100, 30, GOOD_KIT)
        self.assertAlmostEqual(mean, 30 * 0.9 + 70 * 0.05, places=12)
        self.assertAlmostEqual(variance, 30 * 0.09 + 70 * 0.0475, places=12)

    def test_more_cases_than_units_rejected(self):
        with self.assertRaises(InvalidParameter):
            estimators.conditional_moments(10, 11, GOOD_KIT)


def test_positivity_from_prevalence():
    assert estimators.positivity_from_prevalence(0.2, GOOD_KIT) == pytest.approx(0.2 * 0.9 + 0.8 * 0.05, abs=1e-15)
    assert estimators.positivity_from_prevalence(0.0, PERFECT_TEST) == 0.0


def test_total_cases():
    est = estimators.estimate(SampleSummary(500, 150, 40), GOOD_KIT)
    cases, se = estimators.total_cases(est, 500)
    assert cases == pytest.approx(500 * est.pi_c_hat, abs=1e-9)
    assert se == pytest.approx(500 * est.se_pi_c, abs=1e-9)
