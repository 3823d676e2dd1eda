from __future__ import absolute_import, division, print_function, unicode_literals

import math
import unittest

import numpy as np
import pytest
from scipy import integrate
from scipy.stats import beta as scipy_beta

from prevkit.core import betadist
from prevkit.core.betadist import BetaParams
from prevkit.core.errors import InvalidParameter

ROUND_TRIP_SHAPES = [(0.5, 0.5), (3.5, 7.5), (40.5, 110.5), (500.0, 500.0)]

ROUND_TRIP_QS = sorted(set([1e-6, 1e-5, 1e-4, 1e-3, 0.01, 0.025, 0.05, 0.1, 0.2, 0.3, 0.5,
                            0.7, 0.8, 0.9, 0.95, 0.975, 0.99, 1 - 1e-3, 1 - 1e-4, 1 - 1e-5, 1 - 1e-6]))


def bisection_quantile(q, p, steps=200):
    """Independent oracle: plain bisection on the scipy CDF."""
    lo, hi = 0.0, 1.0
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        if scipy_beta.cdf(mid, p.alpha, p.beta) < q:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


class BetaParamsTestCase(unittest.TestCase):

    def test_nonpositive_shape_rejected(self):
        for shapes in [(0.0, 1.0), (1.0, -2.0), (float('nan'), 1.0), (float('inf'), 1.0)]:
            with self.assertRaises(InvalidParameter):
                BetaParams(*shapes)

    def test_bool_rejected(self):
        with self.assertRaises(InvalidParameter):
            BetaParams(True, 1.0)

    def test_jeffreys_posterior(self):
        self.assertEqual(betadist.jeffreys_posterior(3, 10), BetaParams(3.5, 7.5))


@pytest.mark.parametrize("shapes, expected", [
    ((1.0, 1.0), 0.0),
    ((0.5, 0.5), math.log(math.pi)),
    ((2.0, 3.0), math.log(1.0 / 12.0)),
])
def test_ln_beta(shapes, expected):
    assert betadist.ln_beta(BetaParams(*shapes)) == pytest.approx(expected, abs=1e-12)


class CdfTestCase(unittest.TestCase):

    def test_boundaries(self):
        p = BetaParams(2.0, 3.0)
        self.assertEqual(betadist.cdf(0.0, p), 0.0)
        self.assertEqual(betadist.cdf(1.0, p), 1.0)

    def test_symmetric_median(self):
        for a in (0.5, 1.0, 3.5, 40.5, 500.0):
            self.assertAlmostEqual(betadist.cdf(0.5, BetaParams(a, a)), 0.5, places=12)

    def test_polynomial_closed_form(self):
        x = 0.3
        expected = 6 * x ** 2 - 8 * x ** 3 + 3 * x ** 4
        self.assertAlmostEqual(betadist.cdf(x, BetaParams(2.0, 3.0)), expected, places=12)
        self.assertAlmostEqual(expected, 0.3483, places=12)

    def test_against_scipy(self):
        for a, b in ROUND_TRIP_SHAPES:
            p = BetaParams(a, b)
            for x in np.linspace(0.001, 0.999, 37):
                self.assertAlmostEqual(betadist.cdf(x, p), scipy_beta.cdf(x, a, b), places=11)

    def test_x_outside_unit_interval_rejected(self):
        with self.assertRaises(InvalidParameter):
            betadist.cdf(1.2, BetaParams(1.0, 1.0))

    def test_monotone(self):
        p = BetaParams(3.5, 7.5)
        values = [betadist.cdf(x, p) for x in np.linspace(0.0, 1.0, 101)]
        self.assertTrue(all(b >= a for a, b in zip(values, values[1:])))


class PdfTestCase(unittest.TestCase):

    def test_against_scipy(self):
        for a, b in ROUND_TRIP_SHAPES[:3]:
            for x in (0.01, 0.2, 0.5, 0.8):
                self.assertAlmostEqual(
                    betadist.pdf(x, BetaParams(a, b)) / scipy_beta.pdf(x, a, b), 1.0, places=10)

    def test_endpoints(self):
        self.assertEqual(betadist.pdf(0.0, BetaParams(0.5, 0.5)), math.inf)
        self.assertEqual(betadist.pdf(1.0, BetaParams(3.0, 2.0)), 0.0)
        self.assertAlmostEqual(betadist.pdf(0.0, BetaParams(1.0, 1.0)), 1.0, places=12)

    def test_mean_recovery(self):
        for a, b in [(1.0, 1.0), (2.0, 3.0), (3.5, 7.5), (40.5, 110.5)]:
            p = BetaParams(a, b)
            mean, _ = integrate.quad(lambda x: x * betadist.pdf(x, p), 0.0, 1.0, epsabs=1e-12, epsrel=1e-12, limit=200)
            self.assertAlmostEqual(mean, p.mean, delta=1e-8)


class QuantileTestCase(unittest.TestCase):

    def test_boundaries(self):
        p = BetaParams(3.5, 7.5)
        self.assertEqual(betadist.quantile(0.0, p), 0.0)
        self.assertEqual(betadist.quantile(1.0, p), 1.0)

    def test_symmetric_median(self):
        self.assertAlmostEqual(betadist.quantile(0.5, BetaParams(0.5, 0.5)), 0.5, places=10)

    def test_uniform_identity(self):
        for q in (0.1, 0.25, 0.9):
            self.assertAlmostEqual(betadist.quantile(q, BetaParams(1.0, 1.0)), q, places=10)

    def test_bisection_oracle(self):
        p = BetaParams(30.5, 70.5)
        self.assertAlmostEqual(betadist.quantile(0.975, p), bisection_quantile(0.975, p), delta=1e-10)

    def test_q_outside_unit_interval_rejected(self):
        with self.assertRaises(InvalidParameter):
            betadist.quantile(-0.01, BetaParams(1.0, 1.0))


@pytest.mark.parametrize("shapes", ROUND_TRIP_SHAPES)
def test_quantile_round_trip(shapes):
    p = BetaParams(*shapes)
    assert len(ROUND_TRIP_QS) == 21
    for q in ROUND_TRIP_QS:
        x = betadist.quantile(q, p)
        assert abs(betadist.cdf(x, p) - q) <= 1e-10, (shapes, q)
        assert abs(scipy_beta.cdf(x, *shapes) - q) <= 1e-10, (shapes, q)


@pytest.mark.parametrize("shapes", ROUND_TRIP_SHAPES)
def test_quantile_matches_bisection_oracle(shapes):
    p = BetaParams(*shapes)
    for q in (0.025, 0.5, 0.975):
        assert betadist.quantile(q, p) == pytest.approx(bisection_quantile(q, p), abs=1e-9)


@pytest.mark.parametrize("shapes", [(0.5, 1e6), (1.5, 1e6)])
def test_quantile_at_extreme_shapes(shapes):
    p = BetaParams(*shapes)
    for q in (0.025, 0.5, 0.975):
        x = betadist.quantile(q, p)
        assert abs(betadist.cdf(x, p) - q) <= betadist.QUANTILE_TOLERANCE, (shapes, q)
        assert abs(scipy_beta.cdf(x, *shapes) - q) <= 2e-9, (shapes, q)


def test_posterior_quantiles_memoized():
    betadist.posterior_quantiles.cache_clear()
    first = betadist.posterior_quantiles(40, 150, 0.05)
    second = betadist.posterior_quantiles(40, 150, 0.05)
    assert first == second
    assert betadist.posterior_quantiles.cache_info().hits >= 1
    lower, upper = first
    assert lower == pytest.approx(scipy_beta.ppf(0.025, 40.5, 110.5), abs=1e-9)
    assert upper == pytest.approx(scipy_beta.ppf(0.975, 40.5, 110.5), abs=1e-9)
