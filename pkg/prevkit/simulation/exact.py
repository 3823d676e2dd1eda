"""
Exact distributions for small populations
=========================================

Enumeration counterparts of the Monte Carlo engine, used to check the
closed-form moments of ``N_c*`` and that both sampling schemes give the same
distribution of ``n⁺``.
"""
from __future__ import absolute_import, division, print_function, unicode_literals

import itertools
import math

import numpy as np
from scipy.stats import binom
from scipy.stats import hypergeom

from prevkit.core.errors import InvalidParameter


def _check_population(N, N_c, n=None):
    if not (0 <= N_c <= N):
        raise InvalidParameter("need 0 <= N_c <= N, got N={}, N_c={}".format(N, N_c))
    if n is not None and not (0 <= n <= N):
        raise InvalidParameter("need 0 <= n <= N, got N={}, n={}".format(N, n))


def _binomial_pmf(trials, p):
    return binom.pmf(np.arange(trials + 1), trials, p)


def n_c_star_pmf(N, N_c, kit):
    """
    :returns: array ``pmf[m] = P(N_c* = m)`` for ``m = 0..N``
    """
    _check_population(N, N_c)
    return np.convolve(
        _binomial_pmf(N_c, kit.sensitivity),
        _binomial_pmf(N - N_c, 1.0 - kit.specificity),
    )


def n_c_star_moments_by_enumeration(N, N_c, kit):
    """
    Mean and variance of ``N_c*`` by summing over every pair of outcomes
    ``(true positives, false positives)``.
    """
    _check_population(N, N_c)
    true_pos = _binomial_pmf(N_c, kit.sensitivity)
    false_pos = _binomial_pmf(N - N_c, 1.0 - kit.specificity)
    outcomes = [
        (i + j, true_pos[i] * false_pos[j])
        for i in range(N_c + 1)
        for j in range(N - N_c + 1)
    ]
    mean = math.fsum(count * prob for count, prob in outcomes)
    variance = math.fsum((count - mean) ** 2 * prob for count, prob in outcomes)
    return mean, variance


def positives_pmf_test_then_sample(N, N_c, n, kit):
    """
    ``P(n⁺ = k)`` when the whole population is tested and a sample of ``n``
    is drawn afterwards.
    """
    _check_population(N, N_c, n)
    star = n_c_star_pmf(N, N_c, kit)
    ks = np.arange(n + 1)
    pmf = np.zeros(n + 1)
    for m, weight in enumerate(star):
        if weight > 0.0:
            pmf += weight * hypergeom.pmf(ks, N, m, n)
    return pmf


def positives_pmf_sample_then_test(N, N_c, n, kit):
    """
    ``P(n⁺ = k)`` when the sample is drawn first and only its ``n`` units are
    tested.
    """
    _check_population(N, N_c, n)
    pmf = np.zeros(n + 1)
    for diseased in range(min(N_c, n) + 1):
        weight = hypergeom.pmf(diseased, N, N_c, n)
        if weight > 0.0:
            pmf += weight * np.convolve(
                _binomial_pmf(diseased, kit.sensitivity),
                _binomial_pmf(n - diseased, 1.0 - kit.specificity),
            )
    return pmf


def positives_pmf_by_full_enumeration(N, N_c, n, kit):
    """
    ``P(n⁺ = k)`` summed over every test-outcome pattern of the population
    and every subset of ``n`` units. Exponential in ``N``; meant for N <= 10.
    """
    _check_population(N, N_c, n)
    se, sp = kit.sensitivity, kit.specificity
    samples = list(itertools.combinations(range(N), n))
    sample_weight = 1.0 / len(samples)
    totals = [[] for _ in range(n + 1)]
    for pattern in itertools.product((0, 1), repeat=N):
        prob = 1.0
        for unit, positive in enumerate(pattern):
            p_positive = se if unit < N_c else 1.0 - sp
            prob *= p_positive if positive else 1.0 - p_positive
        if prob == 0.0:
            continue
        for sample in samples:
            totals[sum(pattern[unit] for unit in sample)].append(prob * sample_weight)
    return np.array([math.fsum(parts) for parts in totals])
