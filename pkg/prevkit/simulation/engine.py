"""
Finite-population Monte Carlo engine
====================================

One replication of a scenario:

 1. the population of ``N`` units holds exactly ``N_c = round(π_c·N)`` true
    cases; testing every unit once would give
    ``N_c* ~ Bin(N_c, Se) + Bin(N − N_c, 1 − Sp)`` positives,
 2. a simple random sample of ``n = round(φ·N)`` units is drawn without
    replacement, so ``n⁺ ~ Hypergeometric(N, N_c*, n)``,
 3. the sample is run through the estimators and both interval procedures.

This is the *test-then-sample* scheme. The *sample-then-test* scheme (draw
the number of true cases in the sample first, then test only the sample)
yields the same distribution of ``n⁺`` and is available for comparison.
"""
from __future__ import absolute_import, division, print_function, unicode_literals

import logging
import math
from collections import namedtuple

from prevkit.core import estimators
from prevkit.core import intervals
from prevkit.core.errors import InvalidParameter
from prevkit.core.estimators import check_count
from prevkit.core.estimators import check_probability
from prevkit.core.estimators import SampleSummary

from . import streams

logger = logging.getLogger(__name__)

TEST_THEN_SAMPLE = 'test-then-sample'
SAMPLE_THEN_TEST = 'sample-then-test'
SCHEMES = (TEST_THEN_SAMPLE, SAMPLE_THEN_TEST)


def round_half_up(value):
    return int(math.floor(value + 0.5))


class ScenarioConfig(namedtuple('ScenarioConfig', [
    'population_size',
    'true_prevalence',
    'sampling_rate',
    'kit',
    'replications',
    'alpha',
    'seed',
    'scheme',
])):
    """
    One simulation cell. ``sample_size`` and ``true_cases`` are derived by
    half-up rounding of ``φ·N`` and ``π_c·N``.
    """
    __slots__ = ()

    def __new__(cls, population_size, true_prevalence, sampling_rate, kit,
                replications=5000, alpha=0.05, seed=0, scheme=TEST_THEN_SAMPLE):
        population_size = check_count('population_size', population_size, minimum=2)
        true_prevalence = check_probability('true_prevalence', true_prevalence)
        sampling_rate = check_probability('sampling_rate', sampling_rate)
        if sampling_rate <= 0.0:
            raise InvalidParameter("sampling_rate must be positive")
        replications = check_count('replications', replications)
        if not (0.0 < alpha < 1.0):
            raise InvalidParameter("alpha must lie in (0, 1), got {!r}".format(alpha))
        seed = check_count('seed', seed)
        if seed > streams.MAX_SEED:
            raise InvalidParameter("seed must fit in 64 bits, got {}".format(seed))
        if scheme not in SCHEMES:
            raise InvalidParameter("scheme must be one of {}, got {!r}".format(", ".join(SCHEMES), scheme))
        n = round_half_up(sampling_rate * population_size)
        if not (2 <= n <= population_size):
            raise InvalidParameter(
                "sampling_rate {} gives a sample size of {} for N = {}; need 2 <= n <= N".format(
                    sampling_rate, n, population_size)
            )
        return super(ScenarioConfig, cls).__new__(
            cls, population_size, true_prevalence, sampling_rate, kit,
            replications, float(alpha), seed, scheme,
        )

    @property
    def sample_size(self):
        return round_half_up(self.sampling_rate * self.population_size)

    @property
    def true_cases(self):
        return round_half_up(self.true_prevalence * self.population_size)

    @property
    def realized_prevalence(self):
        """``N_c / N``, equal to ``true_prevalence`` whenever ``π_c·N`` is integral."""
        return self.true_cases / self.population_size

    @property
    def test_positivity(self):
        return estimators.positivity_from_prevalence(self.true_prevalence, self.kit)

    @property
    def scenario_id(self):
        """
        Identifies the cell independently of seed and replication count, so
        that extending a run reproduces the replications already computed.
        """
        return streams.scenario_id(
            self.population_size, self.true_prevalence, self.sampling_rate,
            self.kit.sensitivity, self.kit.specificity, self.scheme,
        )

    def stream_key(self):
        return streams.scenario_key(self.seed, self.scenario_id)


#: ``n_c_star``: positives if every unit were tested; ``true_cases``: N_c
PopulationRealization = namedtuple('PopulationRealization', ['n_c_star', 'true_cases'])

ReplicationResult = namedtuple('ReplicationResult', ['index', 'sample', 'estimate', 'wald', 'credible'])


def binomial_draw(trials, p, stream):
    trials = check_count('trials', trials)
    p = check_probability('p', p)
    if trials == 0 or p == 0.0:
        return 0
    if p == 1.0:
        return trials
    return int(stream.binomial(trials, p))


def hypergeometric_draw(N, K, n, stream):
    """
    Number of marked units in a sample of ``n`` drawn without replacement
    from ``N`` units of which ``K`` are marked.
    """
    N = check_count('N', N)
    K = check_count('K', K)
    n = check_count('n', n)
    if K > N or n > N:
        raise InvalidParameter("need K <= N and n <= N, got N={}, K={}, n={}".format(N, K, n))
    if K == 0 or n == 0:
        return 0
    if K == N:
        return n
    if n == N:
        return K
    return int(stream.hypergeometric(K, N - K, n))


def realize_population(cfg, stream):
    N, N_c = cfg.population_size, cfg.true_cases
    n_c_star = (
        binomial_draw(N_c, cfg.kit.sensitivity, stream) +
        binomial_draw(N - N_c, 1.0 - cfg.kit.specificity, stream)
    )
    return PopulationRealization(n_c_star=n_c_star, true_cases=N_c)


def draw_positives(cfg, stream):
    """
    :returns: ``n⁺`` for one replication under ``cfg.scheme``
    """
    N, n = cfg.population_size, cfg.sample_size
    if cfg.scheme == TEST_THEN_SAMPLE:
        population = realize_population(cfg, stream)
        return hypergeometric_draw(N, population.n_c_star, n, stream)
    diseased = hypergeometric_draw(N, cfg.true_cases, n, stream)
    return (
        binomial_draw(diseased, cfg.kit.sensitivity, stream) +
        binomial_draw(n - diseased, 1.0 - cfg.kit.specificity, stream)
    )


def evaluate_sample(cfg, positives, index=None):
    """
    Runs the estimators and both intervals on an observed positive count.
    """
    sample = SampleSummary(cfg.population_size, cfg.sample_size, positives)
    est = estimators.estimate(sample, cfg.kit)
    wald = intervals.wald_ci(est.pi_c_hat, est.se_pi_c, cfg.alpha)
    credible = intervals.credible_misclass(sample, cfg.kit, cfg.alpha, est=est)
    return ReplicationResult(index=index, sample=sample, estimate=est, wald=wald, credible=credible)


def replicate(cfg, stream, index=None):
    return evaluate_sample(cfg, draw_positives(cfg, stream), index=index)


def run_replications(cfg, start, stop, key=None):
    """
    Replications ``start`` (inclusive) to ``stop`` (exclusive) of ``cfg``,
    each on its own substream.
    """
    if key is None:
        key = cfg.stream_key()
    return [
        replicate(cfg, streams.replication_stream(key, index), index=index)
        for index in range(start, stop)
    ]


def draw_positive_counts(cfg, start, stop, key=None):
    """
    Only the ``n⁺`` values of replications ``start`` to ``stop``, from the same
    substreams :func:`run_replications` uses.
    """
    if key is None:
        key = cfg.stream_key()
    return [draw_positives(cfg, streams.replication_stream(key, index)) for index in range(start, stop)]
