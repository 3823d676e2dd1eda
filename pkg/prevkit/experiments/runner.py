"""
Scenario runner
===============

Runs simulation cells and reduces their replications to the summary metrics
reported in the result tables (mean, SD and average SE of ``π̂_c``, coverage
and average width of both intervals), and the standard-error sweep over the
population size.

Replications are split into index ranges ("chunks") which may run on a
thread pool. Each replication has its own random substream and the results
are reduced with exactly rounded sums, so the output does not depend on the
number of threads.
"""
from __future__ import absolute_import, division, print_function, unicode_literals

import logging
import math
import time
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from prevkit.core import estimators
from prevkit.core import intervals
from prevkit.core.errors import ConfigurationError
from prevkit.core.estimators import TestKit
from prevkit.simulation import engine
from prevkit.simulation.engine import ScenarioConfig

from .progress import ProgressTracker

logger = logging.getLogger(__name__)

#: Replications per unit of work handed to a thread
CHUNK_SIZE = 250

GRID_POPULATION_SIZES = (100, 500, 1000)
GRID_KITS = (TestKit(0.9, 0.95), TestKit(0.8, 0.85))
GRID_PREVALENCES = (0.1, 0.3, 0.5)
GRID_SAMPLING_RATES = (0.1, 0.3, 0.5)

SWEEP_FIRST_N = 120
SWEEP_LAST_N = 2000
SWEEP_STEP = 20
SWEEP_SAMPLE_SIZE = 100
SWEEP_PREVALENCE = 0.2
SWEEP_KITS = (TestKit(0.8, 0.85), TestKit(0.9, 0.95))


ScenarioSummary = namedtuple('ScenarioSummary', [
    'config',
    'mean_estimate',
    'sd_estimate',
    'avg_se',
    'wald_coverage',
    'wald_avg_width',
    'cred_coverage',
    'cred_avg_width',
])

#: The per-replication values a ScenarioSummary is reduced from
ReplicationRecord = namedtuple('ReplicationRecord', [
    'index',
    'positives',
    'pi_c_hat',
    'se_pi_c',
    'wald_lower',
    'wald_upper',
    'cred_lower',
    'cred_upper',
])

SweepRow = namedtuple('SweepRow', [
    'sensitivity',
    'specificity',
    'N',
    'n',
    'replications',
    'se_mle',
    'se_new',
    'se_empirical',
    'se_fpc',
])


class GridConfig(namedtuple('GridConfig', [
    'population_sizes',
    'kits',
    'prevalences',
    'sampling_rates',
    'replications',
    'alpha',
    'seed',
    'scheme',
])):
    """
    Cross product of scenario parameters, enumerated in the order
    ``(N, kit, π_c, φ)``.
    """
    __slots__ = ()

    def configs(self):
        for N in self.population_sizes:
            for kit in self.kits:
                for pi_c in self.prevalences:
                    for phi in self.sampling_rates:
                        yield ScenarioConfig(
                            N, pi_c, phi, kit,
                            replications=self.replications,
                            alpha=self.alpha,
                            seed=self.seed,
                            scheme=self.scheme,
                        )

    def __len__(self):
        return len(self.population_sizes) * len(self.kits) * len(self.prevalences) * len(self.sampling_rates)


def default_grid(replications=5000, alpha=0.05, seed=0, scheme=engine.TEST_THEN_SAMPLE):
    return GridConfig(
        GRID_POPULATION_SIZES, GRID_KITS, GRID_PREVALENCES, GRID_SAMPLING_RATES,
        replications, alpha, seed, scheme,
    )


class SweepConfig(namedtuple('SweepConfig', [
    'population_sizes',
    'sample_size',
    'true_prevalence',
    'kits',
    'replications',
    'seed',
])):
    __slots__ = ()

    def configs(self):
        """
        One ScenarioConfig per ``(kit, N)``; the sampling rate is chosen so
        that the sample size stays fixed.
        """
        for kit in self.kits:
            for N in self.population_sizes:
                yield ScenarioConfig(
                    N, self.true_prevalence, self.sample_size / N, kit,
                    replications=self.replications, seed=self.seed,
                )


def default_sweep(replications=20000, seed=0, step=SWEEP_STEP, sample_size=SWEEP_SAMPLE_SIZE,
                  true_prevalence=SWEEP_PREVALENCE, kits=SWEEP_KITS):
    if step < 1:
        raise ConfigurationError("--step must be a positive integer, got {}".format(step))
    population_sizes = tuple(range(SWEEP_FIRST_N, SWEEP_LAST_N + 1, step))
    return SweepConfig(population_sizes, sample_size, true_prevalence, tuple(kits), replications, seed)


def _chunks(total, chunk_size=CHUNK_SIZE):
    return [(start, min(start + chunk_size, total)) for start in range(0, total, chunk_size)]


def _map_chunks(func, total, threads=1, progress=False, description=None):
    """
    Calls ``func(start, stop)`` for every chunk of ``range(total)`` and
    concatenates the returned lists in index order.
    """
    chunks = _chunks(total)
    results = []
    with ProgressTracker(total=total, description=description, enabled=progress) as update_progress:
        if threads <= 1 or len(chunks) == 1:
            outputs = (func(start, stop) for start, stop in chunks)
        else:
            logger.debug("Scheduling {} chunks on {} threads".format(len(chunks), threads))
            executor = ThreadPoolExecutor(max_workers=threads)
            outputs = executor.map(lambda bounds: func(*bounds), chunks)
        try:
            for (start, stop), output in zip(chunks, outputs):
                results.extend(output)
                update_progress(stop - start)
        finally:
            if threads > 1 and len(chunks) > 1:
                executor.shutdown(wait=True)
    return results


def record_from_result(result):
    return ReplicationRecord(
        index=result.index,
        positives=result.sample.positives,
        pi_c_hat=result.estimate.pi_c_hat,
        se_pi_c=result.estimate.se_pi_c,
        wald_lower=result.wald.lower,
        wald_upper=result.wald.upper,
        cred_lower=result.credible.lower,
        cred_upper=result.credible.upper,
    )


def simulate_records(cfg, threads=1, progress=False):
    """
    :returns: one ReplicationRecord per replication of ``cfg``, ordered by index
    """
    if cfg.replications < 1:
        raise ConfigurationError("--reps must be at least 1 to run a scenario")
    key = cfg.stream_key()

    def run_chunk(start, stop):
        return [record_from_result(r) for r in engine.run_replications(cfg, start, stop, key=key)]

    return _map_chunks(
        run_chunk, cfg.replications, threads=threads, progress=progress,
        description="N={} pi_c={} phi={}".format(cfg.population_size, cfg.true_prevalence, cfg.sampling_rate),
    )


def _mean(values):
    return math.fsum(values) / len(values)


def _sample_sd(values, mean):
    if len(values) < 2:
        return 0.0
    return math.sqrt(math.fsum((v - mean) ** 2 for v in values) / (len(values) - 1))


def aggregate(cfg, records):
    """
    Reduces replication records to a ScenarioSummary. Coverage is measured
    against the realized prevalence ``N_c / N`` with closed endpoints.
    """
    if not records:
        raise ConfigurationError("cannot summarize a scenario without replications")
    truth = cfg.realized_prevalence
    estimates = [r.pi_c_hat for r in records]
    mean_estimate = _mean(estimates)
    wald_hits = sum(1 for r in records if r.wald_lower <= truth <= r.wald_upper)
    cred_hits = sum(1 for r in records if r.cred_lower <= truth <= r.cred_upper)
    return ScenarioSummary(
        config=cfg,
        mean_estimate=mean_estimate,
        sd_estimate=_sample_sd(estimates, mean_estimate),
        avg_se=_mean([r.se_pi_c for r in records]),
        wald_coverage=wald_hits / len(records),
        wald_avg_width=_mean([r.wald_upper - r.wald_lower for r in records]),
        cred_coverage=cred_hits / len(records),
        cred_avg_width=_mean([r.cred_upper - r.cred_lower for r in records]),
    )


def run_scenario_records(cfg, threads=1, progress=False):
    """
    Runs ``cfg.replications`` independent replications of one cell.

    :returns: ``(ScenarioSummary, [ReplicationRecord])``
    """
    started = time.time()
    logger.info(
        "Running scenario N={N} n={n} pi_c={pi_c} Se={se} Sp={sp} ({reps} replications)".format(
            N=cfg.population_size, n=cfg.sample_size, pi_c=cfg.true_prevalence,
            se=cfg.kit.sensitivity, sp=cfg.kit.specificity, reps=cfg.replications,
        )
    )
    records = simulate_records(cfg, threads=threads, progress=progress)
    summary = aggregate(cfg, records)
    logger.info("Scenario finished in {:.1f}s".format(time.time() - started))
    return summary, records


def run_scenario(cfg, threads=1, progress=False):
    return run_scenario_records(cfg, threads=threads, progress=progress)[0]


def run_table_grid_records(grid, threads=1, progress=False):
    """
    :returns: ``(ScenarioSummary, [ReplicationRecord])`` per cell, ordered by
              ``(N, kit, π_c, φ)``
    """
    if len(grid) == 0:
        raise ConfigurationError("the scenario grid is empty")
    return [run_scenario_records(cfg, threads=threads, progress=progress) for cfg in grid.configs()]


def run_table_grid(grid, threads=1, progress=False):
    if len(grid) == 0:
        raise ConfigurationError("the scenario grid is empty")
    return [run_scenario(cfg, threads=threads, progress=progress) for cfg in grid.configs()]


def sweep_row(cfg, positives):
    """
    Averages the three estimated standard errors of ``π̂_c`` over the
    replications and compares them to the empirical SD of ``π̂_c``.
    """
    kit, N, n = cfg.kit, cfg.population_size, cfg.sample_size
    pi_hat = np.asarray(positives, dtype=float) / n
    _, pi_c_hat = estimators.rogan_gladen(pi_hat, kit)
    v1 = estimators.var_naive(pi_hat, n)
    v2 = estimators.var_fpc(pi_hat, n, N)
    v3 = v2 + estimators.misclass_extra_variance(pi_c_hat, kit, N)

    def mean_se(variance):
        return math.fsum(np.sqrt(estimators.var_corrected(variance, kit))) / len(pi_hat)

    mean_estimate = math.fsum(pi_c_hat) / len(pi_hat)
    return SweepRow(
        sensitivity=kit.sensitivity,
        specificity=kit.specificity,
        N=N,
        n=n,
        replications=len(pi_hat),
        se_mle=mean_se(v1),
        se_new=mean_se(v3),
        se_empirical=_sample_sd(list(pi_c_hat), mean_estimate),
        se_fpc=mean_se(v2),
    )


def run_figure1_sweep(sweep, threads=1, progress=False):
    """
    :returns: one SweepRow per ``(kit, N)``, ordered by kit and then by N
    """
    if not sweep.population_sizes or not sweep.kits:
        raise ConfigurationError("the population size sweep is empty")
    if sweep.replications < 2:
        raise ConfigurationError("--reps must be at least 2 for an empirical standard deviation")
    rows = []
    for cfg in sweep.configs():
        key = cfg.stream_key()
        positives = _map_chunks(
            lambda start, stop: engine.draw_positive_counts(cfg, start, stop, key=key),
            cfg.replications, threads=threads, progress=progress,
            description="Se={} Sp={} N={}".format(cfg.kit.sensitivity, cfg.kit.specificity, cfg.population_size),
        )
        rows.append(sweep_row(cfg, positives))
        logger.debug("Sweep row {}".format(rows[-1]))
    logger.info("Sweep finished: {} rows".format(len(rows)))
    return rows


def estimate_with_intervals(s, kit, alpha):
    """
    One-shot estimate for an observed sample: the estimate plus the Wald and
    misclassification-corrected credible intervals.
    """
    est = estimators.estimate(s, kit)
    wald = intervals.wald_ci(est.pi_c_hat, est.se_pi_c, alpha)
    credible = intervals.credible_misclass(s, kit, alpha, est=est)
    return est, wald, credible
