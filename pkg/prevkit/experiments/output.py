"""
Result writers
==============

Summary tables and sweep rows go out as CSV (fixed column order, header row,
six significant digits) or JSON (the same fields as objects). Replication
dumps keep ``repr`` floats so that they can be read back and re-aggregated
without loss.
"""
from __future__ import absolute_import, division, print_function, unicode_literals

import csv
import io
import json
import logging
import os
from collections import OrderedDict
from numbers import Integral

from prevkit.core import estimators
from prevkit.core.errors import ConfigurationError
from prevkit.core.estimators import TestKit
from prevkit.simulation.engine import ScenarioConfig

from . import runner

logger = logging.getLogger(__name__)

CSV = 'csv'
JSON = 'json'
TEXT = 'text'

SUMMARY_FIELDS = (
    'N', 'n', 'pi_c', 'se', 'sp', 'reps', 'seed',
    'mean_est', 'sd_est', 'avg_se', 'wald_cov', 'wald_width', 'cred_cov', 'cred_width',
)

SWEEP_FIELDS = ('se', 'sp', 'N', 'n', 'reps', 'se_mle', 'se_new', 'se_empirical', 'se_fpc')

ESTIMATE_FIELDS = (
    'N', 'n', 'n_pos', 'se', 'sp', 'alpha',
    'pi_hat', 'pi_c_hat', 'se_pi_c', 'cases', 'cases_se',
    'wald_lower', 'wald_upper', 'cred_lower', 'cred_upper',
)

#: Scenario identity columns followed by the ReplicationRecord fields
REPLICATION_SCENARIO_FIELDS = ('N', 'pi_c', 'phi', 'se', 'sp', 'reps', 'alpha', 'seed', 'scheme')
REPLICATION_FIELDS = REPLICATION_SCENARIO_FIELDS + runner.ReplicationRecord._fields


def format_value(value):
    """Integers as integers, floats to six significant digits."""
    if isinstance(value, Integral):
        return str(value)
    return '{:.6g}'.format(value)


def _rounded(value):
    if isinstance(value, Integral):
        return int(value)
    return float(format_value(value))


def summary_row(summary):
    cfg = summary.config
    return OrderedDict([
        ('N', cfg.population_size),
        ('n', cfg.sample_size),
        ('pi_c', cfg.true_prevalence),
        ('se', cfg.kit.sensitivity),
        ('sp', cfg.kit.specificity),
        ('reps', cfg.replications),
        ('seed', cfg.seed),
        ('mean_est', summary.mean_estimate),
        ('sd_est', summary.sd_estimate),
        ('avg_se', summary.avg_se),
        ('wald_cov', summary.wald_coverage),
        ('wald_width', summary.wald_avg_width),
        ('cred_cov', summary.cred_coverage),
        ('cred_width', summary.cred_avg_width),
    ])


def sweep_row_dict(row):
    return OrderedDict([
        ('se', row.sensitivity),
        ('sp', row.specificity),
        ('N', row.N),
        ('n', row.n),
        ('reps', row.replications),
        ('se_mle', row.se_mle),
        ('se_new', row.se_new),
        ('se_empirical', row.se_empirical),
        ('se_fpc', row.se_fpc),
    ])


def estimate_row(sample, kit, alpha, est, wald, credible):
    cases, cases_se = estimators.total_cases(est, sample.population_size)
    return OrderedDict([
        ('N', sample.population_size),
        ('n', sample.sample_size),
        ('n_pos', sample.positives),
        ('se', kit.sensitivity),
        ('sp', kit.specificity),
        ('alpha', alpha),
        ('pi_hat', est.pi_hat),
        ('pi_c_hat', est.pi_c_hat),
        ('se_pi_c', est.se_pi_c),
        ('cases', cases),
        ('cases_se', cases_se),
        ('wald_lower', wald.lower),
        ('wald_upper', wald.upper),
        ('cred_lower', credible.lower),
        ('cred_upper', credible.upper),
    ])


def render_csv(rows, fields):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(fields)
    for row in rows:
        writer.writerow([format_value(row[field]) for field in fields])
    return buffer.getvalue()


def render_json(rows, fields):
    data = [OrderedDict((field, _rounded(row[field])) for field in fields) for row in rows]
    return json.dumps(data, indent=2) + '\n'


def render_text(row):
    """Human readable report for a single estimate or scenario row."""
    width = max(len(key) for key in row)
    return ''.join('{key:<{width}}  {value}\n'.format(key=key, width=width, value=format_value(value))
                   for key, value in row.items())


def render(rows, fields, fmt):
    if fmt == CSV:
        return render_csv(rows, fields)
    if fmt == JSON:
        return render_json(rows, fields)
    if fmt == TEXT:
        return ''.join(render_text(row) for row in rows)
    raise ConfigurationError("--format must be one of csv, json, text, got {!r}".format(fmt))


def write_text_file(path, text):
    directory = os.path.dirname(path)
    if directory and not os.path.isdir(directory):
        os.makedirs(directory)
    with io.open(path, 'w', encoding='utf-8', newline='') as handle:
        handle.write(text)
    logger.info("Wrote {}".format(path))
    return path


def write_summaries(summaries, path, fmt=CSV):
    return write_text_file(path, render([summary_row(s) for s in summaries], SUMMARY_FIELDS, fmt))


def write_sweep(rows, path, fmt=CSV):
    return write_text_file(path, render([sweep_row_dict(r) for r in rows], SWEEP_FIELDS, fmt))


def _replication_line(cfg, record):
    scenario = (
        cfg.population_size, cfg.true_prevalence, cfg.sampling_rate,
        cfg.kit.sensitivity, cfg.kit.specificity, cfg.replications,
        cfg.alpha, cfg.seed, cfg.scheme,
    )
    return [repr(value) if isinstance(value, float) else str(value) for value in scenario + tuple(record)]


def write_replications(scenarios, path):
    """
    :param: scenarios: iterable of ``(ScenarioConfig, [ReplicationRecord])``
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(REPLICATION_FIELDS)
    count = 0
    for cfg, records in scenarios:
        for record in records:
            writer.writerow(_replication_line(cfg, record))
            count += 1
    logger.debug("Dumping {} replications".format(count))
    return write_text_file(path, buffer.getvalue())


def _parse_record(line, fields):
    values = dict(zip(fields, line))
    record = runner.ReplicationRecord(
        index=int(values['index']),
        positives=int(values['positives']),
        pi_c_hat=float(values['pi_c_hat']),
        se_pi_c=float(values['se_pi_c']),
        wald_lower=float(values['wald_lower']),
        wald_upper=float(values['wald_upper']),
        cred_lower=float(values['cred_lower']),
        cred_upper=float(values['cred_upper']),
    )
    scenario = tuple(values[field] for field in REPLICATION_SCENARIO_FIELDS)
    return scenario, record


def _config_from_columns(scenario):
    N, pi_c, phi, se, sp, reps, alpha, seed, scheme = scenario
    return ScenarioConfig(
        int(N), float(pi_c), float(phi), TestKit(float(se), float(sp)),
        replications=int(reps), alpha=float(alpha), seed=int(seed), scheme=scheme,
    )


def read_replications(path):
    """
    Inverse of :func:`write_replications`.

    :returns: list of ``(ScenarioConfig, [ReplicationRecord])`` in file order
    """
    grouped = OrderedDict()
    with io.open(path, 'r', encoding='utf-8', newline='') as handle:
        reader = csv.reader(handle)
        try:
            header = tuple(next(reader))
        except StopIteration:
            raise ConfigurationError("replication dump {} is empty".format(path))
        if header != REPLICATION_FIELDS:
            raise ConfigurationError("{} is not a replication dump (unexpected header)".format(path))
        for line in reader:
            if not line:
                continue
            scenario, record = _parse_record(line, header)
            grouped.setdefault(scenario, []).append(record)
    return [(_config_from_columns(scenario), records) for scenario, records in grouped.items()]


def reaggregate(path):
    """Summaries recomputed from a replication dump."""
    return [runner.aggregate(cfg, records) for cfg, records in read_replications(path)]
