from __future__ import absolute_import
from __future__ import print_function
from __future__ import unicode_literals

import logging
import os
import signal
import sys

from docopt import docopt
from docopt import DocoptExit

import prevkit
from prevkit.core.errors import ConfigurationError
from prevkit.core.errors import InvalidParameter
from prevkit.core.errors import PrevkitError
from prevkit.core.estimators import SampleSummary
from prevkit.core.estimators import TestKit
from prevkit.experiments import output
from prevkit.experiments import runner
from prevkit.experiments import svg
from prevkit.simulation.engine import ScenarioConfig

from . import conf
from .logconf import setup_logging

USAGE = """
prevkit

Prevalence estimation from imperfect tests in finite populations.

Usage:
  prevkit estimate [options]
  prevkit scenario [options]
  prevkit tables [options]
  prevkit figure1 [options]
  prevkit -h | --help
  prevkit --version

Options:
  -h --help                    Show this screen.
  --version                    Show version.
  --config=<path>              Read options from a flat `key = value` file;
                               flags given here take precedence.
  --debug                      Output debug messages.
  --no-progress                Do not show progress bars.
  --seed=<seed>                Master seed (64-bit unsigned) [env: PREVKIT_SEED].
  --reps=<reps>                Replications per scenario.
  --alpha=<alpha>              1 - nominal interval level.
  --threads=<threads>          Worker threads for replications.
  --out=<dir>                  Directory for tables.csv / figure1.csv.
  --format=<format>            csv, json or text (text only for estimate
                               and scenario).
  --scheme=<scheme>            test-then-sample or sample-then-test.
  --emit-replications=<path>   Also dump every replication as CSV.
  --n=<n>                      Sample size (estimate, figure1).
  --n-pos=<count>              Positive tests in the sample (estimate).
  --pop-size=<N>               Population size (estimate, scenario).
  --prevalence=<pi_c>          True prevalence (scenario, figure1).
  --rate=<phi>                 Sampling rate n/N (scenario).
  --se=<se>                    Test sensitivity.
  --sp=<sp>                    Test specificity.
  --step=<step>                Population size step of the figure1 sweep.
  --svg=<path>                 Also plot the figure1 sweep as SVG.

Examples:
  prevkit estimate --n 150 --n-pos 40 --pop-size 500 --se 0.9 --sp 0.95
  prevkit scenario --pop-size 100 --prevalence 0.1 --rate 0.1
  prevkit tables --reps 5000 --seed 42 --threads 4
  prevkit figure1 --reps 20000 --svg figure1.svg

Environment:

  PREVKIT_SEED
   - Seed used when neither --seed nor a --config file sets one.
   - Default: 20240101

"""

__doc__ = """
prevkit Command Line Interface (CLI)
====================================

Auto-generated usage instructions from ``prevkit -h``::

{usage:s}

""".format(usage="\n".join(map(lambda x: "    " + x, USAGE.split("\n"))))

logger = logging.getLogger(__name__)

COMMANDS = ('estimate', 'scenario', 'tables', 'figure1')


def parse_args(args=None):
    """
    Parses arguments by invoking docopt. ``--help`` and ``--version`` are
    left to :func:`main` so that it can return instead of exiting.
    """

    if args is None:
        args = sys.argv[1:]

    return docopt(USAGE, argv=args, help=False, options_first=False)


def _command(arguments):
    for command in COMMANDS:
        if arguments.get(command):
            return command
    raise ConfigurationError("no command given, expected one of {}".format(", ".join(COMMANDS)))


def _emit(text):
    sys.stdout.write(text)
    sys.stdout.flush()


def _kit(options):
    return TestKit(options['se'], options['sp'])


def estimate(options):
    """
    One-shot estimate from an observed sample, printed to stdout.
    """
    sample = SampleSummary(options['pop_size'], options['n'], options['n_pos'])
    kit = _kit(options)
    est, wald, credible = runner.estimate_with_intervals(sample, kit, options['alpha'])
    row = output.estimate_row(sample, kit, options['alpha'], est, wald, credible)
    _emit(output.render([row], output.ESTIMATE_FIELDS, options['format']))


def scenario(options):
    """
    Simulates one cell and prints its summary row to stdout.
    """
    cfg = ScenarioConfig(
        options['pop_size'], options['prevalence'], options['rate'], _kit(options),
        replications=options['reps'], alpha=options['alpha'], seed=options['seed'], scheme=options['scheme'],
    )
    summary, records = runner.run_scenario_records(cfg, threads=options['threads'], progress=False)
    if options['emit_replications']:
        output.write_replications([(cfg, records)], options['emit_replications'])
    _emit(output.render([output.summary_row(summary)], output.SUMMARY_FIELDS, options['format']))


def _file_format(options):
    if options['format'] == output.TEXT:
        raise ConfigurationError("--format text is only available for estimate and scenario")
    return options['format']


def tables(options):
    """
    Runs the full scenario grid and writes ``tables.csv`` (or ``.json``).
    """
    fmt = _file_format(options)
    grid = runner.default_grid(
        replications=options['reps'], alpha=options['alpha'], seed=options['seed'], scheme=options['scheme'],
    )
    progress = not options['no_progress']
    if options['emit_replications']:
        results = runner.run_table_grid_records(grid, threads=options['threads'], progress=progress)
        output.write_replications(
            [(summary.config, records) for summary, records in results], options['emit_replications'],
        )
        summaries = [summary for summary, _ in results]
    else:
        summaries = runner.run_table_grid(grid, threads=options['threads'], progress=progress)
    output.write_summaries(summaries, os.path.join(options['out'], 'tables.' + fmt), fmt=fmt)


def figure1(options):
    """
    Runs the standard-error sweep over the population size and writes
    ``figure1.csv`` (or ``.json``), plus an SVG chart with ``--svg``.
    """
    fmt = _file_format(options)
    if options['se'] is not None and options['sp'] is not None:
        kits = (_kit(options),)
    elif options['se'] is not None or options['sp'] is not None:
        raise ConfigurationError("--se and --sp must be given together for figure1")
    else:
        kits = runner.SWEEP_KITS
    sweep = runner.default_sweep(
        replications=options['reps'], seed=options['seed'], step=options['step'],
        sample_size=options['n'], true_prevalence=options['prevalence'], kits=kits,
    )
    rows = runner.run_figure1_sweep(sweep, threads=options['threads'], progress=not options['no_progress'])
    output.write_sweep(rows, os.path.join(options['out'], 'figure1.' + fmt), fmt=fmt)
    if options['svg']:
        svg.write_sweep_svg(rows, options['svg'])


HANDLERS = {
    'estimate': estimate,
    'scenario': scenario,
    'tables': tables,
    'figure1': figure1,
}


def _fail(message):
    sys.stderr.write("prevkit: error: {}\n".format(message))
    return 2


def _usage_error(e):
    first = str(e).strip().split("\n")[0].strip()
    if not first or first.lower().startswith('usage'):
        return "invalid arguments (see prevkit --help)"
    return first


def main(args=None):
    """
    prevkit's main function. Parses arguments, resolves options and runs the
    requested command.

    :returns: exit code, 0 on success and 2 on a usage or configuration error
    """

    signal.signal(signal.SIGINT, signal.SIG_DFL)

    try:
        arguments = parse_args(args)
    except DocoptExit as e:
        return _fail(_usage_error(e))

    if arguments['--help']:
        print(USAGE.strip())
        return 0

    if arguments['--version']:
        print(str(prevkit.__version__))
        return 0

    try:
        command = _command(arguments)
        options = conf.resolve(
            conf.flags_from_arguments(arguments),
            command=command,
            config_path=arguments['--config'],
        )
        setup_logging(debug=options['debug'])
        logger.debug("Resolved options: {}".format(options))
        HANDLERS[command](options)
    except (ConfigurationError, InvalidParameter) as e:
        return _fail(e)
    except PrevkitError as e:
        logger.error(str(e))
        return 1
    return 0
