"""
prevkit option layering
=======================

Every command line option can also be given in a flat configuration file
passed with ``--config``::

    # tables.conf
    seed = 42
    reps: 5000
    --threads = 4

Keys are the long flag names, with or without the leading ``--``. Values are
resolved in this order, first match wins:

 1. flags given on the command line,
 2. the configuration file,
 3. the ``PREVKIT_SEED`` environment variable (``--seed`` only),
 4. the per-command defaults in :data:`COMMAND_DEFAULTS`,
 5. :data:`DEFAULTS`.

Every value passes through a coercer that checks its range; errors are
raised as :class:`~prevkit.core.errors.ConfigurationError` naming the flag.
"""
from __future__ import absolute_import
from __future__ import print_function
from __future__ import unicode_literals

import io
import logging
import os
import re

from prevkit.core.errors import ConfigurationError
from prevkit.simulation.engine import SCHEMES
from prevkit.simulation.streams import MAX_SEED

logger = logging.getLogger(__name__)

SEED_ENV = 'PREVKIT_SEED'

FORMATS = ('csv', 'json', 'text')

#: Defaults shared by all commands. ``None`` means "not set".
DEFAULTS = {
    'seed': 20240101,
    'reps': 5000,
    'alpha': 0.05,
    'threads': 1,
    'out': '.',
    'format': 'csv',
    'step': 20,
    'scheme': 'test-then-sample',
    'n': None,
    'n-pos': None,
    'pop-size': None,
    'prevalence': None,
    'rate': None,
    'se': None,
    'sp': None,
    'debug': False,
    'no-progress': False,
    'emit-replications': None,
    'svg': None,
}

COMMAND_DEFAULTS = {
    'estimate': {},
    'scenario': {
        'pop-size': 500,
        'prevalence': 0.3,
        'rate': 0.3,
        'se': 0.9,
        'sp': 0.95,
    },
    'tables': {},
    'figure1': {
        'prevalence': 0.2,
        'n': 100,
        'reps': 20000,
    },
}

#: Options without which a command cannot run
REQUIRED = {
    'estimate': ('n', 'n-pos', 'pop-size', 'se', 'sp'),
}

_LINE_RE = re.compile(r'^\s*(?:--)?(?P<key>[a-z][a-z0-9-]*)\s*[=:]\s*(?P<value>.*?)\s*$')

_TRUE = ('1', 'true', 'yes', 'on')
_FALSE = ('0', 'false', 'no', 'off')


def _flag(name):
    return '--' + name


def _integer(minimum=0, maximum=None):
    def coerce(name, value):
        if isinstance(value, bool):
            raise ConfigurationError("{} must be an integer, got {!r}".format(_flag(name), value))
        try:
            number = int(value)
        except (TypeError, ValueError):
            raise ConfigurationError("{} must be an integer, got {!r}".format(_flag(name), value))
        if isinstance(value, float) and number != value:
            raise ConfigurationError("{} must be an integer, got {!r}".format(_flag(name), value))
        if number < minimum or (maximum is not None and number > maximum):
            upper = "" if maximum is None else " and <= {}".format(maximum)
            raise ConfigurationError("{} must be >= {}{}, got {}".format(_flag(name), minimum, upper, number))
        return number
    return coerce


def _real(lower=0.0, upper=1.0, open_lower=False, open_upper=False):
    def coerce(name, value):
        try:
            number = float(value)
        except (TypeError, ValueError):
            raise ConfigurationError("{} must be a number, got {!r}".format(_flag(name), value))
        too_low = number <= lower if open_lower else number < lower
        too_high = number >= upper if open_upper else number > upper
        if too_low or too_high or number != number:
            raise ConfigurationError("{} must lie in {}{}, {}{}, got {}".format(
                _flag(name), '(' if open_lower else '[', lower, upper, ')' if open_upper else ']', value))
        return number
    return coerce


def _choice(choices):
    def coerce(name, value):
        if value not in choices:
            raise ConfigurationError("{} must be one of {}, got {!r}".format(_flag(name), ", ".join(choices), value))
        return value
    return coerce


def _boolean(name, value):
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in _TRUE:
        return True
    if text in _FALSE:
        return False
    raise ConfigurationError("{} must be true or false, got {!r}".format(_flag(name), value))


def _path(name, value):
    value = str(value).strip()
    if not value:
        raise ConfigurationError("{} must not be empty".format(_flag(name)))
    return os.path.expanduser(value)


COERCERS = {
    'seed': _integer(0, MAX_SEED),
    'reps': _integer(0),
    'alpha': _real(open_lower=True, open_upper=True),
    'threads': _integer(1),
    'out': _path,
    'format': _choice(FORMATS),
    'step': _integer(1),
    'scheme': _choice(SCHEMES),
    'n': _integer(2),
    'n-pos': _integer(0),
    'pop-size': _integer(1),
    'prevalence': _real(),
    'rate': _real(open_lower=True),
    'se': _real(),
    'sp': _real(),
    'debug': _boolean,
    'no-progress': _boolean,
    'emit-replications': _path,
    'svg': _path,
}


def load_config_file(path):
    """
    :returns: dict of raw (string) values keyed by option name
    """
    values = {}
    try:
        handle = io.open(path, 'r', encoding='utf-8')
    except (IOError, OSError) as e:
        raise ConfigurationError("cannot read --config file {}: {}".format(path, e.strerror or e))
    with handle:
        for number, line in enumerate(handle, start=1):
            stripped = line.split('#', 1)[0].strip()
            if not stripped:
                continue
            match = _LINE_RE.match(stripped)
            if match is None:
                raise ConfigurationError("{}:{}: expected 'key = value', got {!r}".format(path, number, stripped))
            key = match.group('key')
            if key not in COERCERS:
                raise ConfigurationError("{}:{}: unknown option {!r}".format(path, number, key))
            values[key] = match.group('value')
    logger.debug("Loaded {} options from {}".format(len(values), path))
    return values


def flags_from_arguments(arguments):
    """
    Picks the options actually given on the command line out of a docopt
    result (unset options are ``None`` or ``False`` there).
    """
    flags = {}
    for key, value in arguments.items():
        if not key.startswith('--'):
            continue
        name = key[2:]
        if name not in COERCERS or value is None or value is False:
            continue
        flags[name] = value
    return flags


def resolve(flags, command=None, config_path=None, environ=None):
    """
    :param: flags: options given on the command line, keyed by long name
    :param: command: subcommand whose defaults and required options apply
    :returns: dict keyed by option name with ``-`` replaced by ``_``
    """
    if environ is None:
        environ = os.environ
    layers = [dict(DEFAULTS), dict(COMMAND_DEFAULTS.get(command, {}))]
    if environ.get(SEED_ENV):
        layers.append({'seed': environ[SEED_ENV]})
    if config_path:
        layers.append(load_config_file(config_path))
    layers.append(flags)

    merged = {}
    for layer in layers:
        merged.update(layer)

    options = {}
    for name, coerce in COERCERS.items():
        value = merged.get(name)
        options[name] = None if value is None else coerce(name, value)

    for name in REQUIRED.get(command, ()):
        if options[name] is None:
            raise ConfigurationError("{} is required for {}".format(_flag(name), command))
    if options['se'] is not None and options['sp'] is not None and options['se'] + options['sp'] <= 1.0:
        raise ConfigurationError("--se + --sp must exceed 1, got {} + {}".format(options['se'], options['sp']))
    if options['n'] is not None and options['n-pos'] is not None and options['n-pos'] > options['n']:
        raise ConfigurationError("--n-pos ({}) cannot exceed --n ({})".format(options['n-pos'], options['n']))
    if options['n'] is not None and options['pop-size'] is not None and options['n'] > options['pop-size']:
        raise ConfigurationError("--n ({}) cannot exceed --pop-size ({})".format(options['n'], options['pop-size']))

    return dict((name.replace('-', '_'), value) for name, value in options.items())
