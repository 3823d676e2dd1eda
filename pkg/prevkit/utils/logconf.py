"""
Logging configuration for the command line tool. Library code only creates
module loggers; handlers are installed here.
"""
from __future__ import absolute_import
from __future__ import print_function
from __future__ import unicode_literals

import copy
import logging
import logging.config

logger = logging.getLogger(__name__)

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'simple': {
            'format': '%(levelname)s %(message)s'
        },
        'simple_date': {
            'format': '%(levelname)s %(asctime)s %(module)s %(message)s'
        },
        'color': {
            '()': 'colorlog.ColoredFormatter',
            'format': '%(log_color)s%(levelname)-8s %(message)s',
            'log_colors': {
                'DEBUG': 'bold_black',
                'INFO': 'white',
                'WARNING': 'yellow',
                'ERROR': 'red',
                'CRITICAL': 'bold_red',
            },
        }
    },
    'handlers': {
        'console': {
            'level': 'INFO',
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'color'
        },
    },
    'loggers': {
        'prevkit': {
            'handlers': ['console'],
            'level': 'INFO',
            'propagate': False,
        },
    }
}


def get_logging_config(debug=False):
    config = copy.deepcopy(LOGGING)
    if debug:
        config['handlers']['console']['level'] = 'DEBUG'
        config['loggers']['prevkit']['level'] = 'DEBUG'
    return config


def setup_logging(debug=False):
    """
    :param: debug: also show DEBUG messages (chunk scheduling, sweep rows)
    """
    logging.config.dictConfig(get_logging_config(debug=debug))
    if debug:
        logger.debug("Debug mode is on!")
