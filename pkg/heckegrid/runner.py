# Copyright (C) 2015-2016 Skylable Ltd. <info-copyright@skylable.com>
# License: Apache 2.0, see LICENSE for more details.

import logging
from functools import wraps
from typing import Callable

from humanfriendly import Timer

from heckegrid import get_name_and_version, workflows
from heckegrid.config import RunConfig
from heckegrid.exceptions import (
    HeckeGridError, IntegralityError, PrecisionError,
)
from heckegrid.workflows import EXIT_FAILURE, EXIT_PRECISION


logger = logging.getLogger(__name__)


def make_runner(func: Callable[[RunConfig], int]) \
        -> Callable[[RunConfig], int]:
    @wraps(func)
    def run(config: RunConfig) -> int:
        timer = setup(config)
        try:
            return func(config)
        except SystemExit:
            raise
        except (PrecisionError, IntegralityError) as e:
            logger.error("%s: %s", type(e).__name__, e)
            return EXIT_PRECISION
        except (HeckeGridError, ZeroDivisionError) as e:
            logger.error("%s: %s", type(e).__name__, e)
            return EXIT_FAILURE
        except OSError as e:
            logger.error("I/O error: %s", e)
            return EXIT_FAILURE
        except Exception:
            logger.critical("Internal error!", exc_info=True)
            return EXIT_FAILURE
        finally:
            cleanup(config, timer)
    return run


def setup(config: RunConfig) -> Timer:
    logger.info(
        '%s, running %s with %s threads',
        get_name_and_version(),
        config.command,
        config.threads,
    )
    return Timer()


def cleanup(config: RunConfig, timer: Timer) -> None:
    logger.info("Finished %s in %s", config.command, timer)


build = make_runner(workflows.build)
show = make_runner(workflows.show)
hecke = make_runner(workflows.hecke)
congruence = make_runner(workflows.congruence)
multcheck = make_runner(workflows.multcheck)
selftest = make_runner(workflows.selftest)

RUNNERS = {
    'build': build,
    'show': show,
    'hecke': hecke,
    'congruence': congruence,
    'multcheck': multcheck,
    'selftest': selftest,
}


def run(config: RunConfig) -> int:
    return RUNNERS[config.command](config)
