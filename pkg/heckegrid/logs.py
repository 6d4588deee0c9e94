# Copyright (C) 2015-2016 Skylable Ltd. <info-copyright@skylable.com>
# License: Apache 2.0, see LICENSE for more details.

import logging
import re
import sys
from typing import Dict, Any, Optional  # noqa


def configure_logging(*, use_colors: bool, level: int = logging.INFO) -> None:
    logger = logging.getLogger()
    logger.setLevel(level)
    handler = get_handler(use_colors=use_colors, level=level)
    logger.addHandler(handler)


def get_handler(*, use_colors: bool, level: int = logging.INFO) \
        -> logging.Handler:
    # stdout is reserved for `show` output and summaries.
    handler = logging.StreamHandler(sys.stderr)
    formatter = get_formatter(use_colors=use_colors)
    handler.setFormatter(formatter)
    handler.setLevel(level)
    return handler


def get_formatter(*, use_colors: bool) -> logging.Formatter:
    return VerdictFormatter(
        fmt='[%(asctime)s %(levelname)s %(component)s] %(message)s',
        datefmt='%H:%M:%S',
        use_colors=use_colors,
    )


def get_level(*, quiet: bool, debug: bool) -> int:
    if debug:
        return logging.DEBUG
    if quiet:
        return logging.WARNING
    return logging.INFO


class VerdictFormatter(logging.Formatter):
    """Tags records with their heckegrid component; colours verdicts.

    A record whose first line ends in ": PASS", ": FAIL" or
    ": INCONCLUSIVE" is coloured by that verdict, anything else by level.
    """
    VERDICT = re.compile(r'^[^\n]*: (PASS|FAIL|INCONCLUSIVE)$', re.M)
    VERDICT_COLORS = {
        'PASS': '\033[32m',
        'FAIL': '\033[31;1m',
        'INCONCLUSIVE': '\033[33m',
    }
    LEVEL_COLORS = {
        'WARNING': '\033[33m',
        'ERROR': '\033[35;1m',
        'CRITICAL': '\033[31;1m',
    }
    RESET = '\033[0m'

    def __init__(self, fmt: Optional[str] = None,
                 datefmt: Optional[str] = None,
                 use_colors: bool = False) -> None:
        super(VerdictFormatter, self).__init__(fmt=fmt, datefmt=datefmt)
        self.use_colors = use_colors

    def format(self, record: logging.LogRecord) -> str:
        record.component = component_name(record.name)
        message = super(VerdictFormatter, self).format(record)
        color = self.color_for(record)
        if color is None:
            return message
        return color + message + self.RESET

    def color_for(self, record: logging.LogRecord) -> Optional[str]:
        if not self.use_colors:
            return None
        match = self.VERDICT.match(record.getMessage())
        if match:
            return self.VERDICT_COLORS[match.group(1)]
        return self.LEVEL_COLORS.get(record.levelname)


def component_name(logger_name: Optional[str]) -> str:
    # heckegrid.congruence -> congruence; root and foreign loggers keep
    # their own name.
    if not logger_name:
        return 'root'
    package, _, module = logger_name.partition('.')
    if package == 'heckegrid' and module:
        return module
    return logger_name


def format_verdict_line(name: str, verdict: str, details: Dict[str, Any]) \
        -> str:
    message = ', '.join(
        '{}={}'.format(key, details[key]) for key in sorted(details)
    )
    return "{name}: {verdict}\n".format(
        name=name,
        verdict=verdict.upper(),
    ) + format_line('details', message)


def format_line(name: str, message: str) -> str:
    connector = '\n' if '\n' in message else ' '
    return " - {name}:{connector}{message}\n".format(
        name=name,
        connector=connector,
        message=message.strip(),
    )
