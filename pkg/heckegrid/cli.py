# Copyright (C) 2015-2016 Skylable Ltd. <info-copyright@skylable.com>
# License: Apache 2.0, see LICENSE for more details.

import logging
import sys
from typing import Callable

from docopt import DocoptExit, docopt

from heckegrid import get_name_and_version
from heckegrid import runner
from heckegrid.config import RunConfig
from heckegrid.exceptions import ValidationError
from heckegrid.logs import configure_logging, get_level
from heckegrid.parsers import parse_args
from heckegrid.workflows import EXIT_USAGE


logger = logging.getLogger(__name__)


__doc__ = """
Usage:
  heckegrid build [options] [-c | -C]
  heckegrid show [options] [-c | -C]
  heckegrid hecke [options] [-c | -C]
  heckegrid congruence [options] [-c | -C]
  heckegrid multcheck [options] [-c | -C]
  heckegrid selftest [options] [-c | -C]
  heckegrid (-h | --help)
  heckegrid (-v | --version)

Build grids of weakly holomorphic modular forms and check their Hecke
identities and congruences in exact arithmetic.

Commands:
  build                     Build a grid family and write it as JSON
  show                      Print the expansion of a grid form or generator
  hecke                     Check T(p^n) f_s against the grid
  congruence                Check the p-adic valuations of U(p^n) images
  multcheck                 Check the multiplier systems
  selftest                  Reproduce the embedded golden coefficients

Options:
  -h, --help                Show help
  -v, --version             Show version
  -c, --color               Enable colors [default if logging to terminal]
  -C, --no-color            Disable colors
  -q, --quiet               Only log warnings and errors
  --debug                   Log every ladder rung and generator
  -t, --threads NUM         Number of threads to use. Falls back to
                            $HECKEGRID_THREADS, then to 4.
  --level N                 Level of the family: 1, 2, 3 or 4
  --k K                     Weight of the Eisenstein factor (level 1)
  --r R                     Power of eta in the denominator (level 1)
  --sign SIGN               Fricke eigenvalue, + or - (levels 2 to 4)
  --dmax D                  Largest index d to build
  --prec P                  Window of every form, in numerators of
                            q^(n/t); for --form, in powers of q
                            [default: 60]
  --out PATH                Output file (build: JSON, selftest: YAML)
  --in PATH                 Family JSON to read for show
  --d D                     Index of the form to show
  --form NAME               Generator to show, e.g. j2 or e4@3
  --terms N                 Number of terms to show [default: 8]
  --family PATH             Family JSON for hecke and congruence
  --p PRIMES                Comma separated primes, e.g. 5,7
  --n POWERS                Comma separated exponents [default: 1]
  --nmax N                  Also estimate A_p over exponents up to N
  --chain                   Also tie T(p^n) and U(p^n) together
  --level34 N               Check the f(mz)/H_N statement for N = 2, 3 or 4
                            (m = 4 at N = 2, else m = 3)
  --combination TERMS       Form f as coefficient*name terms, e.g.
                            1*f3plus or 1/2*e4,-1/2*e4@3
  --report PATH             Hecke report JSON. Defaults to stdout
  --json PATH               Congruence or multcheck JSON. Defaults to stdout
  --samples N               Random samples per multiplier [default: 100]
  --seed N                  Random seed for multcheck [default: 0]
"""


def entry_point() -> None:
    main(sys.argv)


def main(argv: list) -> None:
    raw_args = parse_argv(argv[1:])

    use_colors = should_use_colors(
        raw_args['color'],
        raw_args['no_color'],
    )
    configure_logging(
        use_colors=use_colors,
        level=get_level(quiet=raw_args['quiet'], debug=raw_args['debug']),
    )

    try:
        args = parse_args(raw_args)
        config = RunConfig.from_cli(args)
    except ValidationError as e:
        print("heckegrid: " + str(e), file=sys.stderr)
        raise SystemExit(EXIT_USAGE)
    raise SystemExit(handle_cli(config))


def should_use_colors(enable: bool, disable: bool) -> bool:
    if enable is False and disable is False:
        return sys.stderr.isatty()
    return enable


def handle_cli(config: RunConfig) -> int:
    return runner.run(config)


def parse_argv(argv: list) -> dict:
    try:
        parsed_args = docopt(
            __doc__,
            argv=argv,
            version=get_name_and_version(),
        )
    except DocoptExit as e:
        print(str(e), file=sys.stderr)
        raise SystemExit(EXIT_USAGE)
    return rename_args(parsed_args)


def rename_args(args: dict) -> dict:
    return map_keys(rename_key, args)


def map_keys(f: Callable, d: dict) -> dict:
    return {f(k): v for k, v in d.items()}


def rename_key(key: str) -> str:
    return key \
        .lower() \
        .lstrip('-') \
        .replace('-', '_')
