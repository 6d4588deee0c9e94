# Copyright (C) 2015-2016 Skylable Ltd. <info-copyright@skylable.com>
# License: Apache 2.0, see LICENSE for more details.

import os
from typing import Any, Dict, Mapping, Optional

from heckegrid.grid import GridParams, derive_params
from heckegrid.parsers import parse_threads


COMMANDS = ('build', 'show', 'hecke', 'congruence', 'multcheck', 'selftest')

THREADS_ENV_VAR = 'HECKEGRID_THREADS'
DEFAULT_THREADS = 4
DEFAULT_PREC = 60


CONFIG_FIELDS = (
    'command', 'level', 'k', 'r', 'sign', 'd_max', 'prec', 'out',
    'input_path', 'd', 'form', 'terms', 'family_path', 'primes', 'powers',
    'n_max', 'level34', 'combination', 'chain', 'report', 'json_path',
    'samples', 'seed', 'threads', 'verbosity',
)

# docopt key -> RunConfig field
CLI_NAMES = {
    'dmax': 'd_max',
    'in': 'input_path',
    'family': 'family_path',
    'p': 'primes',
    'n': 'powers',
    'nmax': 'n_max',
    'json': 'json_path',
}


def resolve_threads(threads: Optional[int],
                    environ: Mapping[str, str] = os.environ) \
        -> Optional[int]:
    """--threads, then $HECKEGRID_THREADS, then the default."""
    if threads is not None:
        return threads
    if THREADS_ENV_VAR in environ:
        return parse_threads(environ[THREADS_ENV_VAR])
    return DEFAULT_THREADS


def get_command(args: Mapping[str, Any]) -> str:
    for command in COMMANDS:
        if args.get(command) is True:
            return command
    raise NotImplementedError()


def get_verbosity(args: Mapping[str, Any]) -> str:
    if args.get('debug'):
        return 'debug'
    if args.get('quiet'):
        return 'quiet'
    return 'normal'


class RunConfig:

    def __init__(self, **kwargs: Any) -> None:
        from heckegrid.validators import validate_args
        kwargs = validate_args(kwargs)
        self.command = kwargs['command']
        self.level = kwargs['level']
        self.k = kwargs['k']
        self.r = kwargs['r']
        self.sign = kwargs['sign']
        self.d_max = kwargs['d_max']
        self.prec = kwargs['prec']
        self.out = kwargs['out']
        self.input_path = kwargs['input_path']
        self.d = kwargs['d']
        self.form = kwargs['form']
        self.terms = kwargs['terms']
        self.family_path = kwargs['family_path']
        self.primes = kwargs['primes']
        self.powers = kwargs['powers']
        self.n_max = kwargs['n_max']
        self.level34 = kwargs['level34']
        self.combination = kwargs['combination']
        self.chain = kwargs['chain']
        self.report = kwargs['report']
        self.json_path = kwargs['json_path']
        self.samples = kwargs['samples']
        self.seed = kwargs['seed']
        self.threads = kwargs['threads']
        self.verbosity = kwargs['verbosity']

    @classmethod
    def from_cli(cls, args: Mapping[str, Any],
                 environ: Mapping[str, str] = os.environ) -> 'RunConfig':
        kwargs = {
            field: args.get(name)
            for name, field in CLI_NAMES.items()
        }
        for field in CONFIG_FIELDS:
            if field not in kwargs:
                kwargs[field] = args.get(field)
        kwargs['command'] = get_command(args)
        kwargs['chain'] = bool(args.get('chain'))
        kwargs['threads'] = resolve_threads(args.get('threads'), environ)
        kwargs['verbosity'] = get_verbosity(args)
        return cls(**kwargs)

    def family_params(self) -> GridParams:
        return derive_params(self.level, self.k, self.r, self.sign)

    def serialize(self) -> Dict[str, Any]:
        payload = {name: getattr(self, name) for name in CONFIG_FIELDS}
        if self.form is not None:
            payload['form'] = str(self.form)
        if self.combination is not None:
            payload['combination'] = [
                [str(c), str(generator)] for c, generator in self.combination
            ]
        return payload
