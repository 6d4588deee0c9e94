# Copyright (C) 2015-2016 Skylable Ltd. <info-copyright@skylable.com>
# License: Apache 2.0, see LICENSE for more details.

from fractions import Fraction

import pytest

from heckegrid.config import (
    CONFIG_FIELDS, DEFAULT_THREADS, THREADS_ENV_VAR, RunConfig, get_command,
    get_verbosity, resolve_threads,
)
from heckegrid.exceptions import ValidationError
from heckegrid.generators import GeneratorId


@pytest.fixture
def args():
    return {
        'hecke': True,
        'build': False,
        'level': 1,
        'k': 6,
        'r': 4,
        'sign': None,
        'dmax': None,
        'prec': 60,
        'p': [7, 5, 7],
        'n': [2, 1],
        'threads': None,
        'quiet': True,
        'debug': False,
    }


def test_resolve_threads():
    assert resolve_threads(3, {THREADS_ENV_VAR: '8'}) == 3
    assert resolve_threads(None, {THREADS_ENV_VAR: '8'}) == 8
    assert resolve_threads(None, {}) == DEFAULT_THREADS
    with pytest.raises(ValidationError):
        resolve_threads(None, {THREADS_ENV_VAR: 'many'})


def test_get_command():
    assert get_command({'show': True}) == 'show'
    with pytest.raises(NotImplementedError):
        get_command({'show': False})


@pytest.mark.parametrize('args,expected', [
    ({}, 'normal'),
    ({'quiet': True}, 'quiet'),
    ({'quiet': True, 'debug': True}, 'debug'),
])
def test_get_verbosity(args, expected):
    assert get_verbosity(args) == expected


def test_config_from_cli(args):
    config = RunConfig.from_cli(args, environ={})
    assert config.command == 'hecke'
    assert config.primes == [5, 7]
    assert config.powers == [1, 2]
    assert config.threads == DEFAULT_THREADS
    assert config.verbosity == 'quiet'
    assert config.chain is False
    assert config.samples == 100
    assert config.family_params().t == 6


def test_config_from_cli_env_threads(args):
    config = RunConfig.from_cli(args, environ={THREADS_ENV_VAR: '2'})
    assert config.threads == 2


def test_config_validates(args):
    args['p'] = None
    with pytest.raises(ValidationError):
        RunConfig.from_cli(args, environ={})


def test_config_serialize(args):
    args.update({
        'hecke': False,
        'congruence': True,
        'level': None,
        'k': None,
        'r': None,
        'level34': 3,
        'combination': [(Fraction(1, 2), GeneratorId('e4', 3))],
    })
    payload = RunConfig.from_cli(args, environ={}).serialize()
    assert set(payload) == set(CONFIG_FIELDS)
    assert payload['command'] == 'congruence'
    assert payload['combination'] == [['1/2', 'e4@3']]
    assert payload['form'] is None
