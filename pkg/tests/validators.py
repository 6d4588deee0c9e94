# Copyright (C) 2015-2016 Skylable Ltd. <info-copyright@skylable.com>
# License: Apache 2.0, see LICENSE for more details.

import pytest

from heckegrid.config import CONFIG_FIELDS
from heckegrid.exceptions import ValidationError
from heckegrid.generators import GeneratorId
from heckegrid.validators import (
    validate_args, validate_command, validate_family, validate_form,
    validate_level34, validate_n_max, validate_powers, validate_primes,
    validate_requirements, validate_threads,
)


@pytest.fixture
def raw_args():
    args = {name: None for name in CONFIG_FIELDS}
    args.update({
        'command': 'build',
        'level': 3,
        'sign': -1,
        'chain': False,
        'threads': 4,
        'verbosity': 'normal',
    })
    return args


def test_validate_args(raw_args):
    args = validate_args(raw_args)
    assert args['level'] == 3
    assert args['prec'] == 60
    assert args['powers'] == [1]
    assert args['samples'] == 100
    assert args['seed'] == 0
    assert args['primes'] is None


def test_validate_command():
    assert validate_command('selftest') == 'selftest'
    with pytest.raises(ValidationError):
        validate_command('record')


@pytest.mark.parametrize('family', [
    (1, 6, 4, None),
    (2, None, None, 1),
    (None, None, None, None),
])
def test_validate_family(family):
    assert validate_family(*family) == family


@pytest.mark.parametrize('family', [
    (None, 6, None, None),
    (1, 6, 4, 1),
    (2, 6, None, 1),
    (2, None, None, None),
    (1, 12, 4, None),
])
def test_validate_family_invalid(family):
    with pytest.raises(ValidationError):
        validate_family(*family)


def test_validate_form():
    assert validate_form(None) is None
    assert validate_form(GeneratorId('j4')) == GeneratorId('j4')
    with pytest.raises(ValidationError):
        validate_form(GeneratorId('j5'))
    with pytest.raises(ValidationError):
        validate_form(GeneratorId('j4', 0))


def test_validate_primes():
    assert validate_primes([7, 5, 7]) == [5, 7]
    assert validate_primes(None) is None
    with pytest.raises(ValidationError):
        validate_primes([5, 9])


def test_validate_powers():
    assert validate_powers([2, 1, 2]) == [1, 2]
    with pytest.raises(ValidationError):
        validate_powers([0])


def test_validate_n_max():
    assert validate_n_max(0) == 0
    with pytest.raises(ValidationError):
        validate_n_max(-1)


def test_validate_level34():
    assert validate_level34(4) == 4
    assert validate_level34(2) == 2
    with pytest.raises(ValidationError):
        validate_level34(1)


def test_validate_threads():
    assert validate_threads(1) == 1
    with pytest.raises(ValidationError):
        validate_threads(0)


@pytest.mark.parametrize('changes', [
    {'command': 'build', 'level': None},
    {'command': 'show', 'input_path': 'grid.json'},
    {'command': 'hecke', 'primes': None},
    {'command': 'hecke', 'level': None, 'primes': [5]},
    {'command': 'congruence', 'level34': 3, 'primes': [7]},
    {'command': 'congruence', 'level': None, 'primes': [7]},
])
def test_validate_requirements(raw_args, changes):
    raw_args.update(changes)
    with pytest.raises(ValidationError):
        validate_requirements(raw_args)


@pytest.mark.parametrize('changes', [
    {'command': 'show', 'form': GeneratorId('j')},
    {'command': 'show', 'input_path': 'grid.json', 'd': 1},
    {'command': 'hecke', 'level': None, 'family_path': 'grid.json',
     'primes': [5]},
    {'command': 'multcheck', 'level': None},
    {'command': 'selftest'},
])
def test_validate_requirements_met(raw_args, changes):
    raw_args.update(changes)
    validate_requirements(raw_args)
