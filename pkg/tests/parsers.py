# Copyright (C) 2015-2016 Skylable Ltd. <info-copyright@skylable.com>
# License: Apache 2.0, see LICENSE for more details.

from fractions import Fraction

import pytest

from heckegrid.exceptions import ValidationError
from heckegrid.generators import GeneratorId
from heckegrid.parsers import (
    parse_args, parse_coefficient, parse_combination, parse_form_name,
    parse_int, parse_level, parse_powers, parse_primes, parse_sign,
    parse_term, parse_threads, split_list,
)


def test_parse_args():
    raw_args = {
        'congruence': True,
        'level': '2',
        'sign': '-',
        'prec': '60',
        'terms': '8',
        'threads': '4',
        'p': '5, 7',
        'n': '1,2',
        'nmax': None,
        'form': None,
        'combination': None,
        'json': 'out.json',
    }
    args = parse_args(raw_args)
    assert args['congruence'] is True
    assert args['json'] == 'out.json'
    assert args['level'] == 2
    assert args['sign'] == -1
    assert args['prec'] == 60
    assert args['terms'] == 8
    assert args['threads'] == 4
    assert args['p'] == [5, 7]
    assert args['n'] == [1, 2]
    assert args['nmax'] is None
    assert args['k'] is None


def test_parse_int():
    assert parse_int('12', 'k') == 12
    with pytest.raises(ValidationError):
        parse_int('twelve', 'k')


def test_parse_level():
    assert parse_level('4') == 4
    with pytest.raises(ValidationError):
        parse_level('5')


@pytest.mark.parametrize('value,expected', [
    (None, None),
    ('+', 1),
    ('plus', 1),
    (' -1', -1),
    ('Minus', -1),
])
def test_parse_sign(value, expected):
    assert parse_sign(value) == expected


def test_parse_sign_invalid():
    with pytest.raises(ValidationError):
        parse_sign('0')


def test_parse_threads():
    assert parse_threads('1') == 1
    assert parse_threads(None) is None
    with pytest.raises(ValidationError):
        parse_threads('garbage')


def test_split_list():
    assert split_list('5, 7,,11 ') == ['5', '7', '11']


def test_parse_primes_and_powers():
    assert parse_primes('5,7') == [5, 7]
    assert parse_powers('3') == [3]
    assert parse_primes(None) is None
    with pytest.raises(ValidationError):
        parse_primes(',')
    with pytest.raises(ValidationError):
        parse_powers('1,x')


@pytest.mark.parametrize('value,expected', [
    (None, None),
    ('j2', GeneratorId('j2')),
    ('e4@3', GeneratorId('e4', 3)),
])
def test_parse_form_name(value, expected):
    assert parse_form_name(value) == expected


@pytest.mark.parametrize('value', ['@3', 'e4@three'])
def test_parse_form_name_invalid(value):
    with pytest.raises(ValidationError):
        parse_form_name(value)


def test_parse_coefficient():
    assert parse_coefficient('-1/2') == Fraction(-1, 2)
    assert parse_coefficient('4/2') == 2
    with pytest.raises(ValidationError):
        parse_coefficient('1/0')
    with pytest.raises(ValidationError):
        parse_coefficient('half')


@pytest.mark.parametrize('value,expected', [
    ('f3plus', (1, GeneratorId('f3plus'))),
    ('-e4@3', (-1, GeneratorId('e4', 3))),
    ('3/4*e6', (Fraction(3, 4), GeneratorId('e6'))),
])
def test_parse_term(value, expected):
    assert parse_term(value) == expected


def test_parse_combination():
    assert parse_combination('1/2*e4,-1/2*e4@3') == [
        (Fraction(1, 2), GeneratorId('e4')),
        (Fraction(-1, 2), GeneratorId('e4', 3)),
    ]
    assert parse_combination(None) is None
    with pytest.raises(ValidationError):
        parse_combination(' , ')
