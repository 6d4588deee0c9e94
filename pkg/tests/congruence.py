# Copyright (C) 2015-2016 Skylable Ltd. <info-copyright@skylable.com>
# License: Apache 2.0, see LICENSE for more details.

from fractions import Fraction

import pytest

from heckegrid import qseries
from heckegrid.congruence import (
    at_least, at_most, check_family_congruence, check_level34_statement,
    combination_series, congruence_chain_check, congruence_target,
    estimate_ap, induction_bounds, lattice_survivors, level34_series,
    make_report, required_precision, rescaled_seed, series_valuation,
    signed_valuation, valuation, valuation_profile,
)
from heckegrid.exceptions import DomainError, IntegralityError, PrecisionError
from heckegrid.generators import GeneratorId
from heckegrid.grid import build_family, derive_params
from heckegrid.qseries import FracSeries


@pytest.fixture(scope='module')
def k4_r4():
    return build_family(derive_params(1, 4, 4), d_max=1, prec_out=6)


@pytest.fixture(scope='module')
def k6_r4():
    return build_family(derive_params(1, 6, 4), d_max=1, prec_out=6)


@pytest.fixture(scope='module')
def level2_minus():
    return build_family(derive_params(2, sign=-1), d_max=1, prec_out=8)


@pytest.mark.parametrize('c,expected', [
    (0, None),
    (250, 3),
    (-25, 2),
    (Fraction(3, 2), 0),
    (7, 0),
])
def test_valuation(c, expected):
    assert valuation(c, 5) == expected


def test_valuation_rejects_denominator():
    with pytest.raises(IntegralityError):
        valuation(Fraction(1, 5), 5)


@pytest.mark.parametrize('c,expected', [
    (250, 3),
    (Fraction(1, 25), -2),
    (Fraction(-50, 3), 2),
    (7, 0),
])
def test_signed_valuation(c, expected):
    assert signed_valuation(c, 5) == expected


def test_series_valuation():
    assert series_valuation(FracSeries(1, {0: 25, 3: 10}, 5), 5) == 1
    assert series_valuation(FracSeries(1, {0: Fraction(1, 5)}, 5), 5) == -1
    assert series_valuation(qseries.zero(1, 5), 5) is None


def test_infinite_valuation_helpers():
    assert at_most([3, None, 1]) == 1
    assert at_most([None]) is None
    assert at_least(None, 4)
    assert at_least(5, 4)
    assert not at_least(3, 4)
    assert at_least(None, None)
    assert not at_least(2, None)


@pytest.mark.parametrize('identities,base,step,expected', [
    ([], 0, 3, [0]),
    ([3], 0, 3, [0, 3]),
    ([6, 6], 0, 3, [0, 3, 6]),
    ([0, 2], 0, 1, [0, 0, 1]),
    ([None], None, 1, [None, None]),
    ([5], 0, 1, [0, 1]),
])
def test_induction_bounds(identities, base, step, expected):
    assert induction_bounds(identities, base, step) == expected


def test_valuation_profile():
    f = FracSeries(1, {-1: 1, 1: 5, 2: 50}, 4)
    profile = valuation_profile(f, 5)
    assert profile.profile == {-1: 0, 1: 1, 2: 2}
    assert profile.min_valuation == 0
    with pytest.raises(PrecisionError):
        valuation_profile(f, 5, start=4)


def test_make_report_verdicts():
    image = FracSeries(1, {1: 25, 2: 50}, 30)
    report = make_report(image, 5, 1, 2, 12, 0)
    assert (report.verdict, report.observed_ap) == ('pass', 0)
    report = make_report(image, 5, 1, 3, 12, 0)
    assert (report.verdict, report.observed_ap) == ('fail', 1)
    report = make_report(image, 5, 1, 2, 3, 0)
    assert report.verdict == 'inconclusive'


def test_make_report_zero_image():
    report = make_report(qseries.zero(1, 30), 7, 1, 1, 12, 0)
    assert report.verdict == 'pass'
    assert report.serialize()['min_valuation'] == 'inf'


@pytest.mark.parametrize('args,p,n,target', [
    ((1, 4, 4), 7, 1, 1),
    ((1, 4, 4), 7, 2, 2),
    ((1, 4, 4), 5, 1, 0),
    ((1, 4, 4), 5, 2, 1),
    ((1, 6, 4), 5, 1, 3),
    ((1, 6, 4), 5, 2, 6),
])
def test_congruence_target_level1(args, p, n, target):
    assert congruence_target(derive_params(*args), p, n) == target


@pytest.mark.parametrize('level,p,n,target', [
    (2, 5, 1, 1),
    (2, 3, 1, 0),
    (2, 3, 2, 1),
    (3, 7, 2, 2),
    (3, 5, 3, 1),
])
def test_congruence_target_higher_levels(level, p, n, target):
    params = derive_params(level, sign=1)
    assert congruence_target(params, p, n) == target


def test_lattice_survivors():
    assert lattice_survivors(10, 7, -1, 6, -1) == 1
    assert lattice_survivors(13, 1, -1, 6, -1) == 3


def test_required_precision():
    assert required_precision(7, 1, 6) == 469


@pytest.mark.parametrize('p,n', [(7, 1), (7, 2), (5, 2)])
def test_level1_congruences(k4_r4, p, n):
    report = check_family_congruence(k4_r4, p, n)
    assert report.verdict == 'pass'
    assert report.survivors >= 10


def test_level1_congruence_rejects_prime(k4_r4):
    with pytest.raises(DomainError):
        check_family_congruence(k4_r4, 3, 1)


@pytest.mark.parametrize('sign,p,n', [
    (1, 5, 1),
    (-1, 3, 1),
    (-1, 3, 2),
    (-1, 5, 1),
])
def test_level2_congruences(sign, p, n):
    family = build_family(derive_params(2, sign=sign), d_max=1, prec_out=8)
    report = check_family_congruence(family, p, n)
    assert report.verdict == 'pass'


@pytest.mark.parametrize('n,target', [(1, 3), (2, 6)])
def test_g1_congruences(k6_r4, n, target):
    report = check_family_congruence(k6_r4, 5, n)
    assert report.target == target
    assert report.verdict == 'pass'
    assert report.min_valuation >= target


@pytest.mark.parametrize('family,p', [
    ('k4_r4', 7),
    ('k4_r4', 5),
    ('k6_r4', 5),
])
def test_estimate_ap(request, family, p):
    family = request.getfixturevalue(family)
    assert estimate_ap(family, p, 2) == 0
    assert estimate_ap(family, p, 0) == 0


@pytest.mark.parametrize('level,generator,p,n', [
    (3, 'f3plus', 7, 1),
    (4, 'f4minus', 5, 1),
    (4, 'f4minus', 5, 2),
])
def test_level34_statement(level, generator, p, n):
    combination = [(1, GeneratorId(generator))]
    report = check_level34_statement(level, combination, p, n)
    assert report.verdict == 'pass'
    assert report.notes


E4 = [(1, GeneratorId('e4'))]
E4_IN_LEVEL2_BASIS = [
    (Fraction(5, 2), GeneratorId('f2plus')),
    (Fraction(-3, 2), GeneratorId('f2minus')),
]


def test_e4_in_level2_basis():
    assert combination_series(E4_IN_LEVEL2_BASIS, 8) == \
        combination_series(E4, 8)


@pytest.mark.parametrize('generator,sign', [
    ('f2minus', 1),
    ('f2plus', -1),
])
def test_level2_quotient_is_grid_seed(generator, sign):
    quotient = level34_series(2, [(1, GeneratorId(generator))], 40)
    seed = rescaled_seed(derive_params(2, sign=sign), 40)
    assert qseries.agree(quotient, seed)


@pytest.mark.parametrize('combination,p,n,target', [
    (E4, 3, 1, 0),
    (E4, 3, 2, 1),
    (E4, 5, 1, 1),
    (E4, 5, 2, 2),
    (E4_IN_LEVEL2_BASIS, 5, 1, 1),
    ([(1, GeneratorId('f2plus'))], 5, 1, 1),
    ([(1, GeneratorId('f2minus'))], 3, 2, 1),
])
def test_level2_statement(combination, p, n, target):
    report = check_level34_statement(2, combination, p, n)
    assert report.target == target
    assert report.verdict == 'pass'
    assert 'f(4z)' in report.notes[0]


@pytest.mark.parametrize('level,p', [(1, 7), (3, 3), (4, 3), (2, 2)])
def test_level34_statement_rejects(level, p):
    with pytest.raises(DomainError):
        check_level34_statement(level, [(1, GeneratorId('f3plus'))], p, 1)


def test_combination_series_needs_integral_exponents():
    with pytest.raises(DomainError):
        combination_series([(1, GeneratorId('h2'))], 5)


def test_combination_series():
    combination = [(2, GeneratorId('f3plus')), (-1, GeneratorId('f3plus'))]
    assert combination_series(combination, 5) == \
        combination_series([(1, GeneratorId('f3plus'))], 5)


def test_chain_check(level2_minus):
    result = congruence_chain_check(level2_minus, 3, 1)
    assert result['u_via_t_matches_direct']
    assert result['identities'] == ['pass']
    assert result['target'] == 0
    assert result['derived_bound'] == 0
    assert result['verdict'] == 'pass'


def test_chain_check_derives_g1_exponent(k6_r4):
    result = congruence_chain_check(k6_r4, 5, 1)
    assert result['derived_bound'] == 3
    assert result['target'] == 3
    assert result['observed_valuation'] >= 3
    assert [term['valuation'] for term in result['terms']][1] >= 3
    assert result['verdict'] == 'pass'


def test_chain_check_derives_level1_exponent(k4_r4):
    result = congruence_chain_check(k4_r4, 7, 1)
    assert result['derived_bound'] == 1
    assert result['target'] == 1
    assert result['verdict'] == 'pass'
