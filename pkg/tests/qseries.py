# Copyright (C) 2015-2016 Skylable Ltd. <info-copyright@skylable.com>
# License: Apache 2.0, see LICENSE for more details.

import random
from fractions import Fraction

import pytest

from heckegrid import qseries
from heckegrid.exceptions import PrecisionError, TickError
from heckegrid.qseries import FracSeries


def random_series(rng, t=1, low=-2, length=8):
    coeffs = {
        n: Fraction(rng.randint(-9, 9), rng.randint(1, 4))
        for n in range(low, low + length)
    }
    coeffs[low] = rng.choice([-3, -1, 1, 2])
    return FracSeries(t, coeffs, low + length)


@pytest.fixture
def rng():
    return random.Random(20160301)


def test_normalize():
    assert qseries.normalize(Fraction(4, 2)) == 2
    assert type(qseries.normalize(Fraction(4, 2))) is int
    assert qseries.normalize('3/6') == Fraction(1, 2)
    assert qseries.normalize(7) == 7


def test_series_drops_zeros_and_terms_beyond_window():
    f = FracSeries(1, {0: 1, 1: 0, 5: 3}, 5)
    assert dict(f.coeffs) == {0: 1}
    assert len(f) == 1
    assert f.prec == 5


def test_series_rejects_bad_tick():
    with pytest.raises(TickError):
        FracSeries(0, {}, 1)


def test_coefficient():
    f = FracSeries(6, {-1: 1, 5: -500}, 11)
    assert f.coefficient(5) == -500
    assert f[4] == 0
    assert f.order() == -1
    with pytest.raises(PrecisionError):
        f.coefficient(11)


def test_zero_series_equality_ignores_window():
    assert qseries.zero(1, 3) == qseries.zero(4, 10)
    assert qseries.zero(1, 3).order() == 3
    assert qseries.zero(1, 3) != qseries.one(1, 3)


def test_add_keeps_smaller_window():
    f = FracSeries(1, {0: 1, 1: 1}, 5)
    g = FracSeries(1, {1: -1, 2: 1}, 3)
    assert f + g == FracSeries(1, {0: 1, 2: 1}, 3)
    assert f - f == qseries.zero(1, 5)
    assert -f == FracSeries(1, {0: -1, 1: -1}, 5)


def test_add_rejects_mismatched_ticks():
    with pytest.raises(TickError):
        qseries.add(qseries.one(1, 2), qseries.one(2, 2))


def test_mul():
    f = FracSeries(1, {0: 1, 1: 1}, 5)
    assert f * f == FracSeries(1, {0: 1, 1: 2, 2: 1}, 5)
    assert 3 * f == FracSeries(1, {0: 3, 1: 3}, 5)
    assert f ** 2 == f * f


def test_mul_window_follows_orders():
    f = FracSeries(1, {-1: 1}, 3)
    g = FracSeries(1, {0: 1, 1: 1}, 2)
    product = qseries.mul(f, g)
    assert product.prec == 1
    assert product == FracSeries(1, {-1: 1, 0: 1}, 1)


def test_mul_matches_reference(rng):
    for _ in range(20):
        f, g = random_series(rng), random_series(rng, low=0, length=6)
        assert qseries.mul(f, g) == qseries.mul_reference(f, g)


def test_ring_axioms(rng):
    for _ in range(10):
        f, g, h = (random_series(rng, t=3) for _ in range(3))
        assert f * g == g * f
        assert (f * g) * h == f * (g * h)
        assert qseries.agree(f * (g + h), f * g + f * h)


def test_invert_geometric_series():
    f = FracSeries(1, {0: 1, 1: -1}, 6)
    assert qseries.invert(f) == FracSeries(1, {n: 1 for n in range(6)}, 6)


def test_invert_pole():
    f = FracSeries(1, {2: 1}, 3)
    assert qseries.invert(f) == FracSeries(1, {-2: 1}, -1)


def test_invert_round_trip(rng):
    for _ in range(10):
        f = random_series(rng, t=2)
        product = qseries.mul(f, qseries.invert(f))
        assert product == qseries.one(2, f.prec - f.order())


def test_invert_requested_window_too_large():
    f = FracSeries(1, {0: 1, 1: -1}, 6)
    with pytest.raises(PrecisionError):
        qseries.invert(f, prec_out=7)
    assert qseries.invert(f, prec_out=3).prec == 3


def test_invert_zero():
    with pytest.raises(ZeroDivisionError):
        qseries.invert(qseries.zero(1, 4))


def test_divide_by_zero_series():
    with pytest.raises(ZeroDivisionError):
        qseries.divide(qseries.one(1, 4), qseries.zero(1, 4))


def test_divide_undoes_mul(rng):
    for _ in range(10):
        f = random_series(rng, low=-1)
        g = random_series(rng, low=1, length=5)
        assert qseries.agree(qseries.divide(qseries.mul(f, g), g), f)


def test_pow():
    f = FracSeries(1, {-1: 1, 0: 2}, 3)
    assert qseries.pow(f, 0) == qseries.one(1, 4)
    assert qseries.pow(f, 1) == f
    with pytest.raises(ValueError):
        qseries.pow(f, -1)


def test_monomial_beyond_window():
    with pytest.raises(PrecisionError):
        qseries.monomial(1, 3, 1, 3)


def test_shift_and_truncate():
    f = FracSeries(1, {0: 1, 1: 1}, 3)
    assert qseries.shift(f, -1) == FracSeries(1, {-1: 1, 0: 1}, 2)
    assert qseries.truncate(f, 1) == FracSeries(1, {0: 1}, 1)
    with pytest.raises(PrecisionError):
        qseries.truncate(f, 4)


def test_u_operator():
    f = FracSeries(1, {n: n for n in range(1, 10)}, 10)
    assert qseries.u_operator(f, 2) == \
        FracSeries(1, {1: 2, 2: 4, 3: 6, 4: 8}, 5)


def test_v_operator():
    f = FracSeries(1, {0: 1, 1: 1}, 4)
    assert qseries.v_operator(f, 3) == FracSeries(1, {0: 1, 3: 1}, 12)


@pytest.mark.parametrize('p', [2, 3, 5, 7])
def test_u_undoes_v(rng, p):
    f = random_series(rng, t=6)
    assert qseries.u_operator(qseries.v_operator(f, p), p) == f


def test_retick():
    f = FracSeries(6, {-1: 1, 5: -4}, 11)
    assert qseries.retick(f, 12) == FracSeries(12, {-2: 1, 10: -4}, 22)
    with pytest.raises(TickError):
        qseries.retick(f, 1)
    with pytest.raises(TickError):
        qseries.retick(f, 4)


def test_coarsen():
    f = FracSeries(6, {-6: 1, 0: 744, 6: 196884}, 12)
    assert qseries.coarsen(f) == \
        FracSeries(1, {-1: 1, 0: 744, 1: 196884}, 2)


def test_rescale():
    f = FracSeries(6, {-1: 1, 5: -4}, 11)
    assert qseries.rescale(f, 6) == FracSeries(1, {-1: 1, 5: -4}, 11)


def test_common_tick():
    f, g = qseries.common_tick([qseries.one(2, 2), qseries.one(3, 3)])
    assert (f.t, g.t) == (6, 6)
    assert (f.prec, g.prec) == (6, 6)


def test_lattice_step():
    assert qseries.lattice_step(FracSeries(6, {-1: 1, 5: 2}, 12)) == 6
    assert qseries.lattice_step(FracSeries(6, {-1: 1, 1: 2}, 12)) == 2


def test_agree_and_first_difference():
    f = FracSeries(1, {0: 1, 1: 2, 2: 3}, 3)
    g = FracSeries(1, {0: 1, 1: 2}, 2)
    h = FracSeries(1, {0: 1, 1: 5}, 2)
    assert qseries.agree(f, g)
    assert qseries.first_difference(f, g) is None
    assert qseries.first_difference(f, h) == (1, 2, 5)


def test_lcd_and_integrality():
    f = FracSeries(1, {0: Fraction(1, 2), 1: Fraction(2, 3), 2: 5}, 3)
    assert qseries.lcd(f) == 6
    assert not qseries.is_integral(f)
    assert qseries.is_integral(qseries.scale(f, 6))


def test_json():
    f = FracSeries(4, {-1: 1, 3: Fraction(-78, 5)}, 8)
    payload = qseries.to_json(f)
    assert payload == {'t': 4, 'prec': 8, 'coeffs': {'-1': '1', '3': '-78/5'}}
    assert qseries.from_json(payload) == f


@pytest.mark.parametrize('f,terms,expected', [
    (
        FracSeries(6, {-1: 1, 5: -500}, 11),
        None,
        'q^(-1/6) - 500*q^(5/6) + O(q^(11/6))',
    ), (
        FracSeries(1, {-1: 1, 0: 744, 1: 196884}, 2),
        None,
        'q^-1 + 744 + 196884*q + O(q^2)',
    ), (
        FracSeries(1, {-1: 1, 0: 744, 1: 196884}, 2),
        1,
        'q^-1 + O(q^2)',
    ), (
        qseries.zero(1, 3),
        None,
        '0 + O(q^3)',
    ), (
        FracSeries(2, {0: Fraction(-1, 2)}, 2),
        None,
        '-1/2 + O(q)',
    ),
])
def test_format_series(f, terms, expected):
    assert qseries.format_series(f, terms) == expected


def pipeline(f, g):
    product = qseries.mul(f, g)
    quotient = qseries.divide(product, qseries.add(f, qseries.one(1, f.prec)))
    mixed = qseries.mul(quotient, qseries.invert(g))
    shuffled = qseries.v_operator(qseries.u_operator(mixed, 2), 3)
    return qseries.add(shuffled, qseries.pow(g, 2))


@pytest.mark.parametrize('short', [12, 20, 31])
def test_wider_inputs_never_change_known_coefficients(rng, short):
    f = random_series(rng, low=-2, length=60)
    g = random_series(rng, low=0, length=60)
    narrow = pipeline(qseries.truncate(f, short), qseries.truncate(g, short))
    wide = pipeline(f, g)
    assert narrow.prec < wide.prec
    assert qseries.agree(narrow, wide)
