# Copyright (C) 2015-2016 Skylable Ltd. <info-copyright@skylable.com>
# License: Apache 2.0, see LICENSE for more details.

"""q-expansions of the named forms the grids are built from.

Every ``prec`` argument in this module counts whole powers of q: the
returned series is exact for all exponents below ``prec``, whatever its
tick. A series with tick t therefore carries the numerator bound
``prec * t``.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, NamedTuple, Tuple

from sympy import bernoulli, divisor_sigma

from heckegrid import qseries
from heckegrid.exceptions import (
    DomainError, IntegralityError, PrecisionError,
)
from heckegrid.qseries import FracSeries, ceil_div


logger = logging.getLogger(__name__)


EISENSTEIN_WEIGHTS = (2, 4, 6, 8, 10, 14)

# Extra q-powers computed beyond the requested window; covers the loss of
# dividing by Delta and by the level Hauptmodul denominators.
MARGIN = 4


class GeneratorId(NamedTuple):
    name: str
    scale: int = 1

    def __str__(self) -> str:
        if self.scale == 1:
            return self.name
        return '{}@{}'.format(self.name, self.scale)


@lru_cache(maxsize=None)
def phi(prec: int) -> FracSeries:
    """Euler's product prod(1 - q^n) through the pentagonal numbers."""
    coeffs = {}  # type: Dict[int, int]
    m = 0
    while True:
        first = m * (3 * m - 1) // 2
        if first >= prec:
            break
        sign = -1 if m % 2 else 1
        coeffs[first] = sign
        second = m * (3 * m + 1) // 2
        if m and second < prec:
            coeffs[second] = sign
        m += 1
    return FracSeries(1, coeffs, prec)


def eta_quotient(exponents: Dict[int, int], prec: int) -> FracSeries:
    """prod eta(a z)^e over the items of ``exponents``."""
    leading = sum(a * e for a, e in exponents.items())
    window = prec - leading // 24
    product = qseries.one(1, max(window, 1))
    for a, e in sorted(exponents.items()):
        if a < 1:
            raise DomainError("Eta quotient scale must be positive")
        base = qseries.truncate(
            qseries.v_operator(phi(ceil_div(product.prec, a)), a),
            product.prec,
        )
        for _ in range(abs(e)):
            if e > 0:
                product = qseries.mul(product, base)
            else:
                product = qseries.divide(product, base)
    shifted = qseries.shift(qseries.retick(product, 24), leading)
    return qseries.coarsen(qseries.truncate(shifted, 24 * prec))


def eta(prec: int) -> FracSeries:
    if prec <= 1:
        raise PrecisionError("Eta needs a window of at least two powers")
    return eta_quotient({1: 1}, prec)


def eisenstein_constant(k: int) -> Fraction:
    b = bernoulli(k)
    return Fraction(-2 * k) / Fraction(int(b.p), int(b.q))


@lru_cache(maxsize=None)
def eisenstein(k: int, prec: int) -> FracSeries:
    if k not in EISENSTEIN_WEIGHTS:
        raise DomainError("Unsupported Eisenstein weight {}".format(k))
    constant = eisenstein_constant(k)
    coeffs = {0: 1}  # type: Dict[int, qseries.Rational]
    for n in range(1, prec):
        coeffs[n] = constant * int(divisor_sigma(n, k - 1))
    return FracSeries(1, coeffs, prec)


def eisenstein_or_one(k: int, prec: int) -> FracSeries:
    """E_k, with E_0 read as the constant 1."""
    if k == 0:
        return qseries.one(1, prec)
    return eisenstein(k, prec)


def scaled(series: FracSeries, a: int) -> FracSeries:
    return qseries.rescale(series, a)


def combination(terms: Iterable[Tuple[int, FracSeries]], denominator: int) \
        -> FracSeries:
    total = None
    for c, f in terms:
        term = qseries.scale(f, c)
        total = term if total is None else qseries.add(total, term)
    if total is None:
        raise ValueError("Empty combination")
    return qseries.scale(total, Fraction(1, denominator))


def hauptmodul(level: int, power: int, constant: int, top: int, prec: int) \
        -> FracSeries:
    """(eta(z)/eta(Nz))^m + c + top * (eta(Nz)/eta(z))^m."""
    pole = eta_quotient({1: power, level: -power}, prec)
    tail = eta_quotient({1: -power, level: power}, prec)
    return qseries.add(
        qseries.add(pole, qseries.monomial(1, 0, constant, prec)),
        qseries.scale(tail, top),
    )


def build_j(prec: int) -> FracSeries:
    return qseries.divide(
        qseries.pow(eisenstein(4, prec), 3),
        eta_quotient({1: 24}, prec),
    )


def eisenstein_pair(k: int, level: int, sign: int, denominator: int,
                    prec: int) -> FracSeries:
    e = eisenstein(k, prec)
    return combination(
        [(level ** (k // 2), scaled(e, level)), (sign, e)],
        denominator,
    )


BUILDERS = {
    'eta': lambda prec: eta(prec),
    'e2': lambda prec: eisenstein(2, prec),
    'e4': lambda prec: eisenstein(4, prec),
    'e6': lambda prec: eisenstein(6, prec),
    'e8': lambda prec: eisenstein(8, prec),
    'e10': lambda prec: eisenstein(10, prec),
    'e14': lambda prec: eisenstein(14, prec),
    'delta': lambda prec: eta_quotient({1: 24}, prec),
    'j': build_j,
    'j2': lambda prec: hauptmodul(2, 24, 24, 2 ** 12, prec),
    'j3': lambda prec: hauptmodul(3, 12, 12, 3 ** 6, prec),
    'j4': lambda prec: hauptmodul(4, 8, 8, 2 ** 8, prec),
    'h2': lambda prec: eta_quotient({1: 2, 2: 2}, prec),
    'h3': lambda prec: eta_quotient({1: 2, 3: 2}, prec),
    'h4': lambda prec: eta_quotient({2: 4}, prec),
    'f2plus': lambda prec: eisenstein_pair(4, 2, 1, 5, prec),
    'f2minus': lambda prec: eisenstein_pair(4, 2, -1, 3, prec),
    'f3plus': lambda prec: eisenstein_pair(4, 3, 1, 10, prec),
    'f3minus': lambda prec: eisenstein_pair(4, 3, -1, 8, prec),
    'f4plus': lambda prec: combination(
        [
            (16, scaled(eisenstein(4, prec), 4)),
            (-2, scaled(eisenstein(4, prec), 2)),
            (1, eisenstein(4, prec)),
        ],
        15,
    ),
    'f4minus': lambda prec: eisenstein_pair(4, 4, -1, 15, prec),
    'g2plus': lambda prec: eisenstein_pair(6, 2, 1, 9, prec),
    'g2minus': lambda prec: eisenstein_pair(6, 2, -1, 7, prec),
    # E_2 pairs N E_2(Nz) - E_2(z); no weight-based power of N applies.
    'g3minus': lambda prec: combination(
        [(3, scaled(eisenstein(2, prec), 3)), (-1, eisenstein(2, prec))],
        2,
    ),
    'g4minus': lambda prec: combination(
        [(4, scaled(eisenstein(2, prec), 4)), (-1, eisenstein(2, prec))],
        3,
    ),
    'h2cap': lambda prec: eta_quotient({4: 2, 8: 2}, prec),
    'h3cap': lambda prec: eta_quotient({3: 2, 9: 2}, prec),
    'h4cap': lambda prec: eta_quotient({6: 4}, prec),
}  # type: Dict[str, Callable[[int], FracSeries]]

NAMES = tuple(BUILDERS)


def named_form(generator: GeneratorId, prec: int) -> FracSeries:
    if generator.name not in BUILDERS:
        raise DomainError("Unknown generator: {}".format(generator.name))
    if generator.scale < 1:
        raise DomainError("Scale must be positive")
    if prec < 1:
        raise PrecisionError("Window must contain at least one power")
    base_prec = ceil_div(prec, generator.scale) + MARGIN
    series = BUILDERS[generator.name](base_prec)
    if generator.scale > 1:
        series = scaled(series, generator.scale)
    series = qseries.truncate(series, prec * series.t)
    if not qseries.is_integral(series):
        raise IntegralityError(
            "Generator {} has non-integral coefficients".format(generator),
        )
    logger.debug(
        "Computed %s to q^%s (%s terms)", generator, prec, len(series),
    )
    return series


def get_form(name: str, prec: int, scale: int = 1) -> FracSeries:
    return named_form(GeneratorId(name, scale), prec)
