# Copyright (C) 2015-2016 Skylable Ltd. <info-copyright@skylable.com>
# License: Apache 2.0, see LICENSE for more details.

"""Truncated Laurent series in q^(1/t) with exact rational coefficients.

A series knows its coefficients a(n) for every numerator n < prec; nothing
is claimed at or beyond prec. Coefficients are kept as ``int`` whenever
they are integral and as ``Fraction`` otherwise, so integral series are
multiplied with plain integer arithmetic.
"""

from collections import defaultdict
from fractions import Fraction
from functools import reduce
from math import gcd
from types import MappingProxyType
from typing import (
    Dict, Iterable, List, Mapping, Optional, Tuple, Union,
)

from heckegrid.exceptions import PrecisionError, TickError


Rational = Union[int, Fraction]
Items = List[Tuple[int, Rational]]


def normalize(value: Union[int, Fraction, str]) -> Rational:
    if isinstance(value, int) and not isinstance(value, bool):
        return value
    value = Fraction(value)
    if value.denominator == 1:
        return value.numerator
    return value


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


class FracSeries:

    __slots__ = ('_t', '_coeffs', '_prec')

    def __init__(self, t: int, coeffs: Mapping[int, Rational], prec: int) \
            -> None:
        if t < 1:
            raise TickError("Tick must be positive, got {}".format(t))
        table = {}  # type: Dict[int, Rational]
        for n, c in coeffs.items():
            if n < prec and c != 0:
                table[n] = normalize(c)
        self._t = t
        self._coeffs = table
        self._prec = prec

    @property
    def t(self) -> int:
        return self._t

    @property
    def prec(self) -> int:
        return self._prec

    @property
    def coeffs(self) -> Mapping[int, Rational]:
        return MappingProxyType(self._coeffs)

    def items(self) -> Items:
        return sorted(self._coeffs.items())

    def is_zero(self) -> bool:
        return not self._coeffs

    def order(self) -> int:
        """Least stored numerator, or prec for the zero series."""
        if not self._coeffs:
            return self._prec
        return min(self._coeffs)

    def coefficient(self, n: int) -> Rational:
        if n >= self._prec:
            raise PrecisionError(
                "Coefficient {} is beyond the known window {}".format(
                    n, self._prec,
                ),
            )
        return self._coeffs.get(n, 0)

    def __getitem__(self, n: int) -> Rational:
        return self.coefficient(n)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FracSeries):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return (
            self._t == other._t and
            self._prec == other._prec and
            self._coeffs == other._coeffs
        )

    __hash__ = None  # type: ignore

    def __repr__(self) -> str:
        return 'FracSeries({})'.format(format_series(self, terms=4))

    def __add__(self, other: 'FracSeries') -> 'FracSeries':
        return add(self, other)

    def __sub__(self, other: 'FracSeries') -> 'FracSeries':
        return sub(self, other)

    def __neg__(self) -> 'FracSeries':
        return neg(self)

    def __mul__(self, other: Union['FracSeries', int, Fraction]) \
            -> 'FracSeries':
        if isinstance(other, FracSeries):
            return mul(self, other)
        return scale(self, other)

    __rmul__ = __mul__

    def __pow__(self, m: int) -> 'FracSeries':
        return pow(self, m)


def monomial(t: int, n: int, c: Rational, prec: int) -> FracSeries:
    if n >= prec:
        raise PrecisionError(
            "Monomial q^({}/{}) does not fit below {}".format(n, t, prec),
        )
    return FracSeries(t, {n: c}, prec)


def one(t: int, prec: int) -> FracSeries:
    return monomial(t, 0, 1, prec)


def zero(t: int, prec: int) -> FracSeries:
    return FracSeries(t, {}, prec)


def check_ticks(f: FracSeries, g: FracSeries) -> None:
    if f.t != g.t:
        raise TickError("Mismatched ticks: {} and {}".format(f.t, g.t))


def add(f: FracSeries, g: FracSeries) -> FracSeries:
    check_ticks(f, g)
    table = dict(f.coeffs)  # type: Dict[int, Rational]
    for n, c in g.coeffs.items():
        table[n] = table.get(n, 0) + c
    return FracSeries(f.t, table, min(f.prec, g.prec))


def neg(f: FracSeries) -> FracSeries:
    return FracSeries(f.t, {n: -c for n, c in f.coeffs.items()}, f.prec)


def sub(f: FracSeries, g: FracSeries) -> FracSeries:
    return add(f, neg(g))


def scale(f: FracSeries, c: Rational) -> FracSeries:
    c = normalize(c)
    return FracSeries(f.t, {n: c * a for n, a in f.coeffs.items()}, f.prec)


def shift(f: FracSeries, n: int) -> FracSeries:
    """Multiply by q^(n/t)."""
    return FracSeries(
        f.t,
        {m + n: c for m, c in f.coeffs.items()},
        f.prec + n,
    )


def truncate(f: FracSeries, prec: int) -> FracSeries:
    if prec > f.prec:
        raise PrecisionError(
            "Cannot extend window {} to {}".format(f.prec, prec),
        )
    return FracSeries(f.t, f.coeffs, prec)


def mul(f: FracSeries, g: FracSeries) -> FracSeries:
    check_ticks(f, g)
    prec = min(f.prec + g.order(), g.prec + f.order())
    table = convolve(f.items(), g.items(), prec)
    return FracSeries(f.t, table, prec)


def convolve(f_items: Items, g_items: Items, prec: int) \
        -> Dict[int, Rational]:
    # Both inputs are sorted by numerator.
    table = defaultdict(int)  # type: Dict[int, Rational]
    for i, a in f_items:
        bound = prec - i
        for j, b in g_items:
            if j >= bound:
                break
            table[i + j] += a * b
    return table


def mul_reference(f: FracSeries, g: FracSeries) -> FracSeries:
    """Schoolbook product over ``Fraction`` only."""
    check_ticks(f, g)
    prec = min(f.prec + g.order(), g.prec + f.order())
    table = {}  # type: Dict[int, Fraction]
    for i, a in f.coeffs.items():
        for j, b in g.coeffs.items():
            if i + j < prec:
                table[i + j] = \
                    table.get(i + j, Fraction(0)) + Fraction(a) * Fraction(b)
    return FracSeries(f.t, table, prec)


def divide(f: FracSeries, g: FracSeries) -> FracSeries:
    """Exact quotient f/g, computed by the triangular recurrence."""
    check_ticks(f, g)
    if g.is_zero():
        raise ZeroDivisionError("Division by the zero series")
    vg = g.order()
    vf = f.order()
    prec = min(f.prec - vg, g.prec - 2 * vg + vf)
    if f.is_zero():
        return zero(f.t, prec)

    g0 = g.coeffs[vg]
    inverse = normalize(Fraction(1) / Fraction(g0)) \
        if abs(g0) != 1 else g0
    tail = [(k - vg, c) for k, c in g.items() if k > vg]
    step = lattice_gcd(
        [k - vf for k in f.coeffs] + [k for k, _ in tail],
    )
    start = vf - vg
    quotient = {}  # type: Dict[int, Rational]
    m = start
    while m < prec:
        total = f.coeffs.get(m + vg, 0)
        for k, c in tail:
            if k > m - start:
                break
            h = quotient.get(m - k)
            if h is not None:
                total -= c * h
        if total != 0:
            quotient[m] = normalize(total * inverse)
        if step == 0:
            break
        m += step
    return FracSeries(f.t, quotient, prec)


def invert(f: FracSeries, prec_out: Optional[int] = None) -> FracSeries:
    if f.is_zero():
        raise ZeroDivisionError("Cannot invert the zero series")
    v = f.order()
    max_prec = f.prec - 2 * v
    if max_prec <= -v:
        raise PrecisionError("Window of the input is too narrow to invert")
    if prec_out is not None and prec_out > max_prec:
        raise PrecisionError(
            "Inverse is known below {} only, {} requested".format(
                max_prec, prec_out,
            ),
        )
    inverse = divide(one(f.t, f.prec - v), f)
    if prec_out is not None:
        return truncate(inverse, prec_out)
    return inverse


def pow(f: FracSeries, m: int) -> FracSeries:
    if m < 0:
        raise ValueError("Negative powers go through invert()")
    if m == 0:
        return one(f.t, f.prec - f.order())
    result = f
    for _ in range(m - 1):
        result = mul(result, f)
    return result


def u_operator(f: FracSeries, p: int) -> FracSeries:
    table = {
        n // p: c for n, c in f.coeffs.items() if n % p == 0
    }
    return FracSeries(f.t, table, ceil_div(f.prec, p))


def v_operator(f: FracSeries, m: int) -> FracSeries:
    table = {n * m: c for n, c in f.coeffs.items()}
    return FracSeries(f.t, table, f.prec * m)


def retick(f: FracSeries, t_new: int) -> FracSeries:
    if t_new < 1:
        raise TickError("Tick must be positive, got {}".format(t_new))
    if t_new % f.t == 0:
        m = t_new // f.t
        table = {n * m: c for n, c in f.coeffs.items()}
        return FracSeries(t_new, table, f.prec * m)
    if f.t % t_new == 0:
        m = f.t // t_new
        if any(n % m for n in f.coeffs):
            raise TickError(
                "Series is not supported on multiples of {}/{}".format(
                    m, f.t,
                ),
            )
        table = {n // m: c for n, c in f.coeffs.items()}
        return FracSeries(t_new, table, ceil_div(f.prec, m))
    raise TickError("Cannot retick from {} to {}".format(f.t, t_new))


def coarsen(f: FracSeries) -> FracSeries:
    """Re-express f over the smallest tick its support allows."""
    divisor = reduce(gcd, f.coeffs, f.t)
    return retick(f, f.t // divisor)


def rescale(f: FracSeries, a: int) -> FracSeries:
    """Substitute z -> az."""
    return coarsen(v_operator(f, a))


def common_tick(series: Iterable[FracSeries]) -> List[FracSeries]:
    series = list(series)
    t = reduce(lcm, (f.t for f in series), 1)
    return [retick(f, t) for f in series]


def lattice_gcd(numbers: Iterable[int]) -> int:
    return reduce(gcd, numbers, 0)


def lattice_step(f: FracSeries) -> int:
    """Spacing of the residue class that carries f, at most f.t."""
    v = f.order()
    return lattice_gcd([f.t] + [n - v for n in f.coeffs])


def agree(f: FracSeries, g: FracSeries) -> bool:
    """Compare two series on their common window."""
    check_ticks(f, g)
    window = min(f.prec, g.prec)
    return truncate(f, window) == truncate(g, window)


def first_difference(f: FracSeries, g: FracSeries) \
        -> Optional[Tuple[int, Rational, Rational]]:
    check_ticks(f, g)
    window = min(f.prec, g.prec)
    numerators = sorted(
        n for n in set(f.coeffs) | set(g.coeffs) if n < window
    )
    for n in numerators:
        a, b = f.coeffs.get(n, 0), g.coeffs.get(n, 0)
        if a != b:
            return n, a, b
    return None


def lcd(f: FracSeries) -> int:
    return reduce(
        lcm,
        (Fraction(c).denominator for c in f.coeffs.values()),
        1,
    )


def is_integral(f: FracSeries) -> bool:
    return all(isinstance(c, int) for c in f.coeffs.values())


def to_json(f: FracSeries) -> dict:
    return {
        't': f.t,
        'prec': f.prec,
        'coeffs': {str(n): str(c) for n, c in f.items()},
    }


def from_json(payload: Mapping) -> FracSeries:
    coeffs = {
        int(n): normalize(Fraction(c))
        for n, c in payload['coeffs'].items()
    }
    return FracSeries(int(payload['t']), coeffs, int(payload['prec']))


def format_exponent(n: int, t: int) -> str:
    exponent = Fraction(n, t)
    if exponent == 0:
        return ''
    if exponent == 1:
        return 'q'
    if exponent.denominator == 1:
        return 'q^{}'.format(exponent.numerator)
    return 'q^({})'.format(exponent)


def format_term(n: int, t: int, c: Rational, first: bool) -> str:
    power = format_exponent(n, t)
    magnitude = abs(c)
    if power and magnitude == 1:
        body = power
    elif power:
        body = '{}*{}'.format(magnitude, power)
    else:
        body = str(magnitude)
    if first:
        return ('-' if c < 0 else '') + body
    return (' - ' if c < 0 else ' + ') + body


def format_series(f: FracSeries, terms: Optional[int] = None) -> str:
    items = f.items()
    if terms is not None:
        items = items[:terms]
    text = ''.join(
        format_term(n, f.t, c, first=(i == 0))
        for i, (n, c) in enumerate(items)
    ) or '0'
    return text + ' + O({})'.format(
        format_exponent(f.prec, f.t) or '1',
    )
