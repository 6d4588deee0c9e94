# Copyright (C) 2015-2016 Skylable Ltd. <info-copyright@skylable.com>
# License: Apache 2.0, see LICENSE for more details.

import logging
from fractions import Fraction
from typing import Any, Dict, List, NamedTuple, Optional, Tuple

from sympy import isprime

from heckegrid import qseries
from heckegrid.exceptions import DomainError, PrecisionError, TickError
from heckegrid.grid import (
    GridFamily, GridParams, build_family, ladder_sides, seed_series,
)
from heckegrid.qseries import FracSeries, Rational, ceil_div, normalize


logger = logging.getLogger(__name__)


MIN_SURVIVORS = 10


class HeckeSpec(NamedTuple):
    t: int
    weight: int
    p: int
    n: int = 1
    level: int = 1
    s: int = 1

    @classmethod
    def for_family(cls, params: GridParams, p: int, n: int) -> 'HeckeSpec':
        return cls(params.t, params.weight, p, n, params.level, params.s)

    def eigen_factor(self) -> Rational:
        """p^(w - 1), rational for negative weights."""
        return normalize(Fraction(self.p) ** (self.weight - 1))


def admissibility_problems(spec: HeckeSpec) -> List[str]:
    problems = []
    p = spec.p
    if p == 2 or not isprime(p):
        problems.append("{} is not an odd prime".format(p))
        return problems
    if spec.level % p == 0:
        problems.append("{} divides the level {}".format(p, spec.level))
    if (p * p - 1) % (2 * spec.t):
        problems.append("{}^2 is not 1 modulo {}".format(p, 2 * spec.t))
    if spec.level == 1 and spec.s % p == 0:
        problems.append(
            "{} divides s={}; T({}) meets an extra pole".format(p, spec.s, p),
        )
    if spec.n < 1:
        problems.append("n must be positive")
    return problems


def is_admissible(spec: HeckeSpec) -> bool:
    return not admissibility_problems(spec)


def check_admissible(spec: HeckeSpec) -> None:
    problems = admissibility_problems(spec)
    if problems:
        raise DomainError(
            "Prime {} is not admissible: {}".format(
                spec.p, '; '.join(problems),
            ),
        )


def hecke_step(f: FracSeries, p: int, factor: Rational) -> FracSeries:
    """b(n) = a(pn) + factor * a(n/p)."""
    prec = ceil_div(f.prec, p)
    table = dict(qseries.u_operator(f, p).coeffs)
    for m, c in f.coeffs.items():
        n = m * p
        if n < prec:
            table[n] = table.get(n, 0) + factor * c
    return FracSeries(f.t, table, prec)


def t_operator(f: FracSeries, spec: HeckeSpec) -> FracSeries:
    if f.t != spec.t:
        raise TickError(
            "Series has tick {}, operator expects {}".format(f.t, spec.t),
        )
    check_admissible(spec)
    return hecke_step(f, spec.p, spec.eigen_factor())


def check_window(f: FracSeries, power: int) -> None:
    if f.is_zero():
        return
    v = f.order()
    lowest = min(v * power, ceil_div(v, power))
    if ceil_div(f.prec, power) <= lowest:
        raise PrecisionError(
            "Window {} is too short for an operator of index {}".format(
                f.prec, power,
            ),
        )


def hecke_power(f: FracSeries, p: int, n: int, factor: Rational) \
        -> FracSeries:
    check_window(f, p ** n)
    previous, current = f, hecke_step(f, p, factor)
    for _ in range(n - 1):
        previous, current = current, qseries.sub(
            hecke_step(current, p, factor),
            qseries.scale(previous, factor),
        )
    return current


def t_power_operator(f: FracSeries, spec: HeckeSpec) -> FracSeries:
    if f.t != spec.t:
        raise TickError(
            "Series has tick {}, operator expects {}".format(f.t, spec.t),
        )
    check_admissible(spec)
    if spec.n == 0:
        return f
    return hecke_power(f, spec.p, spec.n, spec.eigen_factor())


def u_power(f: FracSeries, p: int, n: int) -> FracSeries:
    for _ in range(n):
        f = qseries.u_operator(f, p)
    return f


def u_power_via_t(f: FracSeries, spec: HeckeSpec) -> FracSeries:
    """U(p^n) as T(p^n) minus the V(p^j) U(p^(n-j)) terms."""
    if f.t != 1:
        raise TickError("U through T needs integer exponents")
    if spec.n == 0:
        return f
    p, factor = spec.p, spec.eigen_factor()
    result = hecke_power(f, p, spec.n, factor)
    for j in range(1, spec.n + 1):
        lower = u_power_via_t(f, spec._replace(n=spec.n - j))
        term = qseries.v_operator(lower, p ** j)
        result = qseries.sub(
            result, qseries.scale(term, normalize(Fraction(factor) ** j)),
        )
    return result


def identity_window(params: GridParams) -> int:
    """Numerator window leaving MIN_SURVIVORS + 2 lattice points."""
    floor = max(side.floor for side in ladder_sides(params))
    return floor + params.t * (MIN_SURVIVORS + 2)


def identity_ready_family(params: GridParams, p: int, n: int,
                          prec: Optional[int] = None) -> GridFamily:
    return build_family(
        params,
        d_max=p ** n * params.first_d,
        prec_out=identity_window(params) if prec is None else prec,
    )


def identity_ready_seed(family: GridFamily, p: int, n: int) -> FracSeries:
    """The seed f_s at the window T(p^n) needs to cover family.prec."""
    side = family.side_of(family.params.first_d)
    return seed_series(side, family.params.t, p ** n * family.prec)


def count_survivors(window: int, d: int, floor: int, t: int) -> int:
    return sum(1 for m in range(floor + 1, window) if (m + d) % t == 0)


def support_class_violations(f: FracSeries, d: int) -> List[int]:
    return sorted(n for n in f.coeffs if (n + d) % f.t)


def hecke_image_support(family: GridFamily, p: int, n: int = 1) \
        -> List[int]:
    """Numerators of T(p^n) f_s outside the class of f_{p^n s}."""
    params = family.params
    seed = identity_ready_seed(family, p, n)
    image = t_power_operator(seed, HeckeSpec.for_family(params, p, n))
    return support_class_violations(image, p ** n * params.first_d)


class IdentityReport(NamedTuple):
    family: str
    p: int
    n: int
    target_d: int
    scale: Rational
    correction: Rational
    window: int
    survivors: int
    verdict: str
    first_discrepancy: Optional[Tuple[int, Rational, Rational]]
    lhs: FracSeries
    rhs: FracSeries

    def serialize(self) -> Dict[str, Any]:
        discrepancy = None
        if self.first_discrepancy is not None:
            m, a, b = self.first_discrepancy
            discrepancy = {'n': m, 'lhs': str(a), 'rhs': str(b)}
        return {
            'family': self.family,
            'p': self.p,
            'n': self.n,
            'target': 'f_{}'.format(self.target_d),
            'scale': str(self.scale),
            'correction': str(self.correction),
            'window': self.window,
            'survivors': self.survivors,
            'verdict': self.verdict,
            'first_discrepancy': discrepancy,
            'lhs': qseries.to_json(self.lhs),
            'rhs': qseries.to_json(self.rhs),
        }


def check_grid_identity(family: GridFamily, p: int, n: int,
                        seed: Optional[FracSeries] = None) -> IdentityReport:
    """Compare T(p^n) f_s against the ladder member the theorem names.

    The right side is p^((w-1)n) f_{p^n s}, plus a_s(p^n s) times the
    holomorphic member when p^n is -1 modulo t and the family has one.
    """
    params = family.params
    t = params.t
    spec = HeckeSpec.for_family(params, p, n)
    check_admissible(spec)
    power = p ** n
    target_d = power * params.first_d
    target = family.form(target_d)
    if seed is None:
        seed = identity_ready_seed(family, p, n)

    lhs = t_power_operator(seed, spec)
    scale = normalize(Fraction(spec.eigen_factor()) ** n)
    rhs = qseries.scale(target, scale)
    correction = 0  # type: Rational
    special = family.special()
    if special is not None and t > 2 and power % t == t - 1:
        correction = seed.coefficient(target_d)
        rhs = qseries.add(rhs, qseries.scale(special, correction))

    window = min(lhs.prec, rhs.prec)
    discrepancy = qseries.first_difference(lhs, rhs)
    floor = family.side_of(target_d).floor
    survivors = count_survivors(window, target_d, floor, t)
    if discrepancy is not None:
        verdict = 'fail'
    elif survivors < MIN_SURVIVORS:
        verdict = 'inconclusive'
    else:
        verdict = 'pass'
    logger.info(
        "%s, T(%s^%s): %s (%s coefficients compared)",
        params, p, n, verdict, survivors,
    )
    return IdentityReport(
        family=str(params), p=p, n=n, target_d=target_d, scale=scale,
        correction=correction, window=window, survivors=survivors,
        verdict=verdict, first_discrepancy=discrepancy,
        lhs=qseries.truncate(lhs, window), rhs=qseries.truncate(rhs, window),
    )
