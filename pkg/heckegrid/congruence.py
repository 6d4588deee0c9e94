# Copyright (C) 2015-2016 Skylable Ltd. <info-copyright@skylable.com>
# License: Apache 2.0, see LICENSE for more details.

"""p-adic valuations of U(p^n) images and the congruences they satisfy."""

import logging
from fractions import Fraction
from typing import Any, Dict, Iterable, List, NamedTuple, Optional, Tuple

from sympy import multiplicity

from heckegrid import qseries
from heckegrid.exceptions import DomainError, IntegralityError, PrecisionError
from heckegrid.generators import GeneratorId, named_form
from heckegrid.grid import (
    GridFamily, GridParams, extend_ladder, ladder_sides, seed_series,
)
from heckegrid.hecke import (
    MIN_SURVIVORS, HeckeSpec, check_admissible, check_grid_identity,
    identity_window, u_power, u_power_via_t,
)
from heckegrid.qseries import FracSeries, Rational, ceil_div


logger = logging.getLogger(__name__)


Combination = List[Tuple[Rational, GeneratorId]]



class QuotientStatement(NamedTuple):
    """f(mz)/H_N(z) for f of weight 4 on Gamma_0(N)."""
    denominator: str
    factor: int
    min_prime: int
    note: str


# The quotient has integer exponents in -1 + factor Z.
QUOTIENT_STATEMENTS = {
    2: QuotientStatement('h2cap', 4, 3, 'H_2(z) = eta(4z)^2 eta(8z)^2'),
    3: QuotientStatement('h3cap', 3, 5, 'H_3(z) = eta(3z)^2 eta(9z)^2'),
    4: QuotientStatement(
        'h4cap', 3, 5, 'f(3z) is paired with H_4(z) = eta(6z)^4',
    ),
}


def valuation(c: Rational, p: int) -> Optional[int]:
    """v_p(c), or None for zero."""
    if c == 0:
        return None
    c = Fraction(c)
    if c.denominator % p == 0:
        raise IntegralityError(
            "Coefficient {} is not {}-integral".format(c, p),
        )
    return int(multiplicity(p, abs(c.numerator)))


class ValuationProfile(NamedTuple):
    p: int
    profile: Dict[int, int]
    min_valuation: Optional[int]


def signed_valuation(c: Rational, p: int) -> int:
    """v_p of a nonzero rational, negative for p in the denominator."""
    c = Fraction(c)
    return int(multiplicity(p, abs(c.numerator))) - \
        int(multiplicity(p, c.denominator))


def series_valuation(f: FracSeries, p: int) -> Optional[int]:
    """Least v_p over the known coefficients, None for zero."""
    return at_most([signed_valuation(c, p) for _, c in f.items()])


def at_most(values: Iterable[Optional[int]]) -> Optional[int]:
    """Minimum where None stands for infinity."""
    finite = [v for v in values if v is not None]
    return min(finite) if finite else None


def shifted(value: Optional[int], by: int) -> Optional[int]:
    return None if value is None else value + by


def at_least(value: Optional[int], bound: Optional[int]) -> bool:
    if bound is None:
        return value is None
    return value is None or value >= bound


def valuation_profile(f: FracSeries, p: int,
                      start: Optional[int] = None) -> ValuationProfile:
    """Valuations of all known coefficients; start bounds the window."""
    lowest = f.order() if start is None else start
    if f.prec <= lowest:
        raise PrecisionError(
            "No coefficients are known below {}".format(f.prec),
        )
    profile = {}  # type: Dict[int, int]
    for n, c in f.items():
        v = valuation(c, p)
        if v is not None:
            profile[n] = v
    least = min(profile.values()) if profile else None
    return ValuationProfile(p, profile, least)


class CongruenceReport(NamedTuple):
    p: int
    n: int
    target: int
    min_valuation: Optional[int]
    profile: Dict[int, int]
    verdict: str
    observed_ap: int
    survivors: int
    notes: List[str]

    def serialize(self) -> Dict[str, Any]:
        return {
            'p': self.p,
            'n': self.n,
            'target': self.target,
            'min_valuation': (
                'inf' if self.min_valuation is None else self.min_valuation
            ),
            'verdict': self.verdict,
            'observed_ap': self.observed_ap,
            'survivors': self.survivors,
            'notes': list(self.notes),
            'profile': {str(m): v for m, v in sorted(self.profile.items())},
        }


def make_report(image: FracSeries, p: int, n: int, target: int,
                survivors: int, start: int,
                notes: Iterable[str] = ()) -> CongruenceReport:
    profile = valuation_profile(image, p, start)
    least = profile.min_valuation
    if survivors < MIN_SURVIVORS:
        verdict = 'inconclusive'
    elif least is None or least >= target:
        verdict = 'pass'
    else:
        verdict = 'fail'
    defect = 0 if least is None else max(0, target - least)
    return CongruenceReport(
        p=p, n=n, target=target, min_valuation=least,
        profile=profile.profile, verdict=verdict, observed_ap=defect,
        survivors=survivors, notes=list(notes),
    )


def congruence_target(params: GridParams, p: int, n: int) -> int:
    t = params.t
    if params.level == 1:
        full = params.ell != 0 or p % t == 1
        base = n if full else n // 2
        return max(0, (params.weight - 1) * base)
    return n if p % t == 1 else n // 2


def lattice_survivors(window: int, power: int, residue: int, step: int,
                      lowest: int) -> int:
    """Numerators m < window with power * m in residue + step Z, >= lowest."""
    first = ceil_div(lowest, power)
    return sum(
        1 for m in range(first, window)
        if (power * m - residue) % step == 0
    )


def required_precision(p: int, n: int, step: int) -> int:
    return p ** n * (step * (MIN_SURVIVORS + 1) + 1)


def rescaled_seed(params: GridParams, prec: int) -> FracSeries:
    """F(z) = f_s(tz), known for exponents below prec."""
    side = ladder_sides(params)[0]
    seed = seed_series(side, params.t, prec)
    return qseries.rescale(seed, params.t)


def check_family_congruence(family: GridFamily, p: int, n: int,
                            prec: Optional[int] = None) -> CongruenceReport:
    params = family.params
    check_admissible(HeckeSpec.for_family(params, p, n))
    t, s = params.t, params.first_d
    if prec is None:
        prec = required_precision(p, n, t)
    image = u_power(rescaled_seed(params, prec), p, n)
    survivors = lattice_survivors(image.prec, p ** n, -s, t, -s)
    report = make_report(
        image, p, n, congruence_target(params, p, n), survivors,
        ceil_div(-s, p ** n),
    )
    logger.info(
        "%s, U(%s^%s): %s (valuation %s, target %s)",
        params, p, n, report.verdict, report.min_valuation, report.target,
    )
    return report


def estimate_ap(family: GridFamily, p: int, n_max: int) -> int:
    defect = 0
    for n in range(1, n_max + 1):
        report = check_family_congruence(family, p, n)
        if report.verdict == 'inconclusive':
            raise PrecisionError(
                "Window too short to bound A_{} at n={}".format(p, n),
            )
        defect = max(defect, report.observed_ap)
    return defect


def combination_series(combination: Combination, prec: int) -> FracSeries:
    total = qseries.zero(1, prec)
    for c, generator in combination:
        term = named_form(generator, prec)
        if term.t != 1:
            raise DomainError(
                "{} does not have integral exponents".format(generator),
            )
        total = qseries.add(total, qseries.scale(term, c))
    return total


def quotient_statement(level: int) -> QuotientStatement:
    if level not in QUOTIENT_STATEMENTS:
        raise DomainError("Level must be 2, 3 or 4, got {}".format(level))
    return QUOTIENT_STATEMENTS[level]


def level34_series(level: int, combination: Combination, prec: int) \
        -> FracSeries:
    """f(mz) / H_N(z), known for exponents below prec."""
    statement = quotient_statement(level)
    m = statement.factor
    q_prec = ceil_div(prec, m) + 2
    f = qseries.v_operator(combination_series(combination, q_prec), m)
    denominator = named_form(GeneratorId(statement.denominator), m * q_prec)
    return qseries.truncate(qseries.divide(f, denominator), prec)


def check_level34_statement(level: int, combination: Combination, p: int,
                            n: int, prec: Optional[int] = None) \
        -> CongruenceReport:
    """U(p^n) of f(mz)/H_N(z): m = 3 at N = 3, 4 and m = 4 at N = 2."""
    statement = quotient_statement(level)
    m = statement.factor
    if p < statement.min_prime:
        raise DomainError(
            "Prime must be at least {} at level {}, got {}".format(
                statement.min_prime, level, p,
            ),
        )
    check_admissible(HeckeSpec(m, 2, p, n, level))
    if prec is None:
        prec = required_precision(p, n, m)
    image = u_power(level34_series(level, combination, prec), p, n)
    survivors = lattice_survivors(image.prec, p ** n, -1, m, -1)
    target = n if p % m == 1 else n // 2
    notes = [
        "U({}^{}) is applied to f({}z)/H_{}(z)".format(p, n, m, level),
        statement.note,
    ]
    return make_report(
        image, p, n, target, survivors, ceil_div(-1, p ** n), notes,
    )


def induction_bounds(identity_valuations: List[Optional[int]],
                     base: Optional[int], step: int) -> List[Optional[int]]:
    """Lower bounds b_m for v_p(U(p^m) F), m = 0 .. len(identity_valuations).

    U(p^m) F = T(p^m) F - sum over j of p^(step j) V(p^j) U(p^(m-j)) F,
    so b_m = min(v(T(p^m) F), step j + b_(m-j)) with b_0 = v(F).
    """
    bounds = [base]
    for m, identity in enumerate(identity_valuations, 1):
        bounds.append(at_most([identity] + [
            shifted(bounds[m - j], step * j) for j in range(1, m + 1)
        ]))
    return bounds


def format_valuation(v: Optional[int]) -> Any:
    return 'inf' if v is None else v


def congruence_chain_check(family: GridFamily, p: int, n: int) \
        -> Dict[str, Any]:
    """Derive the U(p^n) congruence from the T(p^j) identities, j <= n.

    The identity right sides fix v_p(T(p^j) F); the decomposition of
    U(p^n) through T(p^j) and V(p^j) turns them into a bound that the
    observed valuation must meet and that must reach the target.
    """
    params = family.params
    step = params.weight - 1
    prec = required_precision(p, n, params.t)
    seed = rescaled_seed(params, prec)
    spec = HeckeSpec(1, params.weight, p, n, params.level, params.s)
    via_t = u_power_via_t(seed, spec)
    direct = u_power(seed, p, n)
    ready = extend_ladder(
        family, p ** n * params.first_d, identity_window(params),
    )
    identities = [check_grid_identity(ready, p, j) for j in range(1, n + 1)]
    congruence = check_family_congruence(family, p, n, prec)

    identity_valuations = [series_valuation(r.rhs, p) for r in identities]
    bounds = induction_bounds(
        identity_valuations, series_valuation(seed, p), step,
    )
    derived = bounds[n]
    observed = congruence.min_valuation
    terms = [{
        'term': 'T({}^{}) F'.format(p, n),
        'valuation': format_valuation(identity_valuations[n - 1]),
    }] + [{
        'term': 'p^{} V({}^{}) U({}^{}) F'.format(step * j, p, j, p, n - j),
        'valuation': format_valuation(shifted(
            series_valuation(u_power(seed, p, n - j), p), step * j,
        )),
    } for j in range(1, n + 1)]

    consistent = qseries.agree(via_t, direct)
    identities_hold = all(r.verdict == 'pass' for r in identities)
    bound_holds = at_least(observed, derived)
    reaches_target = at_least(derived, congruence.target)
    logger.info(
        "%s, p=%s, n=%s: derived bound %s, observed %s, target %s",
        params, p, n, format_valuation(derived), format_valuation(observed),
        congruence.target,
    )
    return {
        'family': str(params),
        'p': p,
        'n': n,
        'u_via_t_matches_direct': consistent,
        'identities': [r.verdict for r in identities],
        'congruence': congruence.verdict,
        'terms': terms,
        'derived_bound': format_valuation(derived),
        'observed_valuation': format_valuation(observed),
        'target': congruence.target,
        'verdict': (
            'pass' if consistent and identities_hold and bound_holds and
            reaches_target and congruence.verdict == 'pass' else 'fail'
        ),
    }
