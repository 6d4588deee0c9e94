# Copyright (C) 2015-2016 Skylable Ltd. <info-copyright@skylable.com>
# License: Apache 2.0, see LICENSE for more details.

"""Grid bases {f_d} built by climbing a Hauptmodul ladder.

A family has two ladders ("sides"). Each side starts from a seed form
f_{d0} and produces f_{d0 + t}, f_{d0 + 2t}, ... by multiplying the
previous rung by the level's Hauptmodul and cancelling every coefficient
at or below the side's floor with earlier rungs of the same side.
"""

import logging
from math import gcd
from typing import Any, Dict, List, NamedTuple, Optional, Tuple

from humanfriendly import Timer

from heckegrid import qseries
from heckegrid.exceptions import (
    ConstructionError, DomainError, MissingRungError,
)
from heckegrid.generators import GeneratorId, eta_quotient, named_form
from heckegrid.qseries import FracSeries, ceil_div


logger = logging.getLogger(__name__)


LEVELS = (1, 2, 3, 4)
LEVEL1_WEIGHTS = (4, 6, 8, 10, 14)
LEVEL1_ETA_POWERS = (4, 8, 12, 16, 20)
EISENSTEIN_OR_ONE = (0, 4, 6, 8, 10, 14)

HAUPTMODULS = {1: 'j', 2: 'j2', 3: 'j3', 4: 'j4'}

# Extra q-powers fed to the seed generators.
SEED_MARGIN = 3

DEFAULT_DEPTH = 49


class GridParams(NamedTuple):
    level: int
    k: Optional[int]
    r: Optional[int]
    sign: Optional[int]
    t: int
    s: int
    ell: int
    weight: int

    def __str__(self) -> str:
        if self.level == 1:
            return 'level 1 (k={}, r={})'.format(self.k, self.r)
        return 'level {} ({})'.format(
            self.level, '+' if self.sign == 1 else '-',
        )

    @property
    def first_d(self) -> int:
        """Index of the seed the Hecke identities start from."""
        return self.s

    @property
    def special_d(self) -> Optional[int]:
        """Index of the holomorphic member, if the family has one."""
        if self.level == 1:
            return -self.s if self.ell == 0 else None
        return -1 if self.sign == -1 else None

    def serialize(self) -> Dict[str, Any]:
        return dict(self._asdict())


def derive_params(level: int, k: Optional[int] = None,
                  r: Optional[int] = None, sign: Optional[int] = None) \
        -> GridParams:
    if level not in LEVELS:
        raise DomainError("Level must be one of 1, 2, 3, 4")
    if level > 1:
        if sign not in (1, -1):
            raise DomainError("Level {} needs a sign".format(level))
        t = 4 if level == 2 else 3
        return GridParams(level, None, None, sign, t, 1, 0, 2)

    if k not in LEVEL1_WEIGHTS:
        raise DomainError(
            "k must be one of {}".format(', '.join(map(str, LEVEL1_WEIGHTS))),
        )
    if r not in LEVEL1_ETA_POWERS:
        raise DomainError(
            "r must be one of {}".format(
                ', '.join(map(str, LEVEL1_ETA_POWERS)),
            ),
        )
    divisor = gcd(r, 24)
    candidates = [
        ell for ell in (0, 1, 2) if 12 * ell + k - r in EISENSTEIN_OR_ONE
    ]
    if len(candidates) != 1:
        raise DomainError(
            "No unique ell for k={}, r={}".format(k, r),
        )
    return GridParams(
        level=1, k=k, r=r, sign=None,
        t=24 // divisor, s=r // divisor, ell=candidates[0],
        weight=k - r // 2,
    )


class LadderSide(NamedTuple):
    name: str
    residue: int
    seed_d: int
    # Nonleading coefficients live strictly above the floor.
    floor: int
    forms: Tuple[str, ...]
    eta: Tuple[Tuple[int, int], ...]

    def describe(self) -> str:
        factors = list(self.forms) + [
            'eta({}z)^{}'.format(a, e) if a > 1 else 'eta^{}'.format(e)
            for a, e in self.eta
        ]
        return ' * '.join(factors) or '1'

    def rungs(self, d_max: int, t: int) -> List[int]:
        return list(range(self.seed_d, d_max + 1, t))


LEVEL_SIDES = {
    (2, 1): [
        ('1', 1, 0, ('f2minus',), ((1, -2), (2, -2))),
        ('3', 3, 0, ('f2plus', 'f2minus'), ((1, -6), (2, -6))),
    ],
    (2, -1): [
        ('1', 1, 0, ('f2plus',), ((1, -2), (2, -2))),
        ('3', -1, 4, (), ((1, 2), (2, 2))),
    ],
    (3, 1): [
        ('1', 1, 0, ('f3minus',), ((1, -2), (3, -2))),
        ('2', 2, 0, ('f3minus', 'g3minus'), ((1, -4), (3, -4))),
    ],
    (3, -1): [
        ('1', 1, 0, ('f3plus',), ((1, -2), (3, -2))),
        ('2', -1, 3, (), ((1, 2), (3, 2))),
    ],
    (4, 1): [
        ('1', 1, 0, ('f4minus',), ((2, -4),)),
        ('2', 2, 0, ('f4minus', 'g4minus'), ((2, -8),)),
    ],
    (4, -1): [
        ('1', 1, 0, ('f4plus',), ((2, -4),)),
        ('2', -1, 3, (), ((2, 4),)),
    ],
}


def ladder_sides(params: GridParams) -> List[LadderSide]:
    t = params.t
    if params.level > 1:
        return [
            LadderSide(name, seed_d % t, seed_d, floor, forms, eta)
            for name, seed_d, floor, forms, eta
            in LEVEL_SIDES[params.level, params.sign]
        ]

    k, r, s, ell = params.k, params.r, params.s, params.ell
    sides = [
        LadderSide('a', s % t, s, 0, ('e{}'.format(k),), ((1, -r),)),
    ]
    if (-s) % t != s % t:
        weight = 12 * ell + k - r
        sides.append(LadderSide(
            'b', (-s) % t, t * ell - s, s - t * ell,
            ('e{}'.format(weight),) if weight else (),
            ((1, r - 24 * ell),),
        ))
    return sides


def mul_common(f: FracSeries, g: FracSeries) -> FracSeries:
    return qseries.mul(*qseries.common_tick([f, g]))


def seed_series(side: LadderSide, t: int, prec: int) -> FracSeries:
    """The seed f_{seed_d} with coefficients known below numerator prec."""
    q_prec = ceil_div(prec, t) + SEED_MARGIN
    product = eta_quotient(dict(side.eta), q_prec)
    for name in side.forms:
        product = mul_common(product, named_form(GeneratorId(name), q_prec))
    product = qseries.retick(product, t)
    check_leading(product, side.seed_d)
    return qseries.truncate(product, prec)


def seed_forms(params: GridParams, prec: int) -> Dict[int, FracSeries]:
    return {
        side.seed_d: seed_series(side, params.t, prec)
        for side in ladder_sides(params)
    }


def check_leading(f: FracSeries, d: int) -> None:
    if f.order() != -d or f.coeffs[-d] != 1:
        raise ConstructionError(
            "Form f_{} does not start with q^({}/{})".format(d, -d, f.t),
        )


def support_violations(f: FracSeries, d: int, side: LadderSide) \
        -> List[int]:
    t = f.t
    return [
        n for n in f.coeffs
        if n != -d and (n <= side.floor or (n + d) % t)
    ]


def climb(side: LadderSide, seed: FracSeries, hauptmodul: FracSeries,
          d_max: int) -> Dict[int, FracSeries]:
    t = seed.t
    forms = {side.seed_d: seed}
    for d in side.rungs(d_max, t)[1:]:
        raised = qseries.mul(hauptmodul, forms[d - t])
        table = dict(raised.coeffs)
        prec = raised.prec
        for n, c in raised.items():
            if n > side.floor:
                break
            if n == -d:
                continue
            pivot = forms.get(-n)
            if pivot is None:
                raise ConstructionError(
                    "No pivot for q^({}/{}) while building f_{}".format(
                        n, t, d,
                    ),
                )
            prec = min(prec, pivot.prec)
            for m, a in pivot.coeffs.items():
                table[m] = table.get(m, 0) - c * a
        form = FracSeries(t, table, prec)
        check_leading(form, d)
        violations = support_violations(form, d, side)
        if violations:
            raise ConstructionError(
                "f_{} has forbidden terms at {}".format(d, violations[:5]),
            )
        logger.debug("Built f_%s (window %s)", d, prec)
        forms[d] = form
    return forms


class GridFamily:

    def __init__(self, params: GridParams, forms: Dict[int, FracSeries],
                 d_max: int, prec: int) -> None:
        self.params = params
        self.forms = forms
        self.d_max = d_max
        self.prec = prec
        self.sides = ladder_sides(params)

    def __str__(self) -> str:
        return str(self.params)

    def side_of(self, d: int) -> LadderSide:
        for side in self.sides:
            if (d - side.residue) % self.params.t == 0 and d >= side.seed_d:
                return side
        raise MissingRungError(
            "No ladder of {} contains f_{}".format(self.params, d),
        )

    def form(self, d: int) -> FracSeries:
        if d not in self.forms:
            raise MissingRungError(
                "f_{} of {} was not built (d_max={})".format(
                    d, self.params, self.d_max,
                ),
            )
        return self.forms[d]

    def special(self) -> Optional[FracSeries]:
        d = self.params.special_d
        return None if d is None else self.form(d)

    def lcd(self) -> Dict[int, int]:
        return {d: qseries.lcd(f) for d, f in self.forms.items()}

    def seeds(self) -> Dict[str, str]:
        return {
            'f_{}'.format(side.seed_d): side.describe()
            for side in self.sides
        }

    def serialize(self) -> Dict[str, Any]:
        return {
            'params': self.params.serialize(),
            'd_max': self.d_max,
            'prec': self.prec,
            'seeds': self.seeds(),
            'lcd': {str(d): v for d, v in sorted(self.lcd().items())},
            'forms': {
                str(d): qseries.to_json(f)
                for d, f in sorted(self.forms.items())
            },
        }

    @classmethod
    def from_payload(cls, payload: Dict[str, Any]) -> 'GridFamily':
        p = payload['params']
        params = derive_params(p['level'], p['k'], p['r'], p['sign'])
        forms = {
            int(d): qseries.from_json(f)
            for d, f in payload['forms'].items()
        }
        return cls(params, forms, int(payload['d_max']),
                   int(payload['prec']))


def default_d_max(params: GridParams) -> int:
    return DEFAULT_DEPTH * params.first_d


def hauptmodul_series(params: GridParams, prec: int) -> FracSeries:
    """The level's Hauptmodul at tick t, known below numerator prec."""
    series = named_form(
        GeneratorId(HAUPTMODULS[params.level]),
        ceil_div(prec, params.t) + 1,
    )
    return qseries.retick(series, params.t)


def build_family(params: GridParams, d_max: Optional[int] = None,
                 prec_out: int = 60) -> GridFamily:
    """Build both ladders up to d_max, every form known below prec_out."""
    if d_max is None:
        d_max = default_d_max(params)
    timer = Timer()
    sides = ladder_sides(params)
    hauptmodul = hauptmodul_series(params, prec_out + d_max)
    forms = {}  # type: Dict[int, FracSeries]
    for side in sides:
        if side.seed_d > d_max:
            continue
        seed = seed_series(
            side, params.t, prec_out + d_max - side.seed_d,
        )
        for d, f in climb(side, seed, hauptmodul, d_max).items():
            forms[d] = qseries.truncate(f, prec_out)
    logger.info(
        "Built %s: %s forms up to d=%s in %s",
        params, len(forms), d_max, timer,
    )
    return GridFamily(params, forms, d_max, prec_out)


def extend_ladder(family: GridFamily, d_max: int, prec_out: int) \
        -> GridFamily:
    """A family covering d_max with windows of at least prec_out."""
    if family.d_max >= d_max and family.prec >= prec_out:
        return family
    return build_family(
        family.params,
        max(d_max, family.d_max),
        max(prec_out, family.prec),
    )
