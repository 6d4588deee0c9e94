# Copyright (C) 2015-2016 Skylable Ltd. <info-copyright@skylable.com>
# License: Apache 2.0, see LICENSE for more details.

"""Multiplier systems of eta, eta^4 and the level 2, 3 and 4 grids.

Values are exact roots of unity. ``numeric_eta_oracle`` checks the eta
system against a floating-point evaluation of the product formula.

The extended Jacobi symbols come in four sign conventions. The one in use
is read from golden/multiplier.yaml; ``calibrate_convention`` rebuilds it
by scoring all four against the numerical eta product.
"""

import logging
import os.path
import random
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Any, Dict, List, NamedTuple, Optional, Tuple

from mpmath import mp
from sympy import jacobi_symbol
import yaml

from heckegrid.exceptions import DomainError


logger = logging.getLogger(__name__)


FAMILIES = ('eta', 'eta4', 'level2', 'level3', 'level4')

# Orders that every value of a family divides.
ORDER_BOUNDS = {
    'eta': 24,
    'eta4': 6,
    'level2': 4,
    'level3': 6,
    'level4': 6,
}

TRIVIAL_SUBGROUPS = {
    'eta4': (6, 6),
    'level2': (8, 4),
    'level3': (9, 3),
    'level4': (12, 3),
}


class IntegerMatrix2x2(NamedTuple):
    a: int
    b: int
    c: int
    d: int

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: 'IntegerMatrix2x2') -> 'IntegerMatrix2x2':
        return IntegerMatrix2x2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self) -> 'IntegerMatrix2x2':
        return IntegerMatrix2x2(-self.a, -self.b, -self.c, -self.d)

    def divided(self, k: int) -> 'IntegerMatrix2x2':
        if any(x % k for x in self):
            raise DomainError("{} is not divisible by {}".format(self, k))
        return IntegerMatrix2x2(*(x // k for x in self))

    def height(self) -> int:
        return max(abs(x) for x in self)

    def in_gamma0(self, m: int, n: int = 1) -> bool:
        """Membership in the group of det 1 matrices with m | c, n | b."""
        return self.det() == 1 and self.c % m == 0 and self.b % n == 0


IDENTITY = IntegerMatrix2x2(1, 0, 0, 1)
MINUS_IDENTITY = IntegerMatrix2x2(-1, 0, 0, -1)
T = IntegerMatrix2x2(1, 1, 0, 1)
S = IntegerMatrix2x2(0, -1, 1, 0)


def fricke(level: int) -> IntegerMatrix2x2:
    return IntegerMatrix2x2(0, -1, level, 0)


class RootOfUnity(NamedTuple):
    order: int
    exponent: int

    def turns(self) -> Fraction:
        return Fraction(self.exponent, self.order) % 1

    def reduced(self) -> 'RootOfUnity':
        turns = self.turns()
        return RootOfUnity(turns.denominator, turns.numerator)

    def multiplicative_order(self) -> int:
        return self.reduced().order

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RootOfUnity):
            return NotImplemented
        return self.turns() == other.turns()

    def __ne__(self, other: object) -> bool:
        return not self == other

    def __hash__(self) -> int:
        return hash(self.turns())

    def __mul__(self, other: 'RootOfUnity') -> 'RootOfUnity':  # type: ignore
        return from_turns(self.turns() + other.turns())

    def __pow__(self, k: int) -> 'RootOfUnity':
        return from_turns(self.turns() * k)

    def to_complex(self) -> Any:
        return mp.expjpi(2 * mp.mpf(self.exponent) / self.order)

    def __str__(self) -> str:
        r = self.reduced()
        return 'zeta_{}^{}'.format(r.order, r.exponent)


ONE = RootOfUnity(1, 0)
MINUS_ONE = RootOfUnity(2, 1)


def from_turns(turns: Fraction) -> RootOfUnity:
    turns = turns % 1
    return RootOfUnity(turns.denominator, turns.numerator)


class MultiplierId(NamedTuple):
    family: str
    sign: int = 1

    def __str__(self) -> str:
        if self.family in ('eta', 'eta4'):
            return self.family
        return '{}{}'.format(self.family, '+' if self.sign > 0 else '-')

    @property
    def level(self) -> int:
        if self.family.startswith('level'):
            return int(self.family[len('level'):])
        return 1


def sgn(x: int) -> int:
    return (x > 0) - (x < 0)


def sign_twist(x: int, y: int) -> int:
    """(-1)^([(sgn x - 1)/2][(sgn y - 1)/2])."""
    return -1 if sgn(x) < 0 and sgn(y) < 0 else 1


def jacobi_extended_top(d: int, c: int, twist: bool = False) -> int:
    """(d/c)* for odd c."""
    if c % 2 == 0:
        raise DomainError("(d/c)* needs an odd c, got {}".format(c))
    if gcd(d, c) != 1:
        raise DomainError("{} and {} are not coprime".format(d, c))
    symbol = int(jacobi_symbol(d, abs(c)))
    return symbol * sign_twist(d, c) if twist else symbol


def jacobi_extended_bottom(c: int, d: int, twist: bool = True) -> int:
    """(c/d)_* for odd d."""
    if d % 2 == 0:
        raise DomainError("(c/d)_* needs an odd d, got {}".format(d))
    if gcd(c, d) != 1:
        raise DomainError("{} and {} are not coprime".format(c, d))
    if c == 0:
        return 1
    symbol = int(jacobi_symbol(c, abs(d)))
    return symbol * sign_twist(c, d) if twist else symbol


TWIST_NAMES = {False: 'plain', True: 'twisted'}


class JacobiConvention(NamedTuple):
    """Which extended symbols carry the sign twist for negative entries."""
    top_twist: bool
    bottom_twist: bool

    def serialize(self) -> Dict[str, str]:
        return {
            'top': TWIST_NAMES[self.top_twist],
            'bottom': TWIST_NAMES[self.bottom_twist],
        }

    def __str__(self) -> str:
        return 'top={top},bottom={bottom}'.format(**self.serialize())


CONVENTIONS = tuple(
    JacobiConvention(top, bottom)
    for top in (False, True) for bottom in (False, True)
)

CONVENTION_FILE = os.path.join(
    os.path.dirname(__file__), 'golden', 'multiplier.yaml',
)


def parse_convention(entry: Dict[str, Any]) -> JacobiConvention:
    twists = {name: twist for twist, name in TWIST_NAMES.items()}
    try:
        return JacobiConvention(twists[entry['top']], twists[entry['bottom']])
    except (KeyError, TypeError):
        raise DomainError("Malformed sign convention {!r}".format(entry))


def load_convention(path: str = CONVENTION_FILE) -> JacobiConvention:
    with open(path) as f:
        document = yaml.safe_load(f)
    return parse_convention(document['jacobi_convention'])


@lru_cache(maxsize=None)
def frozen_convention() -> JacobiConvention:
    return load_convention()


def write_convention(convention: JacobiConvention, path: str,
                     seed: int, samples: int) -> None:
    entry = dict(convention.serialize(), seed=seed, samples=samples)
    with open(path, 'w') as f:
        yaml.safe_dump(
            {'jacobi_convention': entry}, f, default_flow_style=False,
        )
    logger.info("Froze convention %s in %s", convention, path)


def eta_exponent(gamma: IntegerMatrix2x2,
                 convention: Optional[JacobiConvention] = None) -> int:
    """Exponent e with nu_eta(gamma) = exp(2 pi i e / 24)."""
    if convention is None:
        convention = frozen_convention()
    a, b, c, d = gamma
    if c % 2:
        symbol = jacobi_extended_top(d, c, convention.top_twist)
        e = (a + d) * c - b * d * (c * c - 1) - 3 * c
    else:
        symbol = jacobi_extended_bottom(c, d, convention.bottom_twist)
        e = (a + d) * c - b * d * (c * c - 1) + 3 * d - 3 - 3 * c * d
    if symbol == -1:
        e += 12
    return e % 24


def level_exponent(level: int, gamma: IntegerMatrix2x2) -> RootOfUnity:
    a, b, c, d = gamma
    if level == 2:
        return RootOfUnity(4, d * (b - c // 2))
    if level == 3:
        return RootOfUnity(3, (c // 3) * (a + d) + b * d)
    if level == 4:
        half = c // 2
        return RootOfUnity(3, b * d * (1 - half * half) + (c // 4) * (a + d))
    raise DomainError("No multiplier system at level {}".format(level))


def fricke_decompose(gamma: IntegerMatrix2x2, level: int) \
        -> Tuple[IntegerMatrix2x2, bool]:
    """Split gamma as g0 or g0 * W_N with g0 in Gamma_0(N)."""
    det = gamma.det()
    if det == level * level and level > 1:
        gamma, det = gamma.divided(level), 1
    if det == 1:
        if gamma.c % level:
            raise DomainError("{} is outside Gamma_0({})".format(gamma, level))
        return gamma, False
    if det == level:
        a, b, c, d = gamma
        if a % level or c % level or d % level:
            raise DomainError(
                "{} is not in the Fricke coset of level {}".format(
                    gamma, level,
                ),
            )
        return IntegerMatrix2x2(-b, a // level, -d, c // level), True
    raise DomainError("{} has determinant {}".format(gamma, det))


def evaluate(multiplier: MultiplierId, gamma: IntegerMatrix2x2) \
        -> RootOfUnity:
    if multiplier.family == 'eta':
        check_unimodular(gamma)
        return RootOfUnity(24, eta_exponent(gamma))
    if multiplier.family == 'eta4':
        check_unimodular(gamma)
        a, b, c, d = gamma
        return RootOfUnity(6, (a + d) * c - b * d * (c * c - 1) - 3 * c)
    if multiplier.family not in FAMILIES:
        raise DomainError("Unknown multiplier {}".format(multiplier.family))
    if multiplier.sign not in (1, -1):
        raise DomainError("Sign must be +1 or -1")
    level = multiplier.level
    g0, flipped = fricke_decompose(gamma, level)
    value = level_exponent(level, g0)
    if flipped and multiplier.sign < 0:
        value = value * MINUS_ONE
    return value


def check_unimodular(gamma: IntegerMatrix2x2) -> None:
    if gamma.det() != 1:
        raise DomainError("{} is not in SL2(Z)".format(gamma))


def word_generators(m: int, n: int) -> List[IntegerMatrix2x2]:
    return [
        IntegerMatrix2x2(1, n, 0, 1),
        IntegerMatrix2x2(1, -n, 0, 1),
        IntegerMatrix2x2(1, 0, m, 1),
        IntegerMatrix2x2(1, 0, -m, 1),
        MINUS_IDENTITY,
    ]


def random_gamma0_element(rng: random.Random, m: int, n: int = 1,
                          max_length: int = 8, bound: int = 10 ** 4) \
        -> IntegerMatrix2x2:
    """A random word in generators of Gamma_0(m, n)."""
    generators = word_generators(m, n)
    while True:
        gamma = IDENTITY
        for _ in range(rng.randint(1, max_length)):
            gamma = gamma @ rng.choice(generators)
        if gamma.height() <= bound:
            assert gamma.in_gamma0(m, n)
            return gamma


def random_fricke_element(rng: random.Random, level: int,
                          max_length: int = 6) -> IntegerMatrix2x2:
    gamma = random_gamma0_element(rng, level, 1, max_length)
    if rng.random() < 0.5:
        return gamma @ fricke(level)
    return gamma


def random_domain_element(rng: random.Random, multiplier: MultiplierId) \
        -> IntegerMatrix2x2:
    if multiplier.family in ('eta', 'eta4'):
        return random_gamma0_element(rng, 1)
    return random_fricke_element(rng, multiplier.level)


def homomorphism_failures(multiplier: MultiplierId, rng: random.Random,
                          samples: int) -> int:
    """Count pairs breaking nu(xy) = nu(x) nu(y).

    The eta system carries a sign cocycle, so its square is tested.
    """
    power = 2 if multiplier.family == 'eta' else 1
    failures = 0
    for _ in range(samples):
        x = random_domain_element(rng, multiplier)
        y = random_domain_element(rng, multiplier)
        product = evaluate(multiplier, x @ y) ** power
        expected = (evaluate(multiplier, x) * evaluate(multiplier, y)) \
            ** power
        if product != expected:
            logger.debug("%s fails on %s, %s", multiplier, x, y)
            failures += 1
    return failures


def translation_failures(rng: random.Random, samples: int,
                         max_shift: int = 6) -> int:
    """Count breaks of nu_eta(T^m g T^n) = nu_eta(T)^(m + n) nu_eta(g).

    T^m keeps the bottom row of g and T^n only shifts z, so no sign
    cocycle enters and nu_eta itself is tested.
    """
    step = evaluate(MultiplierId('eta'), T)
    failures = 0
    for _ in range(samples):
        gamma = random_gamma0_element(rng, 1)
        m = rng.randint(-max_shift, max_shift)
        n = rng.randint(-max_shift, max_shift)
        left = IntegerMatrix2x2(1, m, 0, 1)
        right = IntegerMatrix2x2(1, n, 0, 1)
        value = evaluate(MultiplierId('eta'), left @ gamma @ right)
        if value != step ** (m + n) * evaluate(MultiplierId('eta'), gamma):
            logger.debug("eta fails on T^%s %s T^%s", m, gamma, n)
            failures += 1
    return failures


def triviality_failures(multiplier: MultiplierId, rng: random.Random,
                        samples: int) -> int:
    m, n = TRIVIAL_SUBGROUPS[multiplier.family]
    failures = 0
    for _ in range(samples):
        gamma = random_gamma0_element(rng, m, n)
        if evaluate(multiplier, gamma) != ONE:
            logger.debug("%s is not trivial on %s", multiplier, gamma)
            failures += 1
    return failures


def eta_value(z: Any) -> Any:
    i = mp.mpc(0, 1)
    return mp.exp(i * mp.pi * z / 12) * mp.qp(mp.exp(2 * i * mp.pi * z))


def sample_point(gamma: IntegerMatrix2x2) -> Any:
    if gamma.c == 0:
        return mp.mpc('0.1', '1.1')
    return mp.mpc(mp.mpf(-gamma.d) / gamma.c, mp.mpf(1) / abs(gamma.c))


def transformation_ratio(gamma: IntegerMatrix2x2, z: Any, branch: int) \
        -> Any:
    a, b, c, d = gamma
    image = (a * z + b) / (c * z + d)
    return eta_value(image) / (eta_value(z) * branch * mp.sqrt(c * z + d))


class OracleResult(NamedTuple):
    gamma: IntegerMatrix2x2
    error: float
    passed: bool


def numeric_eta_oracle(gamma: IntegerMatrix2x2, z0: Optional[Any] = None,
                       tol: float = 1e-9,
                       convention: Optional[JacobiConvention] = None) \
        -> OracleResult:
    check_unimodular(gamma)
    with mp.workdps(30):
        z = sample_point(gamma) if z0 is None else mp.mpc(z0)
        ratio = transformation_ratio(gamma, z, calibrated_branch())
        expected = RootOfUnity(
            24, eta_exponent(gamma, convention),
        ).to_complex()
        error = float(abs(ratio - expected))
    if error > tol:
        logger.debug("Oracle mismatch on %s: error %s", gamma, error)
    return OracleResult(gamma, error, error <= tol)


@lru_cache(maxsize=None)
def calibrated_branch() -> int:
    """Sign of sqrt(cz + d) that makes S and T transform correctly."""
    # S and T take the same value under every sign convention.
    convention = CONVENTIONS[0]
    with mp.workdps(30):
        for branch in (1, -1):
            if all(
                abs(
                    transformation_ratio(gamma, sample_point(gamma), branch) -
                    RootOfUnity(24, eta_exponent(gamma, convention))
                    .to_complex()
                ) < mp.mpf('1e-15')
                for gamma in (S, T)
            ):
                return branch
    raise DomainError("No square root branch fits the S and T cases")


# One matrix for each sign pattern of (c, d), with c odd and with c even.
SIGN_PATTERNS = (
    IntegerMatrix2x2(1, 0, 1, 1),
    IntegerMatrix2x2(1, 0, -1, 1),
    IntegerMatrix2x2(-1, 0, 1, -1),
    IntegerMatrix2x2(-1, 0, -1, -1),
    IntegerMatrix2x2(1, 0, 2, 1),
    IntegerMatrix2x2(1, 0, -2, 1),
    IntegerMatrix2x2(-1, 0, 2, -1),
    IntegerMatrix2x2(-1, 0, -2, -1),
)


def calibration_corpus(samples: int, seed: int, bound: int = 50) \
        -> List[IntegerMatrix2x2]:
    rng = random.Random(seed)
    return list(SIGN_PATTERNS) + [
        random_gamma0_element(rng, 1, bound=bound) for _ in range(samples)
    ]


def score_conventions(gammas: List[IntegerMatrix2x2], tol: float = 1e-9) \
        -> Dict[JacobiConvention, int]:
    """Oracle failures of each sign convention on gammas."""
    failures = dict.fromkeys(CONVENTIONS, 0)
    with mp.workdps(30):
        branch = calibrated_branch()
        for gamma in gammas:
            check_unimodular(gamma)
            ratio = transformation_ratio(gamma, sample_point(gamma), branch)
            for convention in CONVENTIONS:
                expected = RootOfUnity(
                    24, eta_exponent(gamma, convention),
                ).to_complex()
                if abs(ratio - expected) > tol:
                    failures[convention] += 1
    for convention in CONVENTIONS:
        logger.debug(
            "Convention %s: %s of %s matrices fail",
            convention, failures[convention], len(gammas),
        )
    return failures


def calibrate_convention(samples: int = 100, seed: int = 0,
                         tol: float = 1e-9) \
        -> Tuple[JacobiConvention, Dict[JacobiConvention, int]]:
    """The single convention that fits the eta product on every sample."""
    scores = score_conventions(calibration_corpus(samples, seed), tol)
    survivors = [c for c in CONVENTIONS if scores[c] == 0]
    if len(survivors) != 1:
        raise DomainError(
            "{} sign conventions fit the eta product, expected one".format(
                len(survivors),
            ),
        )
    return survivors[0], scores


def all_multipliers() -> List[MultiplierId]:
    return [
        MultiplierId('eta'),
        MultiplierId('eta4'),
    ] + [
        MultiplierId(family, sign)
        for family in ('level2', 'level3', 'level4')
        for sign in (1, -1)
    ]


def run_multcheck(samples: int = 100, seed: int = 0, tol: float = 1e-9,
                  oracle_bound: int = 50) -> Dict[str, Any]:
    rng = random.Random(seed)
    survivor, scores = calibrate_convention(samples, seed, tol)
    frozen = frozen_convention()
    convention = {
        'frozen': str(frozen),
        'calibrated': str(survivor),
        'failures': {str(c): scores[c] for c in CONVENTIONS},
    }
    homomorphism = {}  # type: Dict[str, Dict[str, int]]
    triviality = {}  # type: Dict[str, Dict[str, int]]
    for multiplier in all_multipliers():
        homomorphism[str(multiplier)] = {
            'checked': samples,
            'failures': homomorphism_failures(multiplier, rng, samples),
        }
        if multiplier.family in TRIVIAL_SUBGROUPS:
            m, n = TRIVIAL_SUBGROUPS[multiplier.family]
            triviality[str(multiplier)] = {
                'subgroup': 'Gamma0({},{})'.format(m, n),
                'checked': samples,
                'failures': triviality_failures(multiplier, rng, samples),
            }

    translation = {
        'checked': samples,
        'failures': translation_failures(rng, samples),
    }
    results = [
        numeric_eta_oracle(
            random_gamma0_element(rng, 1, bound=oracle_bound), tol=tol,
        )
        for _ in range(samples)
    ]
    oracle = {
        'branch': calibrated_branch(),
        'checked': len(results),
        'failures': sum(1 for r in results if not r.passed),
        'worst_error': '{:.3e}'.format(max(r.error for r in results)),
    }
    failed = survivor != frozen or any(
        entry['failures'] for entry in
        list(homomorphism.values()) + list(triviality.values()) +
        [translation, oracle]
    )
    return {
        'convention': convention,
        'homomorphism': homomorphism,
        'translation': translation,
        'triviality': triviality,
        'oracle': oracle,
        'verdict': 'fail' if failed else 'pass',
    }
