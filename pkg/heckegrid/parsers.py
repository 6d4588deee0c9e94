# Copyright (C) 2015-2016 Skylable Ltd. <info-copyright@skylable.com>
# License: Apache 2.0, see LICENSE for more details.

from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from heckegrid.exceptions import ValidationError
from heckegrid.generators import GeneratorId
from heckegrid.qseries import Rational, normalize


INT_OPTIONS = (
    'k', 'r', 'dmax', 'prec', 'd', 'terms', 'nmax', 'level34',
    'samples', 'seed',
)


def parse_args(args: Dict[str, Any]) -> Dict[str, Any]:
    parsed_args = {}  # type: Dict[str, Any]
    parsed_args.update(args)
    if args.get('level') is not None:
        parsed_args['level'] = parse_level(args['level'])
    for name in INT_OPTIONS:
        parsed_args[name] = parse_optional_int(args.get(name), name)
    parsed_args['sign'] = parse_sign(args.get('sign'))
    parsed_args['threads'] = parse_threads(args.get('threads'))
    parsed_args['p'] = parse_primes(args.get('p'))
    parsed_args['n'] = parse_powers(args.get('n'))
    parsed_args['form'] = parse_form_name(args.get('form'))
    parsed_args['combination'] = parse_combination(args.get('combination'))
    return parsed_args


def parse_int(value: str, name: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ValidationError(
            "--{} expects an integer, got {!r}".format(name, value),
        )


def parse_optional_int(value: Optional[str], name: str) -> Optional[int]:
    if value is not None:
        return parse_int(value, name)
    return None


def parse_level(value: str) -> int:
    level = parse_int(value, 'level')
    if level not in (1, 2, 3, 4):
        raise ValidationError("--level must be 1, 2, 3 or 4")
    return level


def parse_sign(value: Optional[str]) -> Optional[int]:
    if value is None:
        return None
    signs = {'+': 1, '+1': 1, '1': 1, 'plus': 1,
             '-': -1, '-1': -1, 'minus': -1}
    try:
        return signs[value.strip().lower()]
    except KeyError:
        raise ValidationError(
            "--sign expects + or -, got {!r}".format(value),
        )


def parse_threads(threads: Optional[str]) -> Optional[int]:
    if threads is None:
        return None
    try:
        return int(threads)
    except ValueError:
        raise ValidationError("Invalid number of threads")


def split_list(value: str) -> List[str]:
    return [item.strip() for item in value.split(',') if item.strip()]


def parse_primes(value: Optional[str]) -> Optional[List[int]]:
    """'5,7,11' -> [5, 7, 11]."""
    if value is None:
        return None
    primes = [parse_int(item, 'p') for item in split_list(value)]
    if not primes:
        raise ValidationError("--p needs at least one prime")
    return primes


def parse_powers(value: Optional[str]) -> Optional[List[int]]:
    if value is None:
        return None
    powers = [parse_int(item, 'n') for item in split_list(value)]
    if not powers:
        raise ValidationError("--n needs at least one exponent")
    return powers


def parse_form_name(value: Optional[str]) -> Optional[GeneratorId]:
    """'j2' or 'e4@3' (E_4(3z))."""
    if value is None:
        return None
    name, _, scale = value.strip().partition('@')
    if not name:
        raise ValidationError("Empty form name in {!r}".format(value))
    if not scale:
        return GeneratorId(name)
    return GeneratorId(name, parse_int(scale, 'form'))


def parse_coefficient(value: str) -> Rational:
    try:
        return normalize(Fraction(value.strip()))
    except (ValueError, ZeroDivisionError):
        raise ValidationError("Invalid coefficient: {!r}".format(value))


def parse_term(value: str) -> Tuple[Rational, GeneratorId]:
    coefficient, star, name = value.strip().partition('*')
    if not star:
        name = coefficient.lstrip('+-')
        coefficient = '-1' if coefficient.startswith('-') else '1'
    generator = parse_form_name(name)
    assert generator is not None
    return parse_coefficient(coefficient), generator


def parse_combination(value: Optional[str]) \
        -> Optional[List[Tuple[Rational, GeneratorId]]]:
    """'1*f3plus,-1/2*e4@3' -> [(1, f3plus@1), (-1/2, e4@3)]."""
    if value is None:
        return None
    terms = [parse_term(item) for item in split_list(value)]
    if not terms:
        raise ValidationError("--combination needs at least one term")
    return terms
