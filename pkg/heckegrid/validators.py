# Copyright (C) 2015-2016 Skylable Ltd. <info-copyright@skylable.com>
# License: Apache 2.0, see LICENSE for more details.

from typing import Any, Dict, List, Optional

from sympy import isprime

from heckegrid.config import COMMANDS, DEFAULT_PREC
from heckegrid.exceptions import DomainError, ValidationError
from heckegrid.generators import NAMES, GeneratorId
from heckegrid.grid import derive_params


Args = Dict[str, Any]


def validate_args(args: Args) -> Args:
    valid = {}  # type: Args
    valid.update(args)
    valid['command'] = validate_command(args['command'])
    valid['level'], valid['k'], valid['r'], valid['sign'] = validate_family(
        args['level'], args['k'], args['r'], args['sign'],
    )
    valid['d_max'] = validate_optional_positive(args['d_max'], 'dmax')
    valid['prec'] = validate_positive(
        DEFAULT_PREC if args['prec'] is None else args['prec'], 'prec',
    )
    valid['terms'] = validate_optional_positive(args['terms'], 'terms')
    valid['form'] = validate_form(args['form'])
    valid['primes'] = validate_primes(args['primes'])
    valid['powers'] = validate_powers(args['powers'] or [1])
    valid['n_max'] = validate_n_max(args['n_max'])
    valid['level34'] = validate_level34(args['level34'])
    if args['combination'] is not None:
        valid['combination'] = [
            (c, validate_form(generator))
            for c, generator in args['combination']
        ]
    valid['samples'] = validate_positive(args['samples'] or 100, 'samples')
    valid['seed'] = args['seed'] or 0
    valid['threads'] = validate_threads(args['threads'])
    validate_requirements(valid)
    return valid


def validate_command(command: str) -> str:
    if command not in COMMANDS:
        raise ValidationError("Unknown command: {}".format(command))
    return command


def validate_family(level: Optional[int], k: Optional[int],
                    r: Optional[int], sign: Optional[int]) -> tuple:
    if level is None:
        if k is not None or r is not None or sign is not None:
            raise ValidationError("--k, --r and --sign need --level")
        return None, None, None, None
    if level == 1 and sign is not None:
        raise ValidationError("--sign only applies to levels 2, 3 and 4")
    if level > 1 and (k is not None or r is not None):
        raise ValidationError("--k and --r only apply to level 1")
    try:
        derive_params(level, k, r, sign)
    except DomainError as e:
        raise ValidationError(str(e))
    return level, k, r, sign


def validate_positive(value: int, name: str) -> int:
    if value < 1:
        raise ValidationError("--{} must be positive".format(name))
    return value


def validate_optional_positive(value: Optional[int], name: str) \
        -> Optional[int]:
    if value is None:
        return None
    return validate_positive(value, name)


def validate_form(generator: Optional[GeneratorId]) \
        -> Optional[GeneratorId]:
    if generator is None:
        return None
    if generator.name not in NAMES:
        raise ValidationError(
            "Unknown form {!r}; known forms: {}".format(
                generator.name, ', '.join(NAMES),
            ),
        )
    if generator.scale < 1:
        raise ValidationError("Scale of {} must be positive".format(
            generator.name,
        ))
    return generator


def validate_primes(primes: Optional[List[int]]) -> Optional[List[int]]:
    if primes is None:
        return None
    for p in primes:
        if not isprime(p):
            raise ValidationError("{} is not a prime".format(p))
    return sorted(set(primes))


def validate_powers(powers: List[int]) -> List[int]:
    for n in powers:
        if n < 1:
            raise ValidationError("Exponents given to --n must be positive")
    return sorted(set(powers))


def validate_n_max(n_max: Optional[int]) -> Optional[int]:
    if n_max is not None and n_max < 0:
        raise ValidationError("--nmax must not be negative")
    return n_max


def validate_level34(level: Optional[int]) -> Optional[int]:
    if level is not None and level not in (2, 3, 4):
        raise ValidationError("--level34 must be 2, 3 or 4")
    return level


def validate_threads(threads: int) -> int:
    if threads < 1:
        raise ValidationError("Invalid number of threads")
    return threads


def validate_requirements(valid: Args) -> None:
    command = valid['command']
    has_family = (
        valid['level'] is not None or valid['family_path'] is not None
    )
    if command == 'build' and valid['level'] is None:
        raise ValidationError("build needs --level")
    if command == 'show':
        if valid['form'] is None and (
                valid['input_path'] is None or valid['d'] is None):
            raise ValidationError("show needs --in and --d, or --form")
    if command == 'hecke':
        if not has_family:
            raise ValidationError("hecke needs --family or --level")
        if valid['primes'] is None:
            raise ValidationError("hecke needs --p")
    if command == 'congruence':
        if valid['level34'] is not None:
            if valid['combination'] is None:
                raise ValidationError("--level34 needs --combination")
        elif not has_family:
            raise ValidationError(
                "congruence needs --family, --level or --level34",
            )
        if valid['primes'] is None:
            raise ValidationError("congruence needs --p")
