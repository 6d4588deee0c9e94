# Copyright (C) 2015-2016 Skylable Ltd. <info-copyright@skylable.com>
# License: Apache 2.0, see LICENSE for more details.

import glob
import logging
import os.path
from typing import Any, Dict, List, NamedTuple

import yaml

from heckegrid.exceptions import HeckeGridError
from heckegrid.generators import GeneratorId, named_form
from heckegrid.grid import build_family, derive_params
from heckegrid.multiplier import (
    CONVENTIONS, calibration_corpus, parse_convention, score_conventions,
)
from heckegrid.qseries import FracSeries, Rational


logger = logging.getLogger(__name__)


GOLDEN_DIR = os.path.join(os.path.dirname(__file__), 'golden')


class GoldenValue(NamedTuple):
    source: str
    form: str
    n: int
    expected: Rational
    actual: Rational

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


def corpus_files(directory: str = GOLDEN_DIR) -> List[str]:
    return sorted(glob.glob(os.path.join(directory, '*.yaml')))


def load_file(path: str) -> Dict[str, Any]:
    with open(path) as f:
        return yaml.safe_load(f)


def load_corpus(directory: str = GOLDEN_DIR) -> Dict[str, Dict[str, Any]]:
    return {
        os.path.basename(path): load_file(path)
        for path in corpus_files(directory)
    }


def compare(source: str, form: str, series: FracSeries,
            expected: Dict[int, int]) -> List[GoldenValue]:
    return [
        GoldenValue(source, form, n, c, series.coefficient(n))
        for n, c in sorted(expected.items())
    ]


def check_block(source: str, block: Dict[str, Any]) -> List[GoldenValue]:
    family = block['family']
    params = derive_params(
        family['level'], family.get('k'), family.get('r'),
        family.get('sign'),
    )
    if params.t != block['t']:
        raise HeckeGridError(
            "{} declares t={}, the family has t={}".format(
                block['name'], block['t'], params.t,
            ),
        )
    forms = block['forms']
    top = max(n for coefficients in forms.values() for n in coefficients)
    built = build_family(params, d_max=max(forms), prec_out=top + 1)
    values = []  # type: List[GoldenValue]
    for d, coefficients in sorted(forms.items()):
        values.extend(compare(
            source, '{} f_{}'.format(block['name'], d), built.form(d),
            coefficients,
        ))
    return values


def check_generator(source: str, entry: Dict[str, Any]) -> List[GoldenValue]:
    generator = GeneratorId(entry['name'], entry.get('scale', 1))
    t = entry['t']
    top = max(entry['coefficients'])
    series = named_form(generator, top // t + 1)
    if series.t != t:
        raise HeckeGridError(
            "{} has t={}, expected {}".format(generator, series.t, t),
        )
    return compare(source, str(generator), series, entry['coefficients'])


def check_convention(source: str, entry: Dict[str, Any]) \
        -> List[GoldenValue]:
    """One value per candidate: 1 if it fits the eta product, else 0."""
    frozen = parse_convention(entry)
    scores = score_conventions(
        calibration_corpus(entry.get('samples', 100), entry.get('seed', 0)),
    )
    return [
        GoldenValue(
            source, 'jacobi {}'.format(convention), i,
            int(convention == frozen), int(scores[convention] == 0),
        )
        for i, convention in enumerate(CONVENTIONS)
    ]


def check_document(source: str, document: Dict[str, Any]) \
        -> List[GoldenValue]:
    values = []  # type: List[GoldenValue]
    for block in document.get('blocks', []):
        values.extend(check_block(source, block))
    for entry in document.get('generators', []):
        values.extend(check_generator(source, entry))
    if 'jacobi_convention' in document:
        values.extend(check_convention(source, document['jacobi_convention']))
    failures = [v for v in values if not v.ok]
    logger.info(
        "%s: %s values checked, %s failed", source, len(values),
        len(failures),
    )
    return values
