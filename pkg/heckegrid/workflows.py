# Copyright (C) 2015-2016 Skylable Ltd. <info-copyright@skylable.com>
# License: Apache 2.0, see LICENSE for more details.

"""The subcommands. Each returns an exit status."""

import json
import logging
from functools import partial
from typing import Any, Dict, Iterable, List, Optional, Tuple

from humanfriendly.tables import format_pretty_table
import yaml

from heckegrid.config import RunConfig
from heckegrid.congruence import (
    check_family_congruence, check_level34_statement, congruence_chain_check,
    estimate_ap,
)
from heckegrid.generators import named_form
from heckegrid.golden import check_document, load_corpus
from heckegrid.grid import GridFamily, build_family, extend_ladder
from heckegrid.hecke import (
    HeckeSpec, check_admissible, check_grid_identity, identity_window,
)
from heckegrid.jobs import run_jobs
from heckegrid.logs import format_verdict_line
from heckegrid.multiplier import run_multcheck
from heckegrid.qseries import format_series


logger = logging.getLogger(__name__)


EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_PRECISION = 3


def overall_verdict(verdicts: Iterable[str]) -> str:
    verdicts = list(verdicts)
    if 'fail' in verdicts:
        return 'fail'
    if 'inconclusive' in verdicts:
        return 'inconclusive'
    return 'pass'


def exit_status(verdict: str) -> int:
    return {
        'pass': EXIT_OK,
        'fail': EXIT_FAILURE,
        'inconclusive': EXIT_PRECISION,
    }[verdict]


def dump_json(payload: Dict[str, Any]) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + '\n'


def write_json(payload: Dict[str, Any], path: Optional[str]) -> None:
    text = dump_json(payload)
    if path is None:
        print(text, end='')
        return
    with open(path, 'w') as f:
        f.write(text)
    logger.info("Wrote %s", path)


def read_json(path: str) -> Dict[str, Any]:
    with open(path) as f:
        return json.load(f)


def with_config(payload: Dict[str, Any], config: RunConfig) \
        -> Dict[str, Any]:
    payload = dict(payload)
    payload['config'] = config.serialize()
    return payload


def load_family(config: RunConfig,
                d_max: Optional[int] = None) -> GridFamily:
    if config.family_path is not None:
        return GridFamily.from_payload(read_json(config.family_path))
    return build_family(
        config.family_params(), config.d_max or d_max, config.prec,
    )


def prime_powers(config: RunConfig) -> List[Tuple[int, int]]:
    return [(p, n) for p in config.primes for n in config.powers]


def build(config: RunConfig) -> int:
    family = build_family(config.family_params(), config.d_max, config.prec)
    write_json(with_config(family.serialize(), config), config.out)
    return EXIT_OK


def show(config: RunConfig) -> int:
    if config.form is not None:
        series = named_form(config.form, config.prec)
        label = config.form.name if config.form.scale == 1 \
            else str(config.form)
    else:
        family = GridFamily.from_payload(read_json(config.input_path))
        series = family.form(config.d)
        label = 'f_{}'.format(config.d)
    print('{} = {}'.format(label, format_series(series, config.terms)))
    return EXIT_OK


def hecke(config: RunConfig) -> int:
    family = load_family(config)
    params = family.params
    pairs = prime_powers(config)
    for p, n in pairs:
        check_admissible(HeckeSpec.for_family(params, p, n))
    top = max(p ** n for p, n in pairs)
    ready = extend_ladder(
        family, top * params.first_d,
        max(family.prec, identity_window(params)),
    )
    reports = run_jobs(
        [partial(check_grid_identity, ready, p, n) for p, n in pairs],
        config.threads,
    )
    for report in reports:
        logger.info(format_verdict_line(
            'T({}^{}) f_{}'.format(report.p, report.n, params.first_d),
            report.verdict,
            {'survivors': report.survivors, 'scale': report.scale,
             'correction': report.correction},
        ).rstrip())
    verdict = overall_verdict(r.verdict for r in reports)
    write_json(with_config({
        'family': str(params),
        'identities': [r.serialize() for r in reports],
        'verdict': verdict,
    }, config), config.report)
    return exit_status(verdict)


def congruence(config: RunConfig) -> int:
    pairs = prime_powers(config)
    payload = {}  # type: Dict[str, Any]
    if config.level34 is not None:
        reports = run_jobs([
            partial(
                check_level34_statement, config.level34, config.combination,
                p, n,
            )
            for p, n in pairs
        ], config.threads)
        payload['statement'] = 'level {}'.format(config.level34)
        verdicts = [r.verdict for r in reports]
    else:
        family = load_family(config, d_max=1)
        payload['family'] = str(family.params)
        reports = run_jobs([
            partial(check_family_congruence, family, p, n)
            for p, n in pairs
        ], config.threads)
        verdicts = [r.verdict for r in reports]
        if config.n_max is not None:
            defects = run_jobs([
                partial(estimate_ap, family, p, config.n_max)
                for p in config.primes
            ], config.threads)
            payload['ap'] = {
                str(p): a for p, a in zip(config.primes, defects)
            }
            verdicts.extend('pass' if a == 0 else 'fail' for a in defects)
        if config.chain:
            chains = run_jobs([
                partial(congruence_chain_check, family, p, n)
                for p, n in pairs
            ], config.threads)
            payload['chain'] = chains
            verdicts.extend(c['verdict'] for c in chains)

    for report in reports:
        logger.info(format_verdict_line(
            'U({}^{})'.format(report.p, report.n), report.verdict,
            {'target': report.target, 'valuation': report.min_valuation,
             'survivors': report.survivors},
        ).rstrip())
    payload['reports'] = [r.serialize() for r in reports]
    payload['verdict'] = overall_verdict(verdicts)
    write_json(with_config(payload, config), config.json_path)
    return exit_status(payload['verdict'])


def multcheck(config: RunConfig) -> int:
    summary = run_multcheck(samples=config.samples, seed=config.seed)
    oracle = summary['oracle']
    logger.info(format_verdict_line(
        'multipliers', summary['verdict'],
        {'samples': config.samples, 'oracle_failures': oracle['failures'],
         'worst_error': oracle['worst_error'],
         'convention': summary['convention']['calibrated']},
    ).rstrip())
    write_json(with_config(summary, config), config.json_path)
    return exit_status(summary['verdict'])


def selftest(config: RunConfig) -> int:
    corpus = load_corpus()
    sources = sorted(corpus)
    results = run_jobs(
        [partial(check_document, s, corpus[s]) for s in sources],
        config.threads,
    )
    rows = []  # type: List[List[Any]]
    files = {}  # type: Dict[str, Dict[str, Any]]
    total = failed = 0
    for source, values in zip(sources, results):
        failures = [v for v in values if not v.ok]
        for v in failures:
            logger.error(
                "%s: %s at %s is %s, expected %s",
                v.source, v.form, v.n, v.actual, v.expected,
            )
        verdict = 'fail' if failures else 'pass'
        rows.append([source, len(values), len(failures), verdict])
        files[source] = {
            'checked': len(values),
            'failed': len(failures),
            'verdict': verdict,
        }
        total += len(values)
        failed += len(failures)

    print(format_pretty_table(
        rows, column_names=['Corpus file', 'Values', 'Failed', 'Verdict'],
    ))
    verdict = 'fail' if failed else 'pass'
    logger.info("%s golden values checked, %s failed", total, failed)
    if config.out is not None:
        with open(config.out, 'w') as f:
            yaml.safe_dump({
                'config': config.serialize(),
                'files': files,
                'checked': total,
                'failed': failed,
                'verdict': verdict,
            }, f, default_flow_style=False)
        logger.info("Wrote %s", config.out)
    return exit_status(verdict)

