# modules/commands/check.py
import json
import logging

import click

from . import check_group, get_config
from .options import matrix_option, quadext_option
from modules.exactnum import QuadExt
from modules.finitemv import (
    FiniteMV,
    evaluation_chain_report,
    hopficity_report,
    product_chains_up_to,
    znk_surjective_implies_injective,
)
from modules.fsb import diagram_report, es_agreement_report
from modules.gammagerms import chang_iso_check
from modules.mcnaughton import axiom_report
from utils.decorators import certificate_exit, math_failures_exit
from utils.helpers import parse_int_list

logger = logging.getLogger(__name__)


def _emit(report):
    click.echo(json.dumps(report, indent=2))
    return report


def _trials_and_seed(ctx, trials, seed):
    config = get_config(ctx)
    if trials is None:
        trials = config.getint('CHECKS', 'default_trials')
    if seed is None:
        seed = config.getint('CHECKS', 'default_seed')
    return trials, seed


@check_group.command(name='axioms')
@click.option('--trials', type=click.IntRange(min=1), default=None, help='Random term pairs (config [CHECKS] default_trials).')
@click.option('--seed', type=int, default=None, help='Random seed.')
@click.pass_context
@math_failures_exit
@certificate_exit
def axioms(ctx, trials, seed):
    """MV-algebra equations on random McNaughton functions of one and two variables."""
    trials, seed = _trials_and_seed(ctx, trials, seed)
    return _emit(axiom_report(trials, seed))


@check_group.command(name='evaluation')
@click.option('--trials', type=click.IntRange(min=1), default=None, help='Random (term, point) pairs.')
@click.option('--seed', type=int, default=None, help='Random seed.')
@click.option('--max-den', type=click.IntRange(min=1), default=12, show_default=True)
@click.pass_context
@math_failures_exit
@certificate_exit
def evaluation(ctx, trials, seed, max_den):
    """Evaluation at rational points lands in finite chains and is a homomorphism."""
    trials, seed = _trials_and_seed(ctx, trials, seed)
    return _emit(evaluation_chain_report(trials, seed, max_den))


@check_group.command(name='hopfian')
@click.option('--chains', required=True, help='Chain sizes of the product, e.g. "2,3" for Ł2×Ł3.')
@click.pass_context
@math_failures_exit
@certificate_exit
def hopfian(ctx, chains):
    """Enumerate the endomorphisms of a finite product of chains."""
    try:
        sizes = parse_int_list(chains)
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint='--chains')
    if not sizes or any(s < 2 for s in sizes):
        raise click.BadParameter("chain sizes must be at least 2", param_hint='--chains')
    limit = get_config(ctx).getint('LIMITS', 'max_finite_algebra_size')
    report = hopficity_report(FiniteMV.of(*(s - 1 for s in sizes)), max_size=limit)
    report["passes"] = report["hopfian"]
    return _emit(report)


@check_group.command(name='products')
@click.option('--max-size', type=click.IntRange(min=2), default=36, show_default=True)
@click.pass_context
@math_failures_exit
@certificate_exit
def products(ctx, max_size):
    """Every product of chains with at most MAX_SIZE elements is hopfian."""
    limit = get_config(ctx).getint('LIMITS', 'max_finite_algebra_size')
    reports = [hopficity_report(a, max_size=limit) for a in product_chains_up_to(max_size)]
    summary = {
        "max_size": max_size,
        "algebras": len(reports),
        "non_hopfian": [r["algebra"] for r in reports if not r["hopfian"]],
    }
    summary["passes"] = not summary["non_hopfian"]
    return _emit(summary)


@check_group.command(name='znk')
@click.option('--matrix', 'matrix', required=True, help='Integer matrix, rows separated by ";".')
@click.pass_context
@math_failures_exit
@certificate_exit
def znk(ctx, matrix):
    """Smith normal form: a surjective endomorphism of Z^k is injective."""
    limit = get_config(ctx).getint('LIMITS', 'max_snf_size')
    report = znk_surjective_implies_injective(matrix_option(matrix), max_size=limit)
    report["passes"] = report["implication_holds"]
    return _emit(report)


@check_group.command(name='chang')
@click.option('--window', type=click.IntRange(min=0), default=None, help='Bound on |k|.')
@click.pass_context
@math_failures_exit
@certificate_exit
def chang(ctx, window):
    """Chang algebra operations against germs and representative functions."""
    if window is None:
        window = get_config(ctx).getint('CHECKS', 'chang_window')
    return _emit(chang_iso_check(window))


@check_group.command(name='diagram')
@click.option('--depth', type=click.IntRange(min=0), default=12, show_default=True)
@click.pass_context
@math_failures_exit
@certificate_exit
def diagram(ctx, depth):
    """Bratteli rows against an independent mediant-tree construction."""
    return _emit(diagram_report(depth, max_depth=get_config(ctx).max_depth))


@check_group.command(name='es')
@click.option('--theta', default='golden', show_default=True)
@click.option('--samples', type=click.IntRange(min=1), default=1000, show_default=True)
@click.option('--bound', type=click.IntRange(min=1), default=100, show_default=True)
@click.option('--seed', type=int, default=None)
@click.pass_context
@math_failures_exit
@certificate_exit
def es(ctx, theta, samples, bound, seed):
    """Exact Effros-Shen order against an interval enclosure."""
    config = get_config(ctx)
    digits = config.getint('CHECKS', 'effros_shen_digits')
    if seed is None:
        seed = config.getint('CHECKS', 'default_seed')
    value = quadext_option(theta)
    if not isinstance(value, QuadExt):
        raise click.BadParameter("theta must be irrational", param_hint="--theta")
    return _emit(es_agreement_report(value, samples, bound, digits, seed))
