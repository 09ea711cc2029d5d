# modules/commands/demo.py
import json
import logging

import click

from . import demo_group, get_config
from modules.eigenhopf import eigen_certificate
from modules.gammagerms import chang_iso_check, quadrant_nonhopfian_certificate
from modules.mcnaughton import shift_kernel_demo
from utils.decorators import certificate_exit, math_failures_exit

logger = logging.getLogger(__name__)


def _holds(flag):
    return "=" if flag else "≠"


def render_quadrant_certificate(certificate):
    """The three identities and the verdict as text lines."""
    surjective = certificate["sigma_x_is_x"] and certificate["sigma_y_preimage_is_y"]
    injective = not (certificate["kernel_element_nonzero"] and certificate["sigma_kernel_is_zero"])
    return [
        f"σ(x) {_holds(certificate['sigma_x_is_x'])} x",
        f"σ((y−x)∨0) {_holds(certificate['sigma_y_preimage_is_y'])} y",
        f"σ((x−y)∨0) {_holds(certificate['sigma_kernel_is_zero'])} 0",
        f"homomorphism: {str(certificate['homomorphism']).lower()}",
        f"surjective: {str(surjective).lower()}, injective: {str(injective).lower()}",
    ]


def _emit(certificate):
    click.echo(json.dumps(certificate, indent=2))
    return certificate


@demo_group.command(name='nonhopf-quadrant')
@math_failures_exit
@certificate_exit
def nonhopf_quadrant():
    """Shear endomorphism of the quadrant germ group: surjective, not injective."""
    certificate = quadrant_nonhopfian_certificate()
    for line in render_quadrant_certificate(certificate):
        click.echo(line)
    return certificate


@demo_group.command(name='nonhopf-eigen')
@math_failures_exit
@certificate_exit
def nonhopf_eigen():
    """Eigen-segment endomorphism of a McNaughton algebra with a nonzero kernel."""
    return _emit(eigen_certificate())


@demo_group.command(name='chang-germ')
@click.option('--window', type=click.IntRange(min=0), default=None, help='Bound on |k| (config [CHECKS] chang_window).')
@click.pass_context
@math_failures_exit
@certificate_exit
def chang_germ(ctx, window):
    """The Chang algebra as germs at 0 of one-variable McNaughton functions."""
    if window is None:
        window = get_config(ctx).getint('CHECKS', 'chang_window')
    return _emit(chang_iso_check(window))


@demo_group.command(name='shift')
@math_failures_exit
@certificate_exit
def shift():
    """A nonzero two-variable term killed by identifying its variables."""
    return _emit(shift_kernel_demo())
