# utils/decorators.py
from functools import wraps
import logging

import click

from modules.errors import MVForgeError

logger = logging.getLogger(__name__)


def math_failures_exit(f):
    """Turn library failures into exit status 1 with the message on stderr."""
    @wraps(f)
    def decorated_function(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except MVForgeError as e:
            logger.warning(f"{f.__name__}: {type(e).__name__}: {e}")
            click.echo(f"Error: {e}", err=True)
            raise SystemExit(1)
    return decorated_function


def certificate_exit(f):
    """Exit 1 when the returned certificate does not pass."""
    @wraps(f)
    def decorated_function(*args, **kwargs):
        certificate = f(*args, **kwargs)
        if isinstance(certificate, dict) and not certificate.get("passes", True):
            logger.warning(f"{f.__name__}: certificate failed")
            raise SystemExit(1)
        return certificate
    return decorated_function
