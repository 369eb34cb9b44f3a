"""Shared plumbing for the kfano management commands."""

import logging

from django.core.management.base import BaseCommand, CommandError

from exactnum import as_rational
from kfano.exceptions import DomainError, KFanoError

logger = logging.getLogger(__name__)

USAGE_ERROR = 2
CHECK_FAILED = 1


def optional_rational(text):
    return None if text is None else as_rational(text)


def rational_triple(text):
    parts = text.split(",")
    if len(parts) != 3:
        raise DomainError(f"expected three comma-separated rationals, got {text!r}")
    return tuple(as_rational(part) for part in parts)


class KFanoCommand(BaseCommand):
    """
    Base command. Subclasses implement run(); library errors leave with exit
    status 2 and failed checks with status 1.

    Rational options are taken as text and parsed in run(), so malformed
    numbers are reported like any other input error.
    """

    def handle(self, *args, **options):
        try:
            return self.run(*args, **options)
        except KFanoError as exc:
            logger.debug(f"{type(exc).__name__}: {exc}")
            raise CommandError(str(exc), returncode=USAGE_ERROR) from exc

    def run(self, *args, **options):
        raise NotImplementedError

    def fail(self, message):
        raise CommandError(message, returncode=CHECK_FAILED)

    def emit(self, payload):
        """Write bytes or text to stdout without an extra newline"""
        if isinstance(payload, bytes):
            payload = payload.decode("utf-8")
        self.stdout.write(payload, ending="")
