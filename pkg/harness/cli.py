"""
Shared plumbing for the analyzer's management commands.

Exit codes: 0 when the command succeeds or the property holds, 1 when a
decide/verify property fails (output is still written), 2 for usage and
document errors, 3 when an exploration budget is exceeded.
"""
import logging

import orjson
from django.core.management.base import BaseCommand, CommandError

from systems.exceptions import (
    BudgetExceededError,
    ConsistencyError,
    DegenerateThresholdError,
    DocumentError,
    GeneratorError,
    NoTwoSidedOrbitError,
    UnknownSuiteError,
)
from systems.rationals import parse_threshold
from systems.serialization import load_system

logger = logging.getLogger(__name__)

EXIT_PROPERTY_FAILS = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

USAGE_ERRORS = (
    DegenerateThresholdError,
    GeneratorError,
    UnknownSuiteError,
    NoTwoSidedOrbitError,
    KeyError,
    ValueError,
)


class PropertyFails(Exception):
    """Raised by run() after the output is written, to exit with status 1."""


class ShadowLabCommand(BaseCommand):
    requires_system_checks = []
    requires_migrations_checks = False

    def add_file_argument(self, parser):
        parser.add_argument('file', help='System document (JSON)')

    def add_budget_argument(self, parser):
        parser.add_argument('--budget', type=int, default=None, help='Cap on explored states')

    def handle(self, *args, **options):
        try:
            self.run(**options)
        except PropertyFails as exc:
            raise CommandError(str(exc), returncode=EXIT_PROPERTY_FAILS) from exc
        except DocumentError as exc:
            raise CommandError(str(exc), returncode=EXIT_USAGE) from exc
        except BudgetExceededError as exc:
            raise CommandError(str(exc), returncode=EXIT_BUDGET) from exc
        except USAGE_ERRORS as exc:
            message = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
            raise CommandError(str(message), returncode=EXIT_USAGE) from exc
        except OSError as exc:
            raise CommandError(str(exc), returncode=EXIT_USAGE) from exc
        except ConsistencyError:
            logger.exception('internal cross-check failed in %s', self.__module__)
            raise

    def run(self, **options):
        raise NotImplementedError('subclasses of ShadowLabCommand must provide a run() method')

    def load(self, path):
        sys = load_system(path)
        logger.debug('loaded %s with %d points', path, sys.size)
        return sys

    def threshold(self, text, option):
        return parse_threshold(text, field=option)

    def point(self, sys, label):
        return sys.index_of(label)

    def write_json(self, payload):
        self.stdout.write(orjson.dumps(payload, option=orjson.OPT_INDENT_2).decode())

    def write_bytes(self, payload, destination=None):
        """Write to a file when `destination` is given, else to stdout."""
        if destination:
            with open(destination, 'wb') as handle:
                handle.write(payload)
        else:
            self.stdout.write(payload.decode(), ending='')
