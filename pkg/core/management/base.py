# core/management/base.py
import logging

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError
from pydantic import ValidationError

from core.services.report import json_text, write_json
from spectrum.exceptions import CircleMapError

logger = logging.getLogger(__name__)

# exit statuses
CHECKS_FAILED = 1
BAD_INPUT = 2


class CircleMapsCommand(BaseCommand):
    """Adds the global flags and turns toolkit rejections into exit status 2."""

    def add_arguments(self, parser):
        parser.add_argument('--grid', type=int, default=settings.SPECTRUM_DEFAULT_GRID, help="Sample count N")
        parser.add_argument('--bandwidth', type=int, default=None, help="Coefficient bandwidth M (default N/2 - 1)")
        parser.add_argument('--seed', type=int, default=0)
        parser.add_argument('--out', default=None, help="Output path; stdout when omitted")
        parser.add_argument('--workers', type=int, default=None, help="Worker threads (default US_THREADS)")

    def handle(self, *args, **options):
        try:
            return self.run(**options)
        except (CircleMapError, ValidationError) as exc:
            raise CommandError(str(exc), returncode=BAD_INPUT) from exc

    def run(self, **options):
        raise NotImplementedError

    def emit(self, payload, out):
        if out:
            path = write_json(payload, out)
            self.stdout.write(f"wrote {path}")
        else:
            self.stdout.write(json_text(payload), ending='')

    def fail_on(self, ledgers, where=None):
        failures = [check.name for ledger in ledgers for check in ledger.failures()]
        if failures:
            shown = ', '.join(failures[:5]) + (' ...' if len(failures) > 5 else '')
            location = f"; report at {where}" if where else ''
            raise CommandError(f"{len(failures)} gated checks failed: {shown}{location}", returncode=CHECKS_FAILED)
