"""
Management command to run the self-check suite.

Optional graph files add the class sweeps (planar cubic 2-connected graphs,
planar 4-connected graphs). Slow checks run with --full or when
CDC_SLOW_TESTS=True.

Usage: python manage.py selfcheck [--full] [corpus.g6 ...]
"""

from django.conf import settings
from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from harness.acceptance import run_checks
from harness.ingest import load_graphs
from harness.models import JobSpec


class Command(BaseCommand):
    help = 'Check known CDC values, constructor bounds and the brute-force oracle'

    def add_arguments(self, parser):
        parser.add_argument('corpus', nargs='*', help='graph6/sparse6 files for the class sweeps')
        parser.add_argument('--full', action='store_true', help='include the slow checks')

    def handle(self, *args, **options):
        full = options.get('full') or getattr(settings, 'CDC_SLOW_TESTS', False)
        records = []
        if options.get('corpus'):
            try:
                records = load_graphs(JobSpec('selfcheck', inputs=tuple(options['corpus'])), strict=False)
            except ValidationError as exc:
                raise CommandError(f'selfcheck: {"; ".join(exc.messages)}')

        self.stdout.write(f'{"="*60}')
        self.stdout.write(f'Self-check ({"full" if full else "quick"}, {len(records)} corpus graphs)')
        self.stdout.write(f'{"="*60}')

        results = run_checks(records, full=full)
        for result in results:
            if not result.passed:
                self.stdout.write(self.style.ERROR(f'FAIL {result.name}: {result.detail}'))
            elif result.detail.startswith('skipped'):
                self.stdout.write(self.style.WARNING(f'SKIP {result.name}: {result.detail}'))
            else:
                self.stdout.write(self.style.SUCCESS(f'PASS {result.name}: {result.detail}'))

        failed = [result for result in results if not result.passed]
        if failed:
            raise CommandError(f'{len(failed)} of {len(results)} checks failed')
        self.stdout.write(self.style.SUCCESS(f'\nAll {len(results)} checks passed'))
