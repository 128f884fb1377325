"""
Shared plumbing for the harness management commands.

Every command reads its graphs from files or a family, writes one canonical
JSON object per line, and turns bad input or failed mathematics into a
CommandError (nonzero exit). "No CDC exists" is an answer, not an error.
"""
import logging
from typing import Any, Dict, Iterable, List

from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from core.exceptions import CdcError
from core.utils import dump_json, resolve_workers

from .ingest import FAMILIES, load_graphs
from .models import GraphRecord, JobSpec

logger = logging.getLogger(__name__)


class HarnessCommand(BaseCommand):
    strict_input = True
    # When set, --k is a CDC size (integer, n, n+c or n-c) and the family
    # parameter k moves to --family-k.
    size_bound = False

    def add_arguments(self, parser):
        parser.add_argument('inputs', nargs='*', help='graph6/sparse6 files, one graph per line')
        parser.add_argument('--family', choices=sorted(FAMILIES), help='generate the graph instead of reading files')
        if self.size_bound:
            parser.add_argument('--k', type=str, help='CDC size: an integer, n, n+c or n-c')
            parser.add_argument('--family-k', type=int, help='family parameter k')
        else:
            parser.add_argument('--k', type=int, help='family parameter k')
        parser.add_argument('--n', type=int, help='family parameter n')
        parser.add_argument('--layers', type=int, help='family parameter: number of layers')
        parser.add_argument('--steps', type=int, help='family parameter: stacking steps')
        parser.add_argument('--t', type=int, help='family parameter: chain length')
        parser.add_argument('--true-only', action='store_true', help='only true CDCs (no repeated cycle)')
        parser.add_argument('--output', type=str, help='write results here instead of stdout')
        parser.add_argument('--workers', type=int, help='worker processes (CDC_WORKERS wins)')
        self.add_job_arguments(parser)

    def add_job_arguments(self, parser):
        pass

    def job_from_options(self, options) -> JobSpec:
        params = {name: options.get(name) for name in ('n', 'layers', 'steps', 't')}
        params['k'] = options.get('family_k') if self.size_bound else options.get('k')
        return JobSpec(
            subcommand=self.job_name,
            inputs=tuple(options.get('inputs') or ()),
            family=options.get('family'),
            params={name: value for name, value in params.items() if value is not None},
            k=options.get('k') if self.size_bound else None,
            true_only=options.get('true_only', False),
            output=options.get('output'),
            workers=resolve_workers(options.get('workers')),
        )

    @property
    def job_name(self) -> str:
        return self.__module__.rsplit('.', 1)[-1]

    def handle(self, *args, **options):
        try:
            job = self.job_from_options(options)
            records = load_graphs(job, strict=self.strict_input)
            payloads = list(self.run(job, records, options))
        except (ValidationError, CdcError) as exc:
            message = '; '.join(exc.messages) if isinstance(exc, ValidationError) else str(exc)
            raise CommandError(f'{self.job_name}: {message}')
        self.emit(job, payloads)
        self.finish(job, payloads)

    def run(self, job: JobSpec, records: List[GraphRecord], options) -> Iterable[Dict[str, Any]]:
        raise NotImplementedError

    def finish(self, job: JobSpec, payloads: List[Dict[str, Any]]) -> None:
        pass

    def emit(self, job: JobSpec, payloads: List[Dict[str, Any]]) -> None:
        lines = [dump_json(payload) for payload in payloads]
        if job.output:
            with open(job.output, 'w') as handle:
                handle.write(''.join(line + '\n' for line in lines))
            self.stderr.write(self.style.SUCCESS(f'{len(lines)} results written to {job.output}'))
        else:
            for line in lines:
                self.stdout.write(line)
