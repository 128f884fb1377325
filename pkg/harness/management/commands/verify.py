"""
Management command to check CDCs written by mincdc, enumerate or construct.

Each JSON line of the CDC file is matched to an input graph by its "graph"
id. Lines with "size": null (no CDC exists) are skipped. Exits nonzero if
any CDC fails.

Usage: python manage.py verify graphs.g6 --cdc covers.jsonl
"""
import json

from django.core.exceptions import ValidationError
from django.core.management.base import CommandError

from cdc.models import cdc_from_json
from cdc.verification import verify_cdc
from harness.command_base import HarnessCommand


class Command(HarnessCommand):
    help = 'Verify that stored CDCs cover every edge of their graph exactly twice'

    def add_job_arguments(self, parser):
        parser.add_argument('--cdc', type=str, required=True, help='JSON-lines file of CDCs')

    def run(self, job, records, options):
        by_witness = {record.witness: record for record in records}
        try:
            with open(options['cdc']) as handle:
                lines = [line for line in handle if line.strip()]
        except OSError as exc:
            raise ValidationError(f'cannot read {options["cdc"]}: {exc.strerror}')

        for line_num, line in enumerate(lines, start=1):
            try:
                payload = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValidationError(f'CDC line {line_num}: {exc.msg}')
            if payload.get('cycles') is None:
                continue
            witness = payload.get('graph')
            if witness is None and len(records) == 1:
                witness = records[0].witness
            if witness not in by_witness:
                raise ValidationError(f'CDC line {line_num} refers to unknown graph {witness!r}')
            g = by_witness[witness].graph
            report = verify_cdc(g, cdc_from_json(g, payload))
            yield {
                'graph': witness,
                'line': line_num,
                'valid': report.valid,
                'undercovered': report.undercovered,
                'overcovered': report.overcovered,
            }

    def finish(self, job, payloads):
        failed = [payload for payload in payloads if not payload['valid']]
        if failed:
            raise CommandError(f'verify: {len(failed)} of {len(payloads)} CDCs do not verify')
        self.stderr.write(self.style.SUCCESS(f'{len(payloads)} CDCs verified'))
