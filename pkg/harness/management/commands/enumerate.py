"""
Management command to list every CDC up to a size bound.

One JSON line per CDC, by size and then canonical order.

Usage: python manage.py enumerate --family antiprism --family-k 4 --k n+2
"""

from django.core.exceptions import ValidationError

from cdc.solver import enumerate_cdcs
from harness.command_base import HarnessCommand
from harness.ingest import parse_size


class Command(HarnessCommand):
    help = 'Every CDC (or true CDC) of size at most k'
    size_bound = True

    def run(self, job, records, options):
        if job.k is None:
            raise ValidationError('enumerate needs --k')
        for record in records:
            bound = parse_size(job.k, record.graph.vertex_count)
            for cdc in enumerate_cdcs(record.graph, bound, true_only=job.true_only, workers=job.workers):
                yield {'graph': record.witness, **cdc.to_json()}
