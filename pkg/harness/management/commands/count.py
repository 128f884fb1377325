"""
Management command to count the k-CDCs of every input graph.

Usage: python manage.py count antiprism.g6 --k n+2 [--true-only]
"""

from django.core.exceptions import ValidationError

from cdc.solver import count_cdcs
from harness.command_base import HarnessCommand
from harness.ingest import parse_size


class Command(HarnessCommand):
    help = 'Number of k-CDCs (or true k-CDCs) of each graph; k may be written n+c'
    size_bound = True

    def run(self, job, records, options):
        if job.k is None:
            raise ValidationError('count needs --k')
        for record in records:
            k = parse_size(job.k, record.graph.vertex_count)
            yield {
                'graph': record.witness,
                'k': k,
                'true': job.true_only,
                'count': count_cdcs(record.graph, k, true_only=job.true_only, workers=job.workers),
            }
