"""
Management command to compute a minimum CDC of every input graph.

Usage: python manage.py mincdc graphs.g6 [--true-only] [--workers 4]
       python manage.py mincdc --family petersen
"""

from cdc.solver import min_cdc
from harness.command_base import HarnessCommand


class Command(HarnessCommand):
    help = 'Minimum (true) CDC of each graph, with a canonical witness'

    def run(self, job, records, options):
        for record in records:
            result = min_cdc(record.graph, true_only=job.true_only, workers=job.workers)
            payload = {'graph': record.witness, 'n': record.graph.vertex_count, 'm': record.graph.m}
            if result is None:
                payload.update(size=None, true=None, cycles=None)
            else:
                payload.update(result[1].to_json())
            yield payload
