"""
Management command to fold a statistic over a graph file into a table.

Graphs outside the chosen class are filtered out before folding; unreadable
lines are skipped with a warning.

Usage: python manage.py table cubic10.g6 --class cubic-2-connected --stat max-mincdc
       python manage.py table planar.g6 --class any --stat count-at-k --k n-1 --xlsx table.xlsx
"""

from harness.command_base import HarnessCommand
from harness.stats import CLASS_FILTERS, STATISTICS, fold_table, table_to_csv, write_xlsx


class Command(HarnessCommand):
    help = 'Per-order table of a CDC statistic (CSV: class,n,stat,value,witness)'
    strict_input = False
    size_bound = True

    def add_job_arguments(self, parser):
        parser.add_argument('--class', dest='class_label', choices=list(CLASS_FILTERS), default='any',
                            help='graph class to keep')
        parser.add_argument('--stat', choices=list(STATISTICS), required=True, help='statistic to fold')
        parser.add_argument('--xlsx', type=str, help='also write the table as an Excel workbook')

    def run(self, job, records, options):
        rows = fold_table(records, options['class_label'], options['stat'], k=job.k, workers=job.workers)
        if options.get('xlsx'):
            write_xlsx(rows, options['xlsx'])
        return rows

    def emit(self, job, rows):
        if job.output:
            table_to_csv(rows, job.output)
            self.stderr.write(self.style.SUCCESS(f'{len(rows)} rows written to {job.output}'))
        else:
            self.stdout.write(table_to_csv(rows), ending='')
