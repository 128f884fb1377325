import json
import os
import tempfile
from fractions import Fraction
from io import StringIO
from unittest import skipUnless

import openpyxl
from django.conf import settings
from django.core.exceptions import ValidationError
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from cdc.solver import min_cdc
from core.exceptions import NotApplicableError
from constructions.families import (
    gen_complete, gen_cube, gen_double_wheel, gen_octahedron, gen_petersen, gen_prism,
)
from graphs.formats import graph_to_line
from graphs.models import build_graph

from .acceptance import (
    brute_force_census, check_defects, check_oracle, check_partitions, check_small_join, check_triangulations,
    oracle_graphs, partitions_by_table,
)
from .cli import cli_run
from .ingest import build_family, load_graphs, parse_size, scan_graph_file
from .models import GraphRecord, JobSpec
from .stats import (
    CLASS_FILTERS, defect, fold_table, format_value, long_cycle_count, table_to_csv, theorem1_instance_check,
    write_xlsx,
)


class WorkspaceMixin:

    def setUp(self):
        self.workspace = tempfile.TemporaryDirectory()
        self.addCleanup(self.workspace.cleanup)

    def path(self, name):
        return os.path.join(self.workspace.name, name)

    def write_graphs(self, name, graphs, extra_lines=()):
        path = self.path(name)
        with open(path, 'w') as handle:
            for g in graphs:
                handle.write(graph_to_line(g) + '\n')
            for line in extra_lines:
                handle.write(line + '\n')
        return path

    def run_command(self, *args, **options):
        out, err = StringIO(), StringIO()
        call_command(*args, stdout=out, stderr=err, **options)
        return out.getvalue(), err.getvalue()

    def json_lines(self, text):
        return [json.loads(line) for line in text.splitlines() if line.strip()]


class JobSpecTests(SimpleTestCase):

    def test_exactly_one_source(self):
        with self.assertRaises(ValidationError):
            JobSpec('mincdc')
        with self.assertRaises(ValidationError):
            JobSpec('mincdc', inputs=('a.g6',), family='cube')
        self.assertEqual(JobSpec('mincdc', family='cube').inputs, ())


class IngestTests(WorkspaceMixin, SimpleTestCase):

    def test_parse_size(self):
        self.assertEqual(parse_size('n+2', 8), 10)
        self.assertEqual(parse_size('n - 1', 8), 7)
        self.assertEqual(parse_size('n', 8), 8)
        self.assertEqual(parse_size('5', 8), 5)
        for bad in ('2n', 'n*2', 'n-9', ''):
            with self.assertRaises(ValidationError):
                parse_size(bad, 8)

    def test_build_family(self):
        record = build_family('antiprism', {'k': 4})
        self.assertEqual(record.witness, 'antiprism(k=4)')
        self.assertEqual(record.graph.vertex_count, 8)
        self.assertIsNotNone(record.embedding)
        with self.assertRaisesRegex(ValidationError, '--k'):
            build_family('antiprism', {})
        with self.assertRaises(ValidationError):
            build_family('dodecahedron', {})

    def test_scan_marks_bad_lines(self):
        path = self.write_graphs('mixed.g6', [gen_complete(4)], extra_lines=['', '!!'])
        rows = scan_graph_file(path)
        self.assertEqual([row['valid'] for row in rows], [True, False])
        self.assertEqual(rows[1]['line_num'], 3)
        self.assertTrue(rows[1]['errors'])

    def test_load_strict_and_lenient(self):
        path = self.write_graphs('mixed.g6', [gen_complete(4)], extra_lines=['!!'])
        job = JobSpec('table', inputs=(path,))
        with self.assertRaisesRegex(ValidationError, 'mixed.g6:2'):
            load_graphs(job)
        with self.assertLogs('harness.ingest', level='WARNING'):
            records = load_graphs(job, strict=False)
        self.assertEqual([r.witness for r in records], ['mixed.g6:1'])

    def test_missing_file(self):
        with self.assertRaises(ValidationError):
            scan_graph_file(self.path('absent.g6'))


class StatsTests(SimpleTestCase):

    def test_defects(self):
        self.assertEqual(defect(gen_cube()), Fraction(1))
        self.assertEqual(defect(gen_petersen()), Fraction(5, 3))
        self.assertEqual(defect(gen_complete(4)), Fraction(0))

    def test_defect_needs_a_cover(self):
        with self.assertRaises(NotApplicableError):
            defect(build_graph(3, [(0, 1), (1, 2)]))

    def test_long_cycles(self):
        _, cdc = min_cdc(gen_complete(4))
        self.assertEqual(long_cycle_count(cdc), 3)

    def test_hamiltonian_inequality_on_octahedron(self):
        total, hamiltonian, holds = theorem1_instance_check(gen_octahedron())
        self.assertGreater(total, 0)
        self.assertGreater(hamiltonian, 0)
        self.assertTrue(holds)

    def test_class_filters(self):
        self.assertTrue(CLASS_FILTERS['cubic-3-connected'](gen_petersen()))
        self.assertFalse(CLASS_FILTERS['cubic-2-connected'](gen_octahedron()))
        self.assertTrue(CLASS_FILTERS['planar-4-connected'](gen_octahedron()))
        self.assertTrue(CLASS_FILTERS['planar-4-connected'](gen_double_wheel(7)))
        self.assertFalse(CLASS_FILTERS['planar-4-connected'](gen_cube()))

    def test_format_value(self):
        self.assertEqual(format_value(None), 'inf')
        self.assertEqual(format_value(Fraction(5, 3)), '5/3')
        self.assertEqual(format_value(Fraction(4, 2)), '2')
        self.assertEqual(format_value(7), '7')

    def test_fold_max_and_min(self):
        records = [
            GraphRecord('in:1', gen_complete(4)),
            GraphRecord('in:2', gen_prism(5)),
            GraphRecord('in:3', gen_petersen()),
            GraphRecord('in:4', gen_octahedron()),
        ]
        rows = fold_table(records, 'cubic-2-connected', 'max-mincdc')
        self.assertEqual([(row.n, row.value, row.witness) for row in rows], [(4, '3', 'in:1'), (10, '5', 'in:3')])
        rows = fold_table(records, 'cubic-2-connected', 'min-mincdc')
        self.assertEqual(rows[-1].witness, 'in:2')

    def test_fold_defect_and_counts(self):
        records = [GraphRecord('a', gen_cube()), GraphRecord('b', gen_petersen())]
        rows = fold_table(records, 'any', 'max-defect')
        self.assertEqual([row.value for row in rows], ['1', '5/3'])
        rows = fold_table([GraphRecord('k4', gen_complete(4))], 'any', 'count-at-k', k='n-1')
        self.assertEqual(rows[0].value, '1')
        with self.assertRaises(ValidationError):
            fold_table(records, 'any', 'count-at-k')
        with self.assertRaises(ValidationError):
            fold_table(records, 'snarks', 'max-mincdc')

    def test_no_cover_is_infinite(self):
        rows = fold_table([GraphRecord('path', build_graph(3, [(0, 1), (1, 2)]))], 'any', 'max-mincdc')
        self.assertEqual(rows[0].value, 'inf')
        self.assertEqual(fold_table([GraphRecord('path', build_graph(3, [(0, 1), (1, 2)]))], 'any', 'max-defect'), [])

    def test_csv_and_xlsx(self):
        rows = fold_table([GraphRecord('k4', gen_complete(4))], 'any', 'max-mincdc')
        text = table_to_csv(rows)
        self.assertEqual(text.splitlines(), ['class,n,stat,value,witness', 'any,4,max-mincdc,3,k4'])
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'table.xlsx')
            write_xlsx(rows, path)
            sheet = openpyxl.load_workbook(path).active
            self.assertEqual(sheet.cell(row=1, column=1).value, 'class')
            self.assertEqual(sheet.cell(row=2, column=5).value, 'k4')


class CommandTests(WorkspaceMixin, SimpleTestCase):

    def test_gen_writes_graph_and_embedding(self):
        out, _ = self.run_command('gen', 'antiprism', k=4)
        line, embedding = out.splitlines()
        self.assertEqual(json.loads(embedding)['n'], 8)
        self.assertFalse(line.startswith(':'))

    def test_gen_then_count(self):
        graph_path = self.path('antiprism.g6')
        self.run_command('gen', 'antiprism', k=4, output=graph_path, embedding_output=self.path('a.json'))
        out, _ = self.run_command('count', graph_path, k='n+2')
        self.assertEqual(self.json_lines(out), [{'graph': 'antiprism.g6:1', 'k': 10, 'true': False, 'count': 3}])
        out, _ = self.run_command('count', graph_path, k='n+2', true_only=True)
        self.assertEqual(self.json_lines(out)[0]['count'], 1)

    def test_count_needs_k(self):
        with self.assertRaises(CommandError):
            self.run_command('count', family='cube')

    def test_mincdc_family(self):
        out, _ = self.run_command('mincdc', family='petersen')
        payload = self.json_lines(out)[0]
        self.assertEqual(payload['graph'], 'petersen()')
        self.assertEqual(payload['size'], 5)

    def test_mincdc_without_cover_is_not_an_error(self):
        path = self.write_graphs('tree.g6', [build_graph(3, [(0, 1), (1, 2)])])
        out, _ = self.run_command('mincdc', path)
        payload = self.json_lines(out)[0]
        self.assertIsNone(payload['size'])
        self.assertIsNone(payload['cycles'])

    def test_worker_count_does_not_change_output(self):
        one, _ = self.run_command('mincdc', family='petersen', workers=1)
        two, _ = self.run_command('mincdc', family='petersen', workers=2)
        self.assertEqual(one, two)

    def test_mincdc_round_trips_through_verify(self):
        graphs = self.write_graphs('mixed.g6', [gen_complete(4), gen_cube(), build_graph(3, [(0, 1), (1, 2)])])
        covers = self.path('covers.jsonl')
        self.run_command('mincdc', graphs, output=covers)
        out, err = self.run_command('verify', graphs, cdc=covers)
        self.assertEqual([p['valid'] for p in self.json_lines(out)], [True, True])
        self.assertIn('2 CDCs verified', err)

    def test_verify_rejects_a_bad_cover(self):
        graphs = self.write_graphs('k4.g6', [gen_complete(4)])
        covers = self.path('bad.jsonl')
        with open(covers, 'w') as handle:
            handle.write(json.dumps({'graph': 'k4.g6:1', 'cycles': [{'edges': [0, 1, 3], 'mult': 2}]}) + '\n')
        with self.assertRaisesRegex(CommandError, 'do not verify'):
            self.run_command('verify', graphs, cdc=covers)

    def test_construct_cubic_half_verifies(self):
        covers = self.path('half.jsonl')
        self.run_command('construct', family='prism', k=5, constructor='cubic-half', output=covers)
        with open(covers) as handle:
            payload = json.loads(handle.readline())
        self.assertLessEqual(payload['size'], 5)
        self.assertIn('case_trace', payload)
        self.run_command('verify', family='prism', k=5, cdc=covers)

    def test_construct_antiprism(self):
        out, _ = self.run_command('construct', family='antiprism', k=4, constructor='antiprism')
        payloads = self.json_lines(out)
        self.assertEqual([p['size'] for p in payloads], [10, 10, 10])
        self.assertEqual([p['true'] for p in payloads], [True, False, False])

    def test_construct_even_cover(self):
        out, _ = self.run_command('construct', family='complete', n=5, constructor='even-cover')
        parts = self.json_lines(out)[0]['even_subgraphs']
        self.assertEqual(len(parts), 3)
        self.assertEqual(sorted(sum(parts, [])), sorted(list(range(10)) * 2))

    def test_construct_needs_matching_family(self):
        with self.assertRaisesRegex(CommandError, 'family antiprism'):
            self.run_command('construct', family='cube', constructor='antiprism')

    def test_construct_on_non_planar_graph(self):
        with self.assertRaisesRegex(CommandError, 'not planar'):
            self.run_command('construct', family='petersen', constructor='faces')

    def test_table_over_cubic_file(self):
        path = self.write_graphs('cubic10.g6', [gen_prism(5), gen_petersen()])
        out, _ = self.run_command('table', path, class_label='cubic-2-connected', stat='max-mincdc')
        self.assertEqual(out.splitlines(), [
            'class,n,stat,value,witness',
            'cubic-2-connected,10,max-mincdc,5,cubic10.g6:2',
        ])

    def test_table_skips_bad_lines(self):
        path = self.write_graphs('cubic.g6', [gen_complete(4)], extra_lines=['!!'])
        csv_path = self.path('table.csv')
        xlsx_path = self.path('table.xlsx')
        self.run_command('table', path, stat='max-mincdc', output=csv_path, xlsx=xlsx_path)
        with open(csv_path) as handle:
            self.assertEqual(len(handle.read().splitlines()), 2)
        self.assertTrue(os.path.exists(xlsx_path))


class CliTests(SimpleTestCase):

    def test_exit_codes(self):
        out, err = StringIO(), StringIO()
        self.assertEqual(cli_run(['mincdc', '--family', 'cube'], stdout=out, stderr=err), 0)
        self.assertEqual(json.loads(out.getvalue())['size'], 4)
        self.assertEqual(cli_run(['frobnicate'], stdout=out, stderr=err), 2)
        self.assertEqual(cli_run(['count', '--family', 'cube', '--k', 'twice'], stdout=out, stderr=err), 1)
        self.assertEqual(cli_run(['gen', 'antiprism', '--k', '2'], stdout=out, stderr=err), 1)


class AcceptanceTests(SimpleTestCase):

    def test_brute_force_census(self):
        self.assertEqual(brute_force_census(gen_complete(4)), {3: (1, 1), 4: (1, 1)})
        self.assertEqual(brute_force_census(build_graph(3, [(0, 1), (1, 2), (2, 0)])), {2: (1, 0)})
        self.assertEqual(brute_force_census(build_graph(3, [(0, 1), (1, 2)])), {})

    def test_partition_table(self):
        self.assertEqual([partitions_by_table(r) for r in range(8)], [1, 1, 2, 3, 5, 7, 11, 15])

    def test_quick_checks(self):
        for check in (check_defects, check_partitions, check_small_join):
            self.assertTrue(check())

    def test_oracle_sweep(self):
        graphs = oracle_graphs(6)
        self.assertTrue(graphs)
        self.assertTrue(all(g.vertex_count <= 7 for g in graphs))
        self.assertIn('solver census equals brute force', check_oracle())

    def test_composite_triangulations(self):
        self.assertIn('3 composites', check_triangulations())

    @skipUnless(settings.CDC_SLOW_TESTS, 'set CDC_SLOW_TESTS=True for the full self-check')
    def test_full_selfcheck(self):
        out = StringIO()
        call_command('selfcheck', full=True, stdout=out, stderr=StringIO())
        self.assertIn('checks passed', out.getvalue())
