import math
import pickle

import networkx as nx
from django.core.exceptions import ValidationError
from django.test import SimpleTestCase, override_settings

from core.exceptions import SearchLimitError, StructureError
from cycles.enumeration import enumerate_cycles
from graphs.formats import graph_from_networkx
from graphs.models import Cycle, build_graph
from harness.acceptance import brute_force_census, oracle_graphs

from .models import Cdc, CdcCensus
from .solver import CoverSearch, compute_census, count_cdcs, enumerate_cdcs, min_cdc
from .utils import binary_entropy, entropy_bound_check
from .verification import verify_cdc


def k4():
    return graph_from_networkx(nx.complete_graph(4))


def petersen():
    return graph_from_networkx(nx.petersen_graph())


def square():
    return build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


class CdcModelTests(SimpleTestCase):

    def test_repeats_become_multiplicity(self):
        g = square()
        c = Cycle(g, frozenset(range(4)))
        cdc = Cdc.from_cycles(g, [c, c])
        self.assertEqual(cdc.size, 2)
        self.assertFalse(cdc.is_true)
        self.assertEqual(cdc.canonical_key, (((0, 1, 2, 3), 2),))

    def test_multiplicity_above_two(self):
        g = square()
        c = Cycle(g, frozenset(range(4)))
        with self.assertRaises(ValidationError):
            Cdc.from_cycles(g, [c, c, c])

    def test_foreign_cycle(self):
        with self.assertRaises(StructureError):
            Cdc.from_cycles(k4(), [Cycle(square(), frozenset(range(4)))])

    def test_json(self):
        g = k4()
        _, cdc = min_cdc(g)
        payload = cdc.to_json(case_trace=['exact'])
        self.assertEqual(payload['size'], 3)
        self.assertEqual(payload['case_trace'], ['exact'])
        self.assertEqual(Cdc.from_json(g, payload), cdc)
        with self.assertRaises(ValidationError):
            Cdc.from_json(g, {'cycles': [{'edges': [0, 1, 3]}]})

    def test_census_without_covers(self):
        census = CdcCensus(square(), {})
        self.assertEqual(census.min_size, math.inf)
        self.assertEqual(census.count_at_most(5), 0)


class VerificationTests(SimpleTestCase):

    def test_single_cycle_is_undercovered(self):
        g = square()
        report = verify_cdc(g, Cdc.from_cycles(g, [Cycle(g, frozenset(range(4)))]))
        self.assertFalse(report)
        self.assertEqual(report.undercovered, [0, 1, 2, 3])
        self.assertEqual(report.overcovered, [])

    def test_parent_mismatch(self):
        g = square()
        cdc = Cdc.from_cycles(g, [Cycle(g, frozenset(range(4)))] * 2)
        with self.assertRaises(StructureError):
            verify_cdc(k4(), cdc)


class SolverTests(SimpleTestCase):

    def test_k4(self):
        size, cdc = min_cdc(k4())
        self.assertEqual(size, 3)
        self.assertTrue(cdc.is_true)
        self.assertTrue(all(c.length == 4 for c in cdc.cycles))

    def test_petersen(self):
        size, cdc = min_cdc(petersen())
        self.assertEqual(size, 5)
        self.assertTrue(verify_cdc(cdc.parent, cdc))

    def test_cycle_needs_doubling(self):
        g = square()
        self.assertEqual(min_cdc(g)[0], 2)
        self.assertIsNone(min_cdc(g, true_only=True))

    def test_bridge_has_no_cover(self):
        g = build_graph(4, [(0, 1), (1, 2), (2, 0), (2, 3)])
        self.assertIsNone(min_cdc(g))
        self.assertEqual(count_cdcs(g, 4), 0)

    def test_containing(self):
        g = k4()
        triangle = Cycle.from_vertices(g, (0, 1, 2))
        size, cdc = min_cdc(g, containing=[triangle])
        self.assertEqual(size, 4)
        self.assertTrue(cdc.contains(triangle))
        with self.assertRaises(StructureError):
            min_cdc(g, containing=[Cycle(square(), frozenset(range(4)))])

    def test_witness_is_canonically_least(self):
        g = k4()
        _, witness = min_cdc(g, containing=[Cycle.from_vertices(g, (0, 1, 2))])
        others = [c for c in enumerate_cdcs(g, 4) if c.size == 4]
        self.assertEqual(witness.canonical_key, min(c.canonical_key for c in others))

    def test_counts_and_census(self):
        g = k4()
        self.assertEqual(count_cdcs(g, 3), 1)
        self.assertEqual(count_cdcs(g, 4), 1)
        self.assertEqual(count_cdcs(g, 5), 0)
        census = compute_census(g)
        self.assertEqual(census.per_size, {3: (1, 1), 4: (1, 1)})
        self.assertEqual(census.min_true_size, 3)
        self.assertEqual(census.count_at_most(4), 2)

    def test_enumerate_order(self):
        sizes = [c.size for c in enumerate_cdcs(k4(), 4)]
        self.assertEqual(sizes, [3, 4])

    def test_empty_graph(self):
        g = build_graph(3, [])
        self.assertEqual(min_cdc(g)[0], 0)
        self.assertEqual(count_cdcs(g, 0), 1)

    def test_workers_do_not_change_counts(self):
        g = petersen()
        self.assertEqual(count_cdcs(g, 5, workers=2), count_cdcs(g, 5))

    def test_node_limit(self):
        with self.assertRaises(SearchLimitError):
            min_cdc(petersen(), node_limit=1)

    @override_settings(CDC_MAX_CYCLE_CATALOG=5)
    def test_catalog_limit(self):
        with self.assertRaises(SearchLimitError):
            min_cdc(k4())

    def test_loops_rejected(self):
        g = build_graph(2, [(0, 1), (0, 1), (0, 0)], loop_allowed=True)
        with self.assertRaises(ValidationError):
            min_cdc(g)

    def test_search_pickles_without_memo(self):
        search = CoverSearch(enumerate_cycles(k4()))
        search.count(search.full, search.full, 3)
        clone = pickle.loads(pickle.dumps(search))
        self.assertEqual(clone._counts, {})
        self.assertEqual(clone.count(clone.full, clone.full, 3), 1)


class EntropyTests(SimpleTestCase):

    def test_binary_entropy(self):
        self.assertEqual(binary_entropy(0), 0.0)
        self.assertAlmostEqual(binary_entropy(0.5), 1.0)

    def test_bound_holds(self):
        for n in range(2, 30):
            for k in range(1, n // 2 + 1):
                self.assertTrue(entropy_bound_check(n, k))

    def test_bad_arguments(self):
        with self.assertRaises(ValidationError):
            entropy_bound_check(4, 3)


class SolverOracleTests(SimpleTestCase):

    def test_census_matches_brute_force_on_atlas_graphs(self):
        checked = 0
        for g in oracle_graphs(10):
            census = compute_census(g)
            found = {size: counts for size, counts in census.per_size.items() if counts[0]}
            self.assertEqual(found, brute_force_census(g), g)
            result = min_cdc(g)
            self.assertEqual(result[0], census.min_size)
            self.assertTrue(verify_cdc(g, result[1]))
            checked += 1
        self.assertGreater(checked, 10)

    def test_small_cubic_graphs_meet_the_bound(self):
        for nx_graph in (nx.complete_graph(4), nx.complete_bipartite_graph(3, 3), nx.circular_ladder_graph(3)):
            g = graph_from_networkx(nx_graph)
            census = compute_census(g)
            self.assertLessEqual(census.min_size, g.vertex_count // 2 + 2)
            self.assertLessEqual(census.min_true_size, g.vertex_count // 2 + 2)
