import itertools
import random

import networkx as nx
from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from core.exceptions import StructureError
from graphs.embedding import planar_embed
from graphs.formats import graph_from_networkx
from graphs.models import Cycle, EvenSubgraph, build_graph

from .decomposition import min_cycle_decomposition, split_into_cycles
from .enumeration import enumerate_cycles, enumerate_hamiltonian
from .reductions import edge_subgraph, split_off_pair, subdivide_edge, suppress_degree2_vertex


def complete(n):
    return graph_from_networkx(nx.complete_graph(n))


class EnumerationTests(SimpleTestCase):

    def test_k4_cycles(self):
        catalog = enumerate_cycles(complete(4))
        self.assertEqual(len(catalog), 7)
        self.assertEqual(catalog.girth, 3)
        self.assertEqual(catalog.circumference, 4)
        self.assertEqual(list(catalog.cycles), sorted(catalog.cycles, key=lambda c: c.key))

    def test_petersen_lengths(self):
        catalog = enumerate_cycles(graph_from_networkx(nx.petersen_graph()))
        self.assertEqual(catalog.girth, 5)
        self.assertEqual(catalog.circumference, 9)
        self.assertEqual(sum(1 for c in catalog if c.length == 5), 12)
        self.assertEqual(len(catalog), 57)

    def test_length_window(self):
        catalog = enumerate_cycles(complete(4), min_len=4, max_len=4)
        self.assertEqual(len(catalog), 3)

    def test_digons_in_multigraphs(self):
        g = build_graph(3, [(0, 1), (0, 1), (1, 2), (2, 0)])
        lengths = sorted(c.length for c in enumerate_cycles(g))
        self.assertEqual(lengths, [2, 3, 3])

    def test_containing_index(self):
        catalog = enumerate_cycles(complete(4))
        self.assertTrue(all(len(indices) == 4 for indices in catalog.containing))

    def test_same_catalog_with_workers(self):
        g = complete(5)
        self.assertEqual(enumerate_cycles(g).to_json(), enumerate_cycles(g, workers=2).to_json())

    def test_hamiltonian(self):
        self.assertEqual(len(enumerate_hamiltonian(complete(4))), 3)
        self.assertEqual(len(enumerate_hamiltonian(complete(5))), 12)
        self.assertEqual(enumerate_hamiltonian(graph_from_networkx(nx.petersen_graph())), [])


class DecompositionTests(SimpleTestCase):

    def test_k5_splits_into_two(self):
        g = complete(5)
        result = min_cycle_decomposition(EvenSubgraph(g, frozenset(range(g.m))))
        self.assertEqual(len(result), 2)

    def test_octahedron_within_planar_bound(self):
        g = graph_from_networkx(nx.octahedral_graph())
        result = min_cycle_decomposition(EvenSubgraph(g, frozenset(range(g.m))))
        self.assertLessEqual(len(result), (g.vertex_count - 1) // 2)

    def test_empty(self):
        g = complete(4)
        self.assertEqual(len(min_cycle_decomposition(EvenSubgraph(g, frozenset()))), 0)

    def test_bowtie(self):
        g = build_graph(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])
        parts = split_into_cycles(g, frozenset(range(6)))
        self.assertEqual(sorted(c.length for c in parts), [3, 3])


class ReductionTests(SimpleTestCase):

    def test_suppress_and_lift(self):
        square = build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
        reduced = suppress_degree2_vertex(square, 0)
        self.assertEqual(reduced.graph.vertex_count, 3)
        self.assertEqual(reduced.edge_origin[-1], frozenset({0, 3}))
        triangle = Cycle(reduced.graph, frozenset(range(3)))
        self.assertEqual(reduced.lift_cycle(triangle).edge_set, frozenset(range(4)))

    def test_suppress_needs_degree_two(self):
        with self.assertRaises(ValidationError):
            suppress_degree2_vertex(complete(4), 0)

    def test_suppress_parallel_makes_loop(self):
        g = build_graph(2, [(0, 1), (0, 1), (1, 1)], loop_allowed=True)
        with self.assertRaises(ValidationError):
            suppress_degree2_vertex(build_graph(2, [(0, 1), (0, 1)]), 0)
        reduced = suppress_degree2_vertex(g, 0, allow_loop=True)
        self.assertTrue(reduced.graph.has_loops)

    def test_subdivide(self):
        reduced, x = subdivide_edge(complete(4), 0)
        self.assertEqual(x, 4)
        self.assertEqual(reduced.graph.m, 7)
        self.assertEqual(reduced.graph.degree(x), 2)
        self.assertEqual(reduced.lift({0, 6}), frozenset({0}))

    def test_edge_subgraph(self):
        reduced = edge_subgraph(complete(4), [5, 0, 3])
        self.assertEqual(reduced.graph.vertex_count, 4)
        self.assertEqual(reduced.lift({0, 1, 2}), frozenset({0, 3, 5}))
        foreign = Cycle(complete(4), frozenset({0, 1, 3}))
        with self.assertRaises(StructureError):
            reduced.lift_cycle(foreign)

    def test_split_off_pair(self):
        g = complete(5)
        first, second = g.edge_id(0, 1), g.edge_id(0, 2)
        reduced = split_off_pair(g, 0, first, second)
        self.assertEqual(reduced.graph.degree(0), 2)
        self.assertEqual(reduced.graph.edges[-1], (1, 2))
        self.assertEqual(reduced.edge_origin[-1], frozenset({first, second}))
        with self.assertRaises(ValidationError):
            split_off_pair(build_graph(3, [(0, 1), (0, 1), (1, 2)]), 0, 0, 1)


def double_wheel(n):
    """Rim on 0..n-3, hubs n-2 and n-1."""
    rim = n - 2
    pairs = [(j, (j + 1) % rim) for j in range(rim)] + [(hub, j) for hub in (rim, rim + 1) for j in range(rim)]
    return build_graph(n, pairs)


def compact(g, edge_set):
    """The edge set as a graph on its own vertices."""
    index = {v: i for i, v in enumerate(sorted(g.vertices_of(edge_set)))}
    return build_graph(len(index), [(index[u], index[v]) for u, v in (g.edges[e] for e in sorted(edge_set))])


def brute_force_cycles(g):
    """Edge sets of every cycle, found by testing all edge subsets of size at most n."""
    found = set()
    for size in range(2, g.vertex_count + 1):
        for subset in itertools.combinations(range(g.m), size):
            if any(d not in (0, 2) for d in g.degrees_in(subset)):
                continue
            try:
                found.add(Cycle(g, frozenset(subset)).edge_set)
            except ValidationError:
                continue
    return found


def exhaustive_partition_size(g):
    cycles = brute_force_cycles(g)
    best = g.m

    def search(remaining, used):
        nonlocal best
        if not remaining:
            best = min(best, used)
            return
        if used + 1 >= best:
            return
        edge = min(remaining)
        for cycle in cycles:
            if edge in cycle and cycle <= remaining:
                search(remaining - cycle, used + 1)

    search(frozenset(range(g.m)), 0)
    return best


class CycleOracleTests(SimpleTestCase):

    def test_enumeration_matches_edge_subsets(self):
        graphs = [nx_graph for nx_graph in nx.graph_atlas_g()
                  if 0 < nx_graph.number_of_edges() <= 10 and nx.is_connected(nx_graph)]
        for m in (8, 9, 10, 11):
            randoms = (nx.gnm_random_graph(8, m, seed=seed) for seed in range(100))
            graphs += itertools.islice(filter(nx.is_connected, randoms), 2)
        for nx_graph in graphs:
            g = graph_from_networkx(nx_graph)
            found = {cycle.edge_set for cycle in enumerate_cycles(g)}
            self.assertEqual(found, brute_force_cycles(g), nx.to_graph6_bytes(nx_graph))

    def test_minimum_decomposition_matches_exhaustive(self):
        checked = 0
        for nx_graph in nx.graph_atlas_g():
            if not 0 < nx_graph.number_of_edges() <= 14 or any(d % 2 for _, d in nx_graph.degree()):
                continue
            g = graph_from_networkx(nx_graph)
            result = min_cycle_decomposition(EvenSubgraph(g, frozenset(range(g.m))))
            self.assertEqual(len(result), exhaustive_partition_size(g), nx.to_graph6_bytes(nx_graph))
            checked += 1
        self.assertGreater(checked, 20)

    def test_planar_bound_on_even_graphs(self):
        hosts = [double_wheel(8), double_wheel(9), double_wheel(10),
                 graph_from_networkx(nx.grid_2d_graph(3, 3)), graph_from_networkx(nx.circular_ladder_graph(5))]
        for nx_graph in nx.graph_atlas_g():
            even = nx_graph.number_of_edges() and not any(d % 2 for _, d in nx_graph.degree())
            if even and nx.check_planarity(nx_graph)[0]:
                hosts.append(graph_from_networkx(nx_graph))
        checked = 0
        for host in hosts:
            rng = random.Random(host.m)
            edge_sets = []
            if host.vertex_count <= 7:
                edge_sets.append(frozenset(range(host.m)))
            else:
                e = planar_embed(host)
                for _ in range(6):
                    chosen = frozenset()
                    for walk in e.faces:
                        if rng.random() < 0.5:
                            chosen = chosen ^ walk.edge_set
                    edge_sets.append(chosen)
            for edge_set in filter(None, edge_sets):
                g = compact(host, edge_set)
                parts = min_cycle_decomposition(EvenSubgraph(g, frozenset(range(g.m)))).parts
                self.assertLessEqual(len(parts), (g.vertex_count - 1) // 2)
                checked += 1
        self.assertGreater(checked, 40)

    def test_double_wheel_hamiltonian_count(self):
        for n in (6, 7, 8, 9):
            self.assertEqual(len(enumerate_hamiltonian(double_wheel(n))), 2 * (n - 4) * (n - 2))
