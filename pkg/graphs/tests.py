import itertools
import math
import os
import tempfile

import networkx as nx
from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from core.exceptions import NotPlanarError, StructureError
from cycles.enumeration import enumerate_hamiltonian

from .colouring import even_subgraph_G1j, four_face_colouring
from .connectivity import (
    bridges, components_without_vertices, nontrivial_three_edge_cuts, three_edge_cut_sides,
    two_edge_cuts, vertex_connectivity_at_least,
)
from .embedding import (
    dual, duplicate_edge, exhaustive_embed, induced_embedding, is_triangulation, planar_embed,
)
from .formats import (
    embedding_from_json, embedding_to_json, graph_from_networkx, graph_to_line,
    parse_graph_line, read_graph_file, sorted_embedding,
)
from .models import Cycle, EvenSubgraph, Graph, PlaneEmbedding, build_graph, symmetric_difference


def k4():
    return build_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def cube():
    return graph_from_networkx(nx.hypercube_graph(3))


def octahedron():
    return graph_from_networkx(nx.octahedral_graph())


class GraphTests(SimpleTestCase):

    def test_endpoint_out_of_range(self):
        with self.assertRaises(ValidationError):
            build_graph(3, [(0, 3)])

    def test_loop_needs_flag(self):
        with self.assertRaises(ValidationError):
            build_graph(2, [(0, 0)])
        g = build_graph(2, [(0, 0), (0, 1)], loop_allowed=True)
        self.assertTrue(g.has_loops)
        self.assertEqual(g.degree(0), 3)

    def test_parallel_edges(self):
        g = build_graph(2, [(0, 1), (1, 0)])
        self.assertFalse(g.is_simple)
        self.assertEqual(g.edges_between(0, 1), (0, 1))
        with self.assertRaises(StructureError):
            g.edge_id(0, 1)

    def test_degrees_and_cubic(self):
        self.assertTrue(k4().is_cubic)
        self.assertFalse(octahedron().is_cubic)
        self.assertEqual(octahedron().max_degree, 4)


class CycleTests(SimpleTestCase):

    def test_even_subgraph_rejects_odd_degrees(self):
        with self.assertRaises(ValidationError):
            EvenSubgraph(k4(), frozenset({0}))

    def test_cycle_must_be_connected(self):
        g = build_graph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
        with self.assertRaises(ValidationError):
            Cycle(g, frozenset(range(6)))

    def test_digon_is_a_cycle(self):
        g = build_graph(2, [(0, 1), (0, 1)])
        self.assertEqual(Cycle(g, frozenset({0, 1})).length, 2)

    def test_walk_and_paths(self):
        g = k4()
        c = Cycle.from_vertices(g, (0, 1, 3, 2))
        self.assertEqual(c.vertex_sequence[0], 0)
        self.assertEqual(len(c.edge_sequence), 4)
        left, right = c.paths_between(0, 3)
        self.assertEqual(len(left), 2)
        self.assertEqual(left | right, c.edge_set)

    def test_symmetric_difference(self):
        g = k4()
        a = Cycle.from_vertices(g, (0, 1, 2))
        b = Cycle.from_vertices(g, (0, 2, 3))
        s = symmetric_difference(a, b)
        self.assertIsInstance(s, EvenSubgraph)
        self.assertEqual(len(s), 4)
        self.assertEqual(symmetric_difference({1, 2}, {2, 3}), frozenset({1, 3}))


class EmbeddingTests(SimpleTestCase):

    def test_planar_embed_cube(self):
        e = planar_embed(cube())
        self.assertEqual(len(e.faces), 6)
        self.assertTrue(all(walk.length == 4 for walk in e.faces))

    def test_k5_is_not_planar(self):
        g = graph_from_networkx(nx.complete_graph(5))
        self.assertIsNone(planar_embed(g))
        self.assertIsNone(exhaustive_embed(g))

    def test_exhaustive_agrees_on_k4(self):
        e = exhaustive_embed(k4())
        self.assertEqual(len(e.faces), 4)

    def test_bad_rotation(self):
        g = k4()
        rotation = list(planar_embed(g).rotation)
        rotation[0] = rotation[0][:2]
        with self.assertRaises(ValidationError):
            PlaneEmbedding(g, tuple(rotation))

    def test_non_planar_rotation(self):
        g = graph_from_networkx(nx.complete_graph(5))
        rotation = tuple(g.incidence)
        with self.assertRaises(NotPlanarError):
            PlaneEmbedding(g, rotation)

    def test_dual_of_cube(self):
        dual_graph, dual_embedding, edge_map = dual(planar_embed(cube()))
        self.assertEqual(dual_graph.vertex_count, 6)
        self.assertEqual(set(dual_graph.degrees), {4})
        self.assertEqual(len(dual_embedding.faces), 8)
        self.assertEqual(edge_map[5], 5)

    def test_triangulation(self):
        self.assertTrue(is_triangulation(planar_embed(octahedron())))
        self.assertFalse(is_triangulation(planar_embed(cube())))

    def test_face_between_contains_vertex(self):
        e = planar_embed(octahedron())
        for v in range(6):
            for position in range(4):
                self.assertIn(v, e.faces[e.face_between(v, position)].vertices)

    def test_duplicate_edge_adds_digon(self):
        e = planar_embed(k4())
        doubled, copy = duplicate_edge(e, 0)
        self.assertEqual(copy, 6)
        self.assertEqual(len(doubled.faces), 5)
        self.assertIn(2, [walk.length for walk in doubled.faces])

    def test_induced_embedding(self):
        e = planar_embed(octahedron())
        sub, vertex_map, edge_map = induced_embedding(e, [0, 1, 2, 3, 4])
        self.assertEqual(sub.graph.vertex_count, 5)
        self.assertEqual(len(vertex_map), 5)
        self.assertEqual(len(edge_map), sub.graph.m)


class ColouringTests(SimpleTestCase):

    def test_three_subgraphs_cover_twice(self):
        e = planar_embed(octahedron())
        h = enumerate_hamiltonian(e.graph)[0]
        colouring = four_face_colouring(e, h)
        parts = [even_subgraph_G1j(colouring, j) for j in (2, 3, 4)]
        self.assertEqual(parts[0].edge_set, h.edge_set)
        counts = [0] * e.graph.m
        for part in parts:
            for edge_id in part.edge_set:
                counts[edge_id] += 1
        self.assertEqual(set(counts), {2})

    def test_needs_hamiltonian(self):
        e = planar_embed(octahedron())
        triangle = Cycle(e.graph, e.faces[0].edge_set)
        with self.assertRaises(ValidationError):
            four_face_colouring(e, triangle)


class ConnectivityTests(SimpleTestCase):

    def test_vertex_connectivity(self):
        self.assertTrue(vertex_connectivity_at_least(octahedron(), 4))
        self.assertTrue(vertex_connectivity_at_least(cube(), 3))
        self.assertFalse(vertex_connectivity_at_least(cube(), 4))
        self.assertFalse(vertex_connectivity_at_least(k4(), 4))

    def test_bridges_and_two_cuts(self):
        path = build_graph(3, [(0, 1), (1, 2)])
        self.assertEqual(bridges(path), [0, 1])
        square = build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
        self.assertEqual(len(two_edge_cuts(square)), 6)

    def test_prism_three_cut(self):
        prism = build_graph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])
        self.assertIn((6, 7, 8), nontrivial_three_edge_cuts(prism))
        left, right = three_edge_cut_sides(prism, (6, 7, 8))
        self.assertEqual(left, frozenset({0, 1, 2}))
        self.assertEqual(right, frozenset({3, 4, 5}))
        with self.assertRaises(StructureError):
            three_edge_cut_sides(prism, (0, 1, 6))

    def test_components_without_vertices(self):
        parts = components_without_vertices(octahedron(), [0, 1, 2, 3])
        self.assertEqual(sum(len(part) for part in parts), 2)


class FormatTests(SimpleTestCase):

    def test_graph6_k4(self):
        g = parse_graph_line('C~')
        self.assertEqual(g.vertex_count, 4)
        self.assertEqual(g.m, 6)
        self.assertEqual(graph_to_line(g), 'C~')

    def test_sparse6_keeps_parallel_edges(self):
        g = build_graph(3, [(0, 1), (0, 1), (1, 2), (2, 0)])
        line = graph_to_line(g)
        self.assertTrue(line.startswith(':'))
        self.assertEqual(parse_graph_line(line).m, 4)

    def test_bad_line(self):
        with self.assertRaises(ValidationError):
            parse_graph_line('not a graph')
        with self.assertRaises(ValidationError):
            parse_graph_line('   ')

    def test_read_file_reports_line(self):
        with tempfile.NamedTemporaryFile('w', suffix='.g6', delete=False) as handle:
            handle.write('C~\n\nC~\n!!\n')
            path = handle.name
        try:
            with self.assertRaisesRegex(ValidationError, 'line 4'):
                read_graph_file(path)
        finally:
            os.unlink(path)

    def test_embedding_json(self):
        e = sorted_embedding(planar_embed(cube()))
        again = embedding_from_json(embedding_to_json(e))
        self.assertEqual(again.rotation, e.rotation)
        self.assertEqual(len(again.faces), 6)
        with self.assertRaises(ValidationError):
            embedding_from_json({'n': 2})


def bridgeless(nx_graph):
    return nx_graph.number_of_edges() > 0 and nx.is_connected(nx_graph) and not nx.has_bridges(nx_graph)


def bridgeless_atlas_graphs():
    """Every connected bridgeless graph on at most seven vertices."""
    return (nx_graph for nx_graph in nx.graph_atlas_g() if bridgeless(nx_graph))


def _contains_k5_or_k33(h):
    adjacent = {v: set(h[v]) for v in h}
    nodes = sorted(adjacent)
    for five in itertools.combinations(nodes, 5):
        if all(b in adjacent[a] for a, b in itertools.combinations(five, 2)):
            return True
    for six in itertools.combinations(nodes, 6):
        for rest in itertools.combinations(six[1:], 2):
            left = (six[0],) + rest
            right = [v for v in six if v not in left]
            if all(b in adjacent[a] for a in left for b in right):
                return True
    return False


def has_kuratowski_minor(nx_graph):
    """K5 or K3,3 as a minor, by contracting every set of at most n - 5 edges."""
    nodes = list(nx_graph.nodes())
    edges = list(nx_graph.edges())
    for size in range(len(nodes) - 4):
        for contracted in itertools.combinations(edges, size):
            root = {v: v for v in nodes}

            def find(v):
                while root[v] != v:
                    v = root[v]
                return v

            for u, v in contracted:
                root[find(u)] = find(v)
            quotient = nx.Graph()
            quotient.add_edges_from((find(u), find(v)) for u, v in edges if find(u) != find(v))
            if quotient.number_of_nodes() >= 5 and _contains_k5_or_k33(quotient):
                return True
    return False


class PlanarityOracleTests(SimpleTestCase):
    """planar_embed against Euler's bound, Kuratowski minors and exhaustive rotation search."""

    def check_against_oracles(self, nx_graph):
        g = graph_from_networkx(nx_graph)
        n, m = g.vertex_count, g.m
        e = planar_embed(g)
        if e is None:
            self.assertTrue(m > 3 * n - 6 or has_kuratowski_minor(nx_graph), f'{nx.to_graph6_bytes(nx_graph)}')
        else:
            self.assertEqual(len(e.faces), 2 - n + m)
        rotations = math.prod(math.factorial(max(d - 1, 0)) for d in g.degrees)
        if rotations <= 5000:
            self.assertEqual(exhaustive_embed(g) is None, e is None)

    def test_atlas_graphs(self):
        for nx_graph in bridgeless_atlas_graphs():
            self.check_against_oracles(nx_graph)

    def test_graphs_on_eight_vertices(self):
        checked = 0
        for m in range(12, 19):
            graphs = (nx.gnm_random_graph(8, m, seed=seed) for seed in range(100))
            for nx_graph in itertools.islice(filter(bridgeless, graphs), 2):
                self.check_against_oracles(nx_graph)
                checked += 1
        self.assertEqual(checked, 14)

    def test_minor_search(self):
        self.assertTrue(has_kuratowski_minor(nx.petersen_graph()))
        self.assertTrue(has_kuratowski_minor(nx.complete_bipartite_graph(3, 3)))
        self.assertFalse(has_kuratowski_minor(nx.octahedral_graph()))
