from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from cdc.models import Cdc
from cdc.solver import count_cdcs, min_cdc
from cdc.verification import verify_cdc
from core.exceptions import NotApplicableError, StructureError
from cycles.enumeration import enumerate_hamiltonian
from graphs.embedding import planar_embed
from graphs.models import Cycle, Graph, build_graph

from .antiprism import antiprism_three_cdcs, partition_count, theorem2_enumerate_fcdcs, theorem2ii_bound
from .cubic import cubic_planar_half_cdc, join_equiv, merge_cubic_dual_cdcs, petersen_chain, split_cubic_three_cut
from .elementary import double_wheel_cdc, face_boundary_cdc
from .even_cover import hamiltonian_three_even_cover
from .families import (
    gen_antiprism, gen_complete, gen_cube, gen_cycle, gen_double_wheel, gen_icosahedron,
    gen_ladder, gen_octahedron, gen_petersen, gen_prism, gen_stacked_triangulation, gen_theorem2_graph,
)
from .models import CYCLE_RING
from .rings import exchange_ring, find_ring
from .seyffarth import seyffarth_small_cdc
from .triangulations import (
    glue_triangulations, jackson_yu_tree, merge_triangulation_cdcs, theorem3_cdc,
    theorem3_conditional_bound, theorem3_upper_bound,
)


def embedded(g):
    e = planar_embed(g)
    assert e is not None
    return e


class FamilyTests(SimpleTestCase):

    def test_layered_graph_counts(self):
        g, e = gen_theorem2_graph(4, 3)
        self.assertEqual(g.vertex_count, 12)
        self.assertEqual(g.m, 4 * 7)
        self.assertEqual(len(e.faces), 2 * 4 * 2 + 2)

    def test_antiprism_is_four_regular(self):
        layout = gen_antiprism(5)
        self.assertEqual(layout.n, 10)
        self.assertEqual(set(layout.graph.degrees), {4})
        self.assertEqual(len(layout.triangles), 10)

    def test_stacked_triangulation_size(self):
        g = gen_stacked_triangulation(3)
        self.assertEqual(g.vertex_count, 7)
        self.assertEqual(g.m, 3 * 7 - 6)

    def test_bad_parameters(self):
        with self.assertRaises(ValidationError):
            gen_antiprism(2)
        with self.assertRaises(ValidationError):
            gen_ladder(7)


class AntiprismTests(SimpleTestCase):

    def test_three_covers_k4(self):
        covers = antiprism_three_cdcs(4)
        self.assertEqual([c.size for c in covers], [10, 10, 10])
        self.assertEqual([c.is_true for c in covers], [True, False, False])

    def test_three_covers_octahedron_match_solver(self):
        covers = antiprism_three_cdcs(3)
        self.assertEqual([c.size for c in covers], [8, 8, 8])
        self.assertEqual(count_cdcs(covers[0].parent, 8), 3)

    def test_layered_face_count_covers(self):
        covers = theorem2_enumerate_fcdcs(4, 3)
        self.assertEqual(len(covers), 6)
        self.assertTrue(all(c.size == 18 for c in covers))
        self.assertEqual(sum(c.is_true for c in covers), 1)
        self.assertEqual(len({c.canonical_key for c in covers}), 6)

    def test_two_layers_give_three(self):
        covers = theorem2_enumerate_fcdcs(3, 2)
        self.assertEqual(len(covers), 3)
        self.assertTrue(all(c.size == 8 for c in covers))

    def test_partition_count(self):
        self.assertEqual(partition_count(0), 1)
        self.assertEqual(partition_count(3), 3)
        self.assertEqual(partition_count(9), 30)

    def test_counting_bound(self):
        self.assertEqual(theorem2ii_bound(10, 0), 3.0)
        self.assertGreater(theorem2ii_bound(14, 1), 3.0)
        with self.assertRaises(NotApplicableError):
            theorem2ii_bound(40, 2)
        with self.assertRaises(NotApplicableError):
            theorem2ii_bound(12, 1)
        with self.assertRaises(ValidationError):
            theorem2ii_bound(9, 1)


class ElementaryTests(SimpleTestCase):

    def test_face_boundaries_of_cube(self):
        cover = face_boundary_cdc(embedded(gen_cube()))
        self.assertEqual(cover.size, 6)
        self.assertTrue(verify_cdc(cover.parent, cover))

    def test_double_wheel(self):
        for n in (6, 7, 8):
            cover = double_wheel_cdc(n)
            self.assertTrue(verify_cdc(cover.parent, cover))
            self.assertEqual(cover.size, n - 2)
        with self.assertRaises(ValidationError):
            double_wheel_cdc(5)


class RingTests(SimpleTestCase):

    def test_cube_ring_exchange(self):
        e = embedded(gen_cube())
        ring = find_ring(e, 0)
        self.assertEqual(ring.kind, CYCLE_RING)
        self.assertEqual(len(ring.cycles), 4)
        cover = exchange_ring(face_boundary_cdc(e), ring)
        self.assertEqual(cover.size, 4)
        self.assertEqual(min_cdc(e.graph)[0], 4)

    def test_ring_needs_cubic(self):
        with self.assertRaises(StructureError):
            find_ring(embedded(gen_octahedron()), 0)


class CubicTests(SimpleTestCase):

    def test_half_cover_small_cubic_graphs(self):
        for g in (gen_prism(3), gen_cube(), gen_ladder(10), gen_prism(5)):
            result = cubic_planar_half_cdc(embedded(g))
            self.assertTrue(verify_cdc(g, result.cdc))
            self.assertLessEqual(result.size, g.vertex_count // 2)
            self.assertTrue(result.case_trace)

    def test_prism_meets_solver(self):
        g = gen_prism(3)
        self.assertEqual(cubic_planar_half_cdc(embedded(g)).size, 3)
        self.assertEqual(min_cdc(g)[0], 3)

    def test_rejects_k4(self):
        with self.assertRaises(ValidationError):
            cubic_planar_half_cdc(embedded(gen_complete(4)))

    def test_join_of_two_k4(self):
        k4 = gen_complete(4)
        join = join_equiv(k4, 0, k4, 0)
        self.assertEqual(join.joined.vertex_count, 6)
        self.assertTrue(join.joined.is_cubic)
        self.assertEqual(min_cdc(join.joined)[0], 3)

    def test_petersen_chain_order(self):
        g = petersen_chain(2)
        self.assertEqual(g.vertex_count, 18)
        self.assertTrue(g.is_cubic)

    def test_petersen_chain_cover(self):
        petersen = gen_petersen()
        join = join_equiv(petersen, 9, petersen, 0)
        self.assertEqual(join.joined, petersen_chain(2))
        _, cover = min_cdc(petersen)
        merged = merge_cubic_dual_cdcs(cover, cover, join)
        self.assertEqual(merged.size, 7)
        self.assertTrue(verify_cdc(petersen_chain(2), merged))

    def test_ladder_ten_has_a_four_cdc(self):
        self.assertEqual(min_cdc(gen_ladder(10))[0], 4)


def two_diamonds():
    """Two copies of K4 - e joined by two edges between their degree-2 vertices."""
    pairs = [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)]
    pairs += [(4, 5), (4, 6), (5, 6), (4, 7), (5, 7)]
    pairs += [(2, 6), (3, 7)]
    return build_graph(8, pairs)


def two_cubes_across_a_two_cut():
    """Two cubes, each missing the edge 01, rejoined by the edges 0-8 and 1-9."""
    cube = gen_cube()
    dropped = cube.edge_id(0, 1)
    pairs = [edge for edge_id, edge in enumerate(cube.edges) if edge_id != dropped]
    pairs += [(u + 8, v + 8) for u, v in pairs]
    pairs += [(0, 8), (1, 9)]
    return build_graph(16, pairs)


class CubicJoinTests(SimpleTestCase):

    def test_merge_size(self):
        k4, cube = gen_complete(4), gen_cube()
        join = join_equiv(k4, 0, cube, 0)
        merged = merge_cubic_dual_cdcs(min_cdc(k4)[1], min_cdc(cube)[1], join)
        self.assertEqual(merged.size, 3 + 4 - 3)
        self.assertTrue(verify_cdc(join.joined, merged))
        self.assertLessEqual(min_cdc(join.joined)[0], merged.size)

    def test_split_inverts_join(self):
        join = join_equiv(gen_complete(4), 0, gen_cube(), 0)
        split = split_cubic_three_cut(join.joined, join.cut)
        self.assertEqual(sorted([split.left.vertex_count, split.right.vertex_count]), [4, 8])
        self.assertTrue(split.left.is_cubic and split.right.is_cubic)
        merged = merge_cubic_dual_cdcs(min_cdc(split.left)[1], min_cdc(split.right)[1], split)
        self.assertEqual(merged.size, 4)
        self.assertTrue(verify_cdc(join.joined, merged))

    def test_merge_rejects_foreign_cover(self):
        k4, cube = gen_complete(4), gen_cube()
        join = join_equiv(k4, 0, cube, 0)
        with self.assertRaises(StructureError):
            merge_cubic_dual_cdcs(min_cdc(cube)[1], min_cdc(cube)[1], join)

    def test_join_needs_cubic_graphs(self):
        with self.assertRaises(StructureError):
            join_equiv(gen_octahedron(), 0, gen_complete(4), 0)


class CubicCaseTests(SimpleTestCase):

    def test_disjoint_triangles_without_three_connectivity(self):
        g = two_diamonds()
        result = cubic_planar_half_cdc(embedded(g))
        self.assertTrue(result.case_trace[0].startswith('reroute around triangle faces'))
        self.assertEqual(result.size, 4)
        self.assertTrue(verify_cdc(g, result.cdc))

    def test_three_cut_split(self):
        g = join_equiv(gen_cube(), 0, gen_cube(), 0).joined
        result = cubic_planar_half_cdc(embedded(g))
        self.assertTrue(result.case_trace[0].startswith('split at 3-cut'))
        self.assertEqual(result.size, 4 + 6 - 3)
        self.assertTrue(verify_cdc(g, result.cdc))

    def test_two_cut_patch(self):
        g = two_cubes_across_a_two_cut()
        result = cubic_planar_half_cdc(embedded(g))
        self.assertTrue(result.case_trace[0].startswith('2-cut'))
        self.assertLessEqual(result.size, 8)
        self.assertTrue(verify_cdc(g, result.cdc))

    def test_no_exact_search_in_trace(self):
        for g in (two_diamonds(), gen_prism(5), gen_cube()):
            trace = cubic_planar_half_cdc(embedded(g)).case_trace
            self.assertFalse(any('exact search' in step for step in trace))


class TriangulationTests(SimpleTestCase):

    def test_octahedron_is_one_piece(self):
        tree = jackson_yu_tree(embedded(gen_octahedron()))
        self.assertEqual(len(tree.pieces), 1)
        self.assertTrue(tree.pieces[0].four_connected)
        self.assertEqual(tree.links, ())

    def test_stacked_splits_into_k4s(self):
        for steps in (1, 2, 3):
            e = embedded(gen_stacked_triangulation(steps))
            tree = jackson_yu_tree(e)
            self.assertEqual(len(tree.pieces), steps + 1)
            self.assertEqual(len(tree.k4_pieces), steps + 1)
            self.assertEqual(len(tree.links), steps)
            self.assertEqual(theorem3_conditional_bound(tree), 3 * (steps + 1))
            root_pairs = frozenset(frozenset(edge) for edge in e.graph.edges)
            self.assertEqual(tree.reglued_edges(), root_pairs)

    def test_rejects_non_triangulation(self):
        with self.assertRaises(StructureError):
            jackson_yu_tree(embedded(gen_cube()))

    def test_merge_two_k4(self):
        k4 = gen_complete(4)
        gluing = glue_triangulations(k4, (0, 1, 2), k4, (0, 1, 2))
        self.assertEqual(gluing.glued.vertex_count, 5)
        self.assertEqual(gluing.glued.m, 9)
        _, cover = min_cdc(k4)
        merged = merge_triangulation_cdcs(cover, cover, gluing)
        self.assertTrue(verify_cdc(gluing.glued, merged))
        self.assertLessEqual(merged.size, 6)
        self.assertGreaterEqual(merged.size, min_cdc(gluing.glued)[0])

    def test_merge_drops_doubled_marker(self):
        k4 = gen_complete(4)
        faces = face_boundary_cdc(embedded(k4))
        gluing = glue_triangulations(k4, (0, 1, 2), k4, (0, 1, 2))
        merged = merge_triangulation_cdcs(faces, faces, gluing)
        self.assertEqual(merged.size, faces.size * 2 - 2)
        self.assertTrue(verify_cdc(gluing.glued, merged))

    def test_theorem3_cover(self):
        e = embedded(gen_stacked_triangulation(2))
        result = theorem3_cdc(e)
        self.assertTrue(verify_cdc(e.graph, result.cdc))
        bound = theorem3_upper_bound(e)
        self.assertEqual(bound, 9)
        self.assertLessEqual(result.size, bound)
        self.assertLessEqual(min_cdc(e.graph)[0], bound)

    def test_merge_pairs_cycles_per_marker_edge(self):
        # poles 0, 1 and equator 2-3-4-5; no cycle carries two edges of the marker 0, 2, 3
        octahedron = build_graph(6, [
            (0, 2), (0, 3), (0, 4), (0, 5), (1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (3, 4), (4, 5), (5, 2),
        ])

        def cycle(*pairs):
            return Cycle(octahedron, frozenset(octahedron.edge_id(u, v) for u, v in pairs))

        equator = cycle((2, 3), (3, 4), (4, 5), (5, 2))
        first = cycle((0, 2), (2, 1), (1, 4), (4, 0))
        second = cycle((0, 3), (3, 1), (1, 5), (5, 0))
        cover = Cdc.from_cycles(octahedron, [equator, first, second] * 2)
        gluing = glue_triangulations(octahedron, (0, 2, 3), octahedron, (0, 2, 3))
        with self.assertLogs('constructions.triangulations', level='DEBUG') as logs:
            merged = merge_triangulation_cdcs(cover, cover, gluing)
        self.assertIn('cycles paired per marker edge', '\n'.join(logs.output))
        self.assertEqual(merged.size, 9)
        self.assertTrue(verify_cdc(gluing.glued, merged))

    def test_two_octahedra(self):
        octahedron = gen_octahedron()
        glued = glue_triangulations(octahedron, (0, 1, 2), octahedron, (0, 1, 2)).glued
        e = embedded(glued)
        tree = jackson_yu_tree(e)
        self.assertEqual(len(tree.four_connected_pieces), 2)
        result = theorem3_cdc(e)
        self.assertTrue(verify_cdc(glued, result.cdc))
        self.assertLessEqual(result.size, theorem3_upper_bound(e))
        self.assertEqual(theorem3_upper_bound(e), 8)


def _cofacial(e, h, v):
    degree = e.graph.degree(v)
    first, second = [i for i, (edge_id, _) in enumerate(e.rotation[v]) if edge_id in h.edge_set]
    return (second - first) % degree in (1, degree - 1)


class SmallCoverTests(SimpleTestCase):

    def test_octahedron(self):
        e = embedded(gen_octahedron())
        for h in enumerate_hamiltonian(e.graph)[:4]:
            for v in range(6):
                result = seyffarth_small_cdc(e, h, v)
                self.assertTrue(verify_cdc(e.graph, result.cdc))
                self.assertLessEqual(result.size, 5)

    def test_icosahedron_contains_h(self):
        e = embedded(gen_icosahedron())
        h = enumerate_hamiltonian(e.graph)[0]
        result = seyffarth_small_cdc(e, h, 0)
        self.assertLessEqual(result.size, 11)
        self.assertTrue(result.cdc.contains(h))

    def test_odd_order_double_wheel(self):
        e = embedded(gen_double_wheel(7))
        checked = 0
        for h in enumerate_hamiltonian(e.graph):
            for v in range(7):
                if _cofacial(e, h, v):
                    continue
                result = seyffarth_small_cdc(e, h, v)
                self.assertTrue(verify_cdc(e.graph, result.cdc))
                self.assertLessEqual(result.size, 6)
                checked += 1
        self.assertGreater(checked, 0)

    def test_cofacial_hamiltonian_cycle(self):
        e = embedded(gen_double_wheel(7))
        checked = 0
        for h in enumerate_hamiltonian(e.graph):
            for v in range(7):
                if not _cofacial(e, h, v) or checked == 8:
                    continue
                result = seyffarth_small_cdc(e, h, v)
                self.assertTrue(verify_cdc(e.graph, result.cdc))
                self.assertLessEqual(result.size, 6)
                self.assertTrue(result.cdc.contains(h))
                self.assertIn('cofacial', result.case_trace[0])
                checked += 1
        self.assertEqual(checked, 8)

    def test_preconditions(self):
        e = embedded(gen_octahedron())
        h = enumerate_hamiltonian(e.graph)[0]
        not_hamiltonian = Cycle(e.graph, frozenset(e.faces[0].edges))
        with self.assertRaises(ValidationError):
            seyffarth_small_cdc(e, not_hamiltonian, 0)
        with self.assertRaises(ValidationError):
            seyffarth_small_cdc(e, h, 6)
        cube = embedded(gen_cube())
        with self.assertRaises(ValidationError):
            seyffarth_small_cdc(cube, enumerate_hamiltonian(cube.graph)[0], 0)


def _covers_twice(g, parts):
    counts = [0] * g.m
    for part in parts:
        for edge_id in part.edge_set:
            counts[edge_id] += 1
    return all(count == 2 for count in counts)


class EvenCoverTests(SimpleTestCase):

    def test_cubic_graph_keeps_h(self):
        g = gen_prism(3)
        h = enumerate_hamiltonian(g)[0]
        parts = hamiltonian_three_even_cover(g, h)
        self.assertEqual(parts[0].edge_set, h.edge_set)
        self.assertTrue(_covers_twice(g, parts))

    def test_complete_graph(self):
        g = gen_complete(5)
        for h in enumerate_hamiltonian(g)[:3]:
            self.assertTrue(_covers_twice(g, hamiltonian_three_even_cover(g, h)))

    def test_cycle_alone(self):
        g = gen_cycle(5)
        h = Cycle(g, frozenset(range(5)))
        first, second, third = hamiltonian_three_even_cover(g, h)
        self.assertEqual(first.edge_set, h.edge_set)
        self.assertEqual(second.edge_set, h.edge_set)
        self.assertEqual(third.edge_set, frozenset())

    def test_loops_and_parallel_edges(self):
        pairs = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (0, 2), (1, 1)]
        g = build_graph(4, pairs, loop_allowed=True)
        h = Cycle(g, frozenset({0, 1, 2, 3}))
        self.assertTrue(_covers_twice(g, hamiltonian_three_even_cover(g, h)))

    def test_needs_hamiltonian(self):
        g = Graph(4, ((0, 1), (1, 2), (2, 0), (2, 3), (3, 0)))
        with self.assertRaises(ValidationError):
            hamiltonian_three_even_cover(g, Cycle(g, frozenset({0, 1, 2})))
