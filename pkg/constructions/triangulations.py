# constructions/triangulations.py
"""
Separating-triangle decomposition of plane triangulations and gluing of
CDCs along marker triangles.
"""
import itertools
import logging
from collections import deque
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from django.core.exceptions import ValidationError

from cdc.models import Cdc
from cdc.solver import min_cdc
from cdc.verification import verify_cdc
from core.exceptions import ProofStepError, StructureError
from cycles.decomposition import split_into_cycles
from graphs.connectivity import components_without_vertices, vertex_connectivity_at_least
from graphs.embedding import induced_embedding, is_triangulation
from graphs.models import Cycle, Graph, PlaneEmbedding

from .models import ConstructedCdc, DecompositionTree, Piece, TriangulationGluing

logger = logging.getLogger(__name__)

EdgeSets = List[FrozenSet[int]]


def _separating_triangle(e: PlaneEmbedding) -> Optional[FrozenSet[int]]:
    g = e.graph
    facial = {frozenset(walk.vertices) for walk in e.faces}
    for u, v in sorted(g.edges):
        for w in sorted(set(g.neighbours(u)) & set(g.neighbours(v))):
            triangle = frozenset((u, v, w))
            if triangle not in facial:
                return triangle
    return None


def jackson_yu_tree(t: PlaneEmbedding) -> DecompositionTree:
    """
    Split t along separating triangles, keeping a copy of the triangle on
    both sides, until every piece is 4-connected or K_4.
    """
    if not t.graph.is_simple or not is_triangulation(t):
        raise StructureError('jackson_yu_tree needs a simple plane triangulation')
    finished: List[Piece] = []
    pending = [(t, tuple(range(t.graph.vertex_count)), ())]
    while pending:
        embedding, origin, markers = pending.pop()
        triangle = _separating_triangle(embedding)
        if triangle is None:
            g = embedding.graph
            four_connected = vertex_connectivity_at_least(g, 4)
            if not four_connected and not (g.vertex_count == 4 and g.m == 6):
                raise ProofStepError('a piece without separating triangles is neither 4-connected nor K_4')
            finished.append(Piece(embedding, origin, markers, four_connected))
            continue
        marker = frozenset(origin[v] for v in triangle)
        for component in components_without_vertices(embedding.graph, triangle):
            kept = sorted(component | triangle)
            sub_embedding, _, _ = induced_embedding(embedding, kept)
            sub_origin = tuple(origin[v] for v in kept)
            sub_markers = tuple(m for m in markers if m <= set(sub_origin)) + (marker,)
            pending.append((sub_embedding, sub_origin, sub_markers))

    pieces = tuple(sorted(finished, key=lambda piece: piece.vertex_origin))
    holders: Dict[FrozenSet[int], List[int]] = {}
    for index, piece in enumerate(pieces):
        for marker in piece.markers:
            holders.setdefault(marker, []).append(index)
    links = []
    for marker, indices in holders.items():
        if len(indices) != 2:
            raise ProofStepError(f'marker triangle {sorted(marker)} is held by {len(indices)} pieces')
        links.append((indices[0], indices[1], marker))
    logger.debug("%s: %d pieces", t.graph, len(pieces))
    return DecompositionTree(t, pieces, tuple(sorted(links, key=lambda link: (link[0], link[1]))))


def glue_triangulations(
    g1: Graph, triangle1: Sequence[int], g2: Graph, triangle2: Sequence[int]
) -> TriangulationGluing:
    """
    Identify triangle1[i] of g1 with triangle2[i] of g2.

    The glued graph keeps g1's vertex and edge ids and appends g2's other
    vertices and edges. The marker edges are e = t0t1, f = t1t2, g = t0t2.
    """
    if len(set(triangle1)) != 3 or len(set(triangle2)) != 3:
        raise ValidationError('a marker triangle needs three distinct vertices')
    pairs = ((0, 1), (1, 2), (0, 2))
    try:
        left_marker = tuple(g1.edge_id(triangle1[i], triangle1[j]) for i, j in pairs)
        right_marker = tuple(g2.edge_id(triangle2[i], triangle2[j]) for i, j in pairs)
    except StructureError as exc:
        raise StructureError(f'marker triangle mismatch: {exc}') from exc
    vertex_map = {triangle2[i]: triangle1[i] for i in range(3)}
    for v in range(g2.vertex_count):
        if v not in vertex_map:
            vertex_map[v] = g1.vertex_count + sum(1 for w in range(v) if w not in triangle2)
    edges = list(g1.edges)
    right_edges = {right_marker[i]: left_marker[i] for i in range(3)}
    for edge_id, (u, v) in enumerate(g2.edges):
        if edge_id not in right_edges:
            right_edges[edge_id] = len(edges)
            edges.append((vertex_map[u], vertex_map[v]))
    glued = Graph(g1.vertex_count + g2.vertex_count - 3, tuple(edges))
    return TriangulationGluing(glued, g1, g2, {e: e for e in range(g1.m)}, right_edges, left_marker)


def _split(parent: Graph, edge_set: FrozenSet[int]) -> EdgeSets:
    return [cycle.edge_set for cycle in split_into_cycles(parent, edge_set)]


def _distinct_carriers(cycles: EdgeSets, edges: Sequence[int]) -> Optional[Tuple[int, ...]]:
    options = [[i for i, c in enumerate(cycles) if edge_id in c] for edge_id in edges]
    for choice in itertools.product(*options):
        if len(set(choice)) == len(choice):
            return choice
    return None


def _without(cycles: EdgeSets, dropped) -> EdgeSets:
    return [c for i, c in enumerate(cycles) if i not in dropped]


def _merge_edge_sets(parent: Graph, left: EdgeSets, right: EdgeSets, marker: FrozenSet[int]) -> Tuple[EdgeSets, str]:
    copies = [(0, i) for i, c in enumerate(left) if c == marker] + [(1, i) for i, c in enumerate(right) if c == marker]
    if len(copies) >= 2:
        drop = {0: set(), 1: set()}
        for side, index in copies[:2]:
            drop[side].add(index)
        return _without(left, drop[0]) + _without(right, drop[1]), 'marker triangle twice: both copies removed'

    two_shared = False
    for i, a in enumerate(left):
        for j, b in enumerate(right):
            shared = a & b
            if len(shared) != 2:
                continue
            two_shared = True
            (third,) = marker - shared
            for p, c in enumerate(left):
                if p == i or third not in c:
                    continue
                for q, d in enumerate(right):
                    if q != j and c & d == {third}:
                        kept = _without(left, {i, p}) + _without(right, {j, q})
                        return kept + _split(parent, a ^ b) + _split(parent, c ^ d), 'two cycles share two marker edges'
    if two_shared:
        raise ProofStepError('no cycle pair meets in the third marker edge alone')

    edges = sorted(marker)
    left_pick = _distinct_carriers(left, edges)
    right_pick = _distinct_carriers(right, edges)
    if left_pick is None or right_pick is None:
        raise ProofStepError('marker edges are not carried by three distinct cycles')
    merged = _without(left, set(left_pick)) + _without(right, set(right_pick))
    for a, b in zip(left_pick, right_pick):
        merged += _split(parent, left[a] ^ right[b])
    return merged, 'cycles paired per marker edge'


def merge_triangulation_cdcs(c1: Cdc, c2: Cdc, gluing: TriangulationGluing) -> Cdc:
    """
    CDC of the glued triangulation of size at most |c1| + |c2|
    (|c1| + |c2| - 2 when the marker triangle is used twice).
    """
    if c1.parent != gluing.left or c2.parent != gluing.right:
        raise StructureError('CDCs do not belong to the glued triangulations')
    g = gluing.glued
    left = [frozenset(gluing.left_edges[e] for e in cycle.edge_set) for cycle in c1.cycles]
    right = [frozenset(gluing.right_edges[e] for e in cycle.edge_set) for cycle in c2.cycles]
    merged, step = _merge_edge_sets(g, left, right, frozenset(gluing.marker))
    logger.debug("marker merge: %s", step)
    cover = Cdc.from_cycles(g, (Cycle(g, edge_set) for edge_set in merged))
    if not verify_cdc(g, cover):
        raise ProofStepError('merged triangulation cover does not verify')
    if cover.size > c1.size + c2.size:
        raise ProofStepError('merged triangulation cover grew')
    return cover


def _piece_cover(piece: Piece) -> Cdc:
    found = min_cdc(piece.graph)
    if found is None:
        raise ProofStepError('a triangulation piece has no CDC')
    return found[1]


def theorem3_cdc(t: PlaneEmbedding) -> ConstructedCdc:
    """
    CDC of t of size at most the sum of the pieces' minimum CDC sizes: every
    piece is solved exactly, then pieces are merged along the tree.
    """
    tree = jackson_yu_tree(t)
    root = t.graph
    covers = []
    for piece in tree.pieces:
        cover = _piece_cover(piece)
        covers.append([frozenset(piece.root_edge(root, e) for e in cycle.edge_set) for cycle in cover.cycles])
    trace = [f'{len(tree.pieces)} pieces, sizes {[len(c) for c in covers]}']
    neighbours: Dict[int, List[Tuple[int, FrozenSet[int]]]] = {}
    for a, b, marker in tree.links:
        neighbours.setdefault(a, []).append((b, marker))
        neighbours.setdefault(b, []).append((a, marker))
    merged = covers[0]
    seen = {0}
    queue = deque([0])
    while queue:
        current = queue.popleft()
        for other, marker in neighbours.get(current, []):
            if other in seen:
                continue
            seen.add(other)
            queue.append(other)
            a, b, c = sorted(marker)
            marker_edges = frozenset({root.edge_id(a, b), root.edge_id(b, c), root.edge_id(a, c)})
            merged, step = _merge_edge_sets(root, merged, covers[other], marker_edges)
            trace.append(f'glue piece {other} along {sorted(marker)}: {step}')
    cover = Cdc.from_cycles(root, (Cycle(root, edge_set) for edge_set in merged))
    if not verify_cdc(root, cover):
        raise ProofStepError('glued triangulation cover does not verify')
    bound = sum(len(c) for c in covers)
    if cover.size > bound:
        raise ProofStepError(f'glued cover of size {cover.size} exceeds {bound}')
    return ConstructedCdc(cover, tuple(trace))


def theorem3_upper_bound(t: PlaneEmbedding) -> int:
    """Sum over the pieces of their minimum CDC size."""
    return sum(_piece_cover(piece).size for piece in jackson_yu_tree(t).pieces)


def theorem3_conditional_bound(tree: DecompositionTree) -> int:
    """3 per K_4 piece plus |V| - 2 per 4-connected piece."""
    return 3 * len(tree.k4_pieces) + sum(piece.graph.vertex_count - 2 for piece in tree.four_connected_pieces)
