"""
Structures produced and consumed by the constructive operations.

- AntiprismLayout: the antiprism with its edge classes and triangle order
- RingStructure: a cycle ring or wheel ring of face boundaries around a face
- CubicJoin: a cubic graph cut along a 3-edge-cut, with both contracted sides
- Piece / DecompositionTree: separating-triangle decomposition of a triangulation
- TriangulationGluing: two triangulations identified along a marker triangle
- ConstructedCdc: a verified CDC together with the case decisions that built it
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, List, Tuple

from cdc.models import Cdc
from core.exceptions import StructureError
from graphs.models import Cycle, Graph, PlaneEmbedding

CYCLE_RING = 'cycle_ring'
WHEEL_RING = 'wheel_ring'


@dataclass(frozen=True)
class AntiprismLayout:
    """
    Antiprism on n = 2k vertices: outer k-gon on 0..k-1, inner k-gon on k..2k-1.

    triangles[i] is T_{i+1}; T_1 meets the inner k-gon and consecutive
    triangles share a cross edge.
    """

    k: int
    graph: Graph
    embedding: PlaneEmbedding
    outer_edges: FrozenSet[int]
    inner_edges: FrozenSet[int]
    cross_edges: FrozenSet[int]
    triangles: Tuple[Cycle, ...]

    @property
    def n(self) -> int:
        return 2 * self.k

    @property
    def outer_cycle(self) -> Cycle:
        return Cycle(self.graph, self.outer_edges)

    @property
    def inner_cycle(self) -> Cycle:
        return Cycle(self.graph, self.inner_edges)

    def crossings(self, cycle: Cycle) -> int:
        """Number of cross edges on a cycle (always even: they form an edge cut)."""
        return len(cycle.edge_set & self.cross_edges)


@dataclass(frozen=True)
class RingStructure:
    """
    Face boundaries C^1..C^k around a face B of a cubic plane graph.

    spokes[i] is the edge shared by cycles[i] and cycles[i+1] (cyclically);
    B is the boundary of the face the ring surrounds.
    """

    host: Graph
    kind: str
    face: int
    boundary: Cycle
    cycles: Tuple[Cycle, ...]
    spokes: Tuple[int, ...]
    ring_faces: Tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.cycles) + (1 if self.kind == WHEEL_RING else 0)


@dataclass(frozen=True)
class CubicJoin:
    """
    joined = left ≡ right: left minus left_vertex and right minus right_vertex,
    with the dangling edges paired along the 3-edge-cut.

    left_cut[i] and right_cut[i] are the edges at the removed vertices that
    become cut[i]; left_edges / right_edges send the remaining edge ids into
    the joined graph.
    """

    joined: Graph
    left: Graph
    left_vertex: int
    right: Graph
    right_vertex: int
    cut: Tuple[int, int, int]
    left_cut: Tuple[int, int, int]
    right_cut: Tuple[int, int, int]
    left_edges: Dict[int, int]
    right_edges: Dict[int, int]

    def __post_init__(self):
        sides = ((self.left, self.left_vertex, self.left_cut), (self.right, self.right_vertex, self.right_cut))
        for graph, vertex, ends in sides:
            if sorted(e for e, _ in graph.incidence[vertex]) != sorted(ends):
                raise StructureError('cut pairing does not match the edges at the removed vertex')


@dataclass(frozen=True)
class Piece:
    """
    One triangulation of the decomposition.

    vertex_origin[i] is the root vertex that piece vertex i stands for;
    markers are the root vertex triples of the separating triangles the
    piece was cut along.
    """

    embedding: PlaneEmbedding
    vertex_origin: Tuple[int, ...]
    markers: Tuple[FrozenSet[int], ...]
    four_connected: bool

    @property
    def graph(self) -> Graph:
        return self.embedding.graph

    @property
    def is_k4(self) -> bool:
        return self.graph.vertex_count == 4 and self.graph.m == 6

    def local_vertex(self, root_vertex: int) -> int:
        return self.vertex_origin.index(root_vertex)

    def root_edge(self, root: Graph, edge_id: int) -> int:
        u, v = self.graph.edges[edge_id]
        return root.edge_id(self.vertex_origin[u], self.vertex_origin[v])


@dataclass(frozen=True)
class DecompositionTree:
    """
    Pieces of a triangulation after splitting along every separating triangle.

    links are (piece index, piece index, marker triangle) and form a tree.
    """

    root: PlaneEmbedding
    pieces: Tuple[Piece, ...]
    links: Tuple[Tuple[int, int, FrozenSet[int]], ...] = field(default_factory=tuple)

    @property
    def four_connected_pieces(self) -> List[Piece]:
        return [piece for piece in self.pieces if piece.four_connected]

    @property
    def k4_pieces(self) -> List[Piece]:
        return [piece for piece in self.pieces if piece.is_k4]

    def reglued_edges(self) -> FrozenSet[FrozenSet[int]]:
        """Union of piece edges as root vertex pairs; equals the root's edge set."""
        pairs = set()
        for piece in self.pieces:
            for u, v in piece.graph.edges:
                pairs.add(frozenset((piece.vertex_origin[u], piece.vertex_origin[v])))
        return frozenset(pairs)


@dataclass(frozen=True)
class ConstructedCdc:
    cdc: Cdc
    case_trace: Tuple[str, ...] = ()

    @property
    def size(self) -> int:
        return self.cdc.size

    def to_json(self) -> Dict[str, Any]:
        return self.cdc.to_json(case_trace=self.case_trace)


@dataclass(frozen=True)
class TriangulationGluing:
    """
    Two triangulations identified along a facial triangle.

    marker holds the glued ids of the identified edges (e, f, g);
    left_edges / right_edges send each side's edge ids into the glued graph.
    """

    glued: Graph
    left: Graph
    right: Graph
    left_edges: Dict[int, int]
    right_edges: Dict[int, int]
    marker: Tuple[int, int, int]
