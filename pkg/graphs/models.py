"""
Graph-core domain types.

- Graph: labelled multigraph whose edge ids are the positions in `edges`
- PlaneEmbedding: rotation system over a Graph; faces are traced lazily
- FacialWalk: one face as a closed walk of darts
- EvenSubgraph: edge-id set with even degree everywhere
- Cycle: connected 2-regular edge-id set

Every type is frozen after construction. Derived data (incidence lists,
faces) is cached on first use and never changes afterwards.
"""
from __future__ import annotations
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

import networkx as nx
from django.core.exceptions import ValidationError

from core.exceptions import NotPlanarError, StructureError

# (edge_id, side): side 0 is the edge's first endpoint, side 1 its second.
EdgeEnd = Tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """Multigraph on vertices 0..n-1 with dense edge ids."""

    vertex_count: int
    edges: Tuple[Tuple[int, int], ...]
    loop_allowed: bool = False

    def __post_init__(self):
        n = self.vertex_count
        if n < 0:
            raise ValidationError('vertex_count must be non-negative')
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        object.__setattr__(self, 'edges', edges)
        for edge_id, (u, v) in enumerate(edges):
            if not (0 <= u < n and 0 <= v < n):
                raise ValidationError(
                    f'edge {edge_id} = ({u}, {v}) has an endpoint outside [0, {n})'
                )
            if u == v and not self.loop_allowed:
                raise ValidationError(f'edge {edge_id} is a loop at {u} but loops are not allowed')

    def __str__(self) -> str:
        return f"Graph(n={self.vertex_count}, m={self.m})"

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def incidence(self) -> Tuple[Tuple[EdgeEnd, ...], ...]:
        """Edge-ends at every vertex, in edge-id order (a loop contributes two)."""
        ends: List[List[EdgeEnd]] = [[] for _ in range(self.vertex_count)]
        for edge_id, (u, v) in enumerate(self.edges):
            ends[u].append((edge_id, 0))
            ends[v].append((edge_id, 1))
        return tuple(tuple(x) for x in ends)

    @cached_property
    def _pair_index(self) -> Dict[Tuple[int, int], Tuple[int, ...]]:
        index: Dict[Tuple[int, int], List[int]] = defaultdict(list)
        for edge_id, (u, v) in enumerate(self.edges):
            index[(min(u, v), max(u, v))].append(edge_id)
        return {pair: tuple(ids) for pair, ids in index.items()}

    def endpoint(self, end: EdgeEnd) -> int:
        edge_id, side = end
        return self.edges[edge_id][side]

    def other_end(self, edge_id: int, vertex: int) -> int:
        u, v = self.edges[edge_id]
        if vertex == u:
            return v
        if vertex == v:
            return u
        raise StructureError(f'vertex {vertex} is not an endpoint of edge {edge_id}')

    def edges_between(self, u: int, v: int) -> Tuple[int, ...]:
        return self._pair_index.get((min(u, v), max(u, v)), ())

    def edge_id(self, u: int, v: int) -> int:
        """The unique edge joining u and v; fails on absent or parallel edges."""
        ids = self.edges_between(u, v)
        if len(ids) != 1:
            raise StructureError(f'expected exactly one edge between {u} and {v}, found {len(ids)}')
        return ids[0]

    def degree(self, vertex: int) -> int:
        return len(self.incidence[vertex])

    @cached_property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(len(ends) for ends in self.incidence)

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    def neighbours(self, vertex: int) -> List[int]:
        """Neighbours in rotation-free order, one entry per edge-end."""
        return [self.edges[e][1 - side] for e, side in self.incidence[vertex]]

    @cached_property
    def is_simple(self) -> bool:
        return all(u != v for u, v in self.edges) and len(self._pair_index) == self.m

    @property
    def has_loops(self) -> bool:
        return any(u == v for u, v in self.edges)

    @property
    def is_cubic(self) -> bool:
        return self.vertex_count > 0 and all(d == 3 for d in self.degrees)

    def degrees_in(self, edge_set: Iterable[int]) -> List[int]:
        """Degree of every vertex in the spanning subgraph formed by edge_set."""
        degrees = [0] * self.vertex_count
        for edge_id in edge_set:
            u, v = self.edges[edge_id]
            degrees[u] += 1
            degrees[v] += 1
        return degrees

    def vertices_of(self, edge_set: Iterable[int]) -> FrozenSet[int]:
        found = set()
        for edge_id in edge_set:
            found.update(self.edges[edge_id])
        return frozenset(found)

    def to_networkx(self) -> nx.MultiGraph:
        """MultiGraph whose edge keys are our edge ids."""
        graph = nx.MultiGraph()
        graph.add_nodes_from(range(self.vertex_count))
        for edge_id, (u, v) in enumerate(self.edges):
            graph.add_edge(u, v, key=edge_id)
        return graph

    def to_simple_networkx(self) -> nx.Graph:
        """Underlying simple graph: loops dropped, parallel edges merged."""
        graph = nx.Graph()
        graph.add_nodes_from(range(self.vertex_count))
        graph.add_edges_from((u, v) for u, v in self.edges if u != v)
        return graph

    @cached_property
    def is_connected(self) -> bool:
        if self.vertex_count == 0:
            return True
        return nx.is_connected(self.to_simple_networkx())


def build_graph(n: int, endpoint_pairs: Iterable[Sequence[int]], loop_allowed: bool = False) -> Graph:
    """
    Build a Graph whose edge ids follow the order of endpoint_pairs.

    Raises:
        ValidationError: endpoint out of range, or a loop without loop_allowed
    """
    pairs = []
    for pair in endpoint_pairs:
        if len(pair) != 2:
            raise ValidationError(f'endpoint pair {pair!r} does not have two entries')
        pairs.append((int(pair[0]), int(pair[1])))
    return Graph(int(n), tuple(pairs), loop_allowed)


@dataclass(frozen=True)
class FacialWalk:
    """A face traced as a closed sequence of darts (edge-end leaving a vertex)."""

    darts: Tuple[EdgeEnd, ...]
    edges: Tuple[int, ...]
    vertices: Tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def edge_set(self) -> FrozenSet[int]:
        return frozenset(self.edges)

    @property
    def is_cycle(self) -> bool:
        return (
            len(set(self.vertices)) == len(self.vertices)
            and len(set(self.edges)) == len(self.edges)
        )


@dataclass(frozen=True)
class PlaneEmbedding:
    """
    Genus-0 rotation system.

    rotation[v] lists the edge-ends at v in cyclic order. Construction is
    rejected unless every edge-end appears exactly once at its own vertex,
    the Euler formula holds (connected graphs), and no face walk crosses a
    bridge.
    """

    graph: Graph
    rotation: Tuple[Tuple[EdgeEnd, ...], ...]

    def __post_init__(self):
        g = self.graph
        rotation = tuple(tuple((int(e), int(s)) for e, s in ends) for ends in self.rotation)
        object.__setattr__(self, 'rotation', rotation)
        if len(rotation) != g.vertex_count:
            raise ValidationError('rotation must list every vertex exactly once')
        seen = set()
        for vertex, ends in enumerate(rotation):
            for edge_id, side in ends:
                if not (0 <= edge_id < g.m) or side not in (0, 1):
                    raise ValidationError(f'bad edge-end ({edge_id}, {side}) at vertex {vertex}')
                if g.edges[edge_id][side] != vertex:
                    raise ValidationError(f'edge-end ({edge_id}, {side}) does not belong to vertex {vertex}')
                if (edge_id, side) in seen:
                    raise ValidationError(f'edge-end ({edge_id}, {side}) listed twice')
                seen.add((edge_id, side))
        if len(seen) != 2 * g.m:
            raise ValidationError('some edge-ends are missing from the rotation')
        if g.is_connected and g.m > 0:
            faces = self.faces
            if g.vertex_count - g.m + len(faces) != 2:
                raise NotPlanarError(
                    f'Euler check failed: {g.vertex_count} - {g.m} + {len(faces)} != 2'
                )
            for index, walk in enumerate(faces):
                if len(set(walk.edges)) != len(walk.edges):
                    raise NotPlanarError(f'face {index} runs along a bridge')

    @cached_property
    def successor(self) -> Dict[EdgeEnd, EdgeEnd]:
        succ = {}
        for ends in self.rotation:
            for position, end in enumerate(ends):
                succ[end] = ends[(position + 1) % len(ends)]
        return succ

    @cached_property
    def faces(self) -> Tuple[FacialWalk, ...]:
        """Faces by the standard rule: arrive along (e, 1-s), leave by its successor."""
        g = self.graph
        succ = self.successor
        seen = set()
        walks = []
        for edge_id in range(g.m):
            for side in (0, 1):
                dart = (edge_id, side)
                if dart in seen:
                    continue
                darts = []
                while dart not in seen:
                    seen.add(dart)
                    darts.append(dart)
                    dart = succ[(dart[0], 1 - dart[1])]
                walks.append(FacialWalk(
                    darts=tuple(darts),
                    edges=tuple(e for e, _ in darts),
                    vertices=tuple(g.edges[e][s] for e, s in darts),
                ))
        return tuple(walks)

    @cached_property
    def dart_face(self) -> Dict[EdgeEnd, int]:
        return {dart: index for index, walk in enumerate(self.faces) for dart in walk.darts}

    def faces_of_edge(self, edge_id: int) -> Tuple[int, int]:
        return self.dart_face[(edge_id, 0)], self.dart_face[(edge_id, 1)]

    def face_between(self, vertex: int, position: int) -> int:
        """Face holding the corner at vertex between rotation entries position and position+1."""
        ends = self.rotation[vertex]
        return self.dart_face[ends[(position + 1) % len(ends)]]

    def position_of(self, vertex: int, edge_id: int) -> int:
        for position, (e, _) in enumerate(self.rotation[vertex]):
            if e == edge_id:
                return position
        raise StructureError(f'edge {edge_id} is not at vertex {vertex}')


@dataclass(frozen=True)
class EvenSubgraph:
    """Spanning edge set of `parent` with even degree at every vertex."""

    parent: Graph
    edge_set: FrozenSet[int]

    def __post_init__(self):
        object.__setattr__(self, 'edge_set', frozenset(int(e) for e in self.edge_set))
        for edge_id in self.edge_set:
            if not 0 <= edge_id < self.parent.m:
                raise StructureError(f'edge {edge_id} does not belong to the parent graph')
        odd = [v for v, d in enumerate(self.parent.degrees_in(self.edge_set)) if d % 2]
        if odd:
            raise ValidationError(f'edge set is not even: odd degree at {odd[:5]}')

    def __len__(self) -> int:
        return len(self.edge_set)

    @property
    def key(self) -> Tuple[int, ...]:
        return tuple(sorted(self.edge_set))

    @property
    def vertices(self) -> FrozenSet[int]:
        return self.parent.vertices_of(self.edge_set)


@dataclass(frozen=True)
class Cycle(EvenSubgraph):
    """Connected 2-regular edge set; a digon is a cycle of length 2."""

    def __post_init__(self):
        super().__post_init__()
        g = self.parent
        if len(self.edge_set) < 2:
            raise ValidationError('a cycle needs at least two edges')
        if any(g.edges[e][0] == g.edges[e][1] for e in self.edge_set):
            raise ValidationError('a cycle cannot contain a loop')
        degrees = g.degrees_in(self.edge_set)
        if any(d not in (0, 2) for d in degrees):
            raise ValidationError('edge set is not 2-regular')
        if len(self.vertex_sequence) != len(self.edge_set):
            raise ValidationError('edge set is 2-regular but not connected')

    @property
    def length(self) -> int:
        return len(self.edge_set)

    @cached_property
    def _walk(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        g = self.parent
        at: Dict[int, List[int]] = defaultdict(list)
        for edge_id in self.edge_set:
            u, v = g.edges[edge_id]
            at[u].append(edge_id)
            at[v].append(edge_id)
        start = min(at)
        vertices, edges = [start], []
        previous = None
        vertex = start
        while True:
            edge_id = min(e for e in at[vertex] if e != previous) if previous is not None else min(at[vertex])
            edges.append(edge_id)
            vertex = g.other_end(edge_id, vertex)
            previous = edge_id
            if vertex == start:
                break
            vertices.append(vertex)
        return tuple(vertices), tuple(edges)

    @property
    def vertex_sequence(self) -> Tuple[int, ...]:
        """Vertices in walk order starting at the smallest one."""
        return self._walk[0]

    @property
    def edge_sequence(self) -> Tuple[int, ...]:
        return self._walk[1]

    def paths_between(self, a: int, b: int) -> Tuple[FrozenSet[int], FrozenSet[int]]:
        """The two a-b paths of the cycle as edge sets."""
        vertices, edges = self._walk
        if a not in vertices or b not in vertices or a == b:
            raise StructureError(f'{a} and {b} must be distinct vertices of the cycle')
        i, j = sorted((vertices.index(a), vertices.index(b)))
        inner = frozenset(edges[i:j])
        return inner, self.edge_set - inner

    @classmethod
    def from_vertices(cls, parent: Graph, vertex_sequence: Sequence[int]) -> 'Cycle':
        """Cycle through the given vertices of a graph with no parallel edges there."""
        ring = list(vertex_sequence)
        edges = [parent.edge_id(ring[i], ring[(i + 1) % len(ring)]) for i in range(len(ring))]
        return cls(parent, frozenset(edges))


def symmetric_difference(a, b):
    """
    Symmetric difference of two edge sets.

    EvenSubgraph / Cycle arguments must share a parent and give an
    EvenSubgraph; plain sets give a frozenset.
    """
    if isinstance(a, EvenSubgraph) or isinstance(b, EvenSubgraph):
        if not (isinstance(a, EvenSubgraph) and isinstance(b, EvenSubgraph)):
            raise StructureError('cannot mix subgraphs with bare edge sets')
        if a.parent != b.parent:
            raise StructureError('symmetric difference of subgraphs of different graphs')
        return EvenSubgraph(a.parent, a.edge_set ^ b.edge_set)
    return frozenset(a) ^ frozenset(b)
