# graphs/embedding.py
"""Face tracing, duals and planar embeddings over rotation systems."""
import itertools
import logging
import math
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
from django.core.exceptions import ValidationError

from core.exceptions import NotPlanarError, StructureError

from .models import EdgeEnd, FacialWalk, Graph, PlaneEmbedding

logger = logging.getLogger(__name__)

EXHAUSTIVE_ROTATION_LIMIT = 10 ** 6


def trace_faces(e: PlaneEmbedding) -> List[FacialWalk]:
    """All facial walks; every edge appears in exactly two walk slots."""
    return list(e.faces)


def dual(e: PlaneEmbedding) -> Tuple[Graph, PlaneEmbedding, Dict[int, int]]:
    """
    Dual embedding: one vertex per face, dual edge e* keeps the id of e.

    The dual rotation at a face lists its darts in walk order, so the dual's
    faces correspond to the primal vertices and dual(dual(e)) is isomorphic
    to e.

    Returns:
        (dual graph, dual embedding, primal edge id -> dual edge id)
    """
    g = e.graph
    if not g.is_connected:
        raise StructureError('dual of a disconnected embedding')
    dart_face = e.dart_face
    dual_edges = tuple((dart_face[(edge_id, 0)], dart_face[(edge_id, 1)]) for edge_id in range(g.m))
    dual_graph = Graph(len(e.faces), dual_edges)
    rotation = tuple(tuple(walk.darts) for walk in e.faces)
    return dual_graph, PlaneEmbedding(dual_graph, rotation), {edge_id: edge_id for edge_id in range(g.m)}


def _end_at(g: Graph, edge_id: int, vertex: int) -> EdgeEnd:
    return (edge_id, 0) if g.edges[edge_id][0] == vertex else (edge_id, 1)


def planar_embed(g: Graph) -> Optional[PlaneEmbedding]:
    """
    Genus-0 rotation system for a connected loop-free graph, or None.

    networkx's planarity test embeds the underlying simple graph; parallel
    edges are then laid side by side (ascending ids at the smaller endpoint,
    descending at the larger) so that consecutive copies bound digon faces.
    """
    if g.has_loops:
        raise ValidationError('planar_embed does not accept loops')
    if not g.is_connected:
        raise ValidationError('planar_embed needs a connected graph')
    is_planar, embedding = nx.check_planarity(g.to_simple_networkx())
    if not is_planar:
        return None
    rotation = []
    for vertex in range(g.vertex_count):
        ends: List[EdgeEnd] = []
        if vertex in embedding:
            for neighbour in embedding.neighbors_cw_order(vertex):
                ids = sorted(g.edges_between(vertex, neighbour))
                if vertex > neighbour:
                    ids.reverse()
                ends.extend(_end_at(g, edge_id, vertex) for edge_id in ids)
        rotation.append(tuple(ends))
    return PlaneEmbedding(g, tuple(rotation))


def _face_count(g: Graph, rotation: Sequence[Sequence[EdgeEnd]]) -> int:
    succ = {}
    for ends in rotation:
        for position, end in enumerate(ends):
            succ[end] = ends[(position + 1) % len(ends)]
    seen = set()
    count = 0
    for edge_id in range(g.m):
        for side in (0, 1):
            dart = (edge_id, side)
            if dart in seen:
                continue
            count += 1
            while dart not in seen:
                seen.add(dart)
                dart = succ[(dart[0], 1 - dart[1])]
    return count


def exhaustive_embed(g: Graph) -> Optional[PlaneEmbedding]:
    """
    Planarity by brute force over all rotation systems (first entry fixed).

    Independent of networkx; only meant for small graphs.
    """
    if g.has_loops or not g.is_connected:
        raise ValidationError('exhaustive_embed needs a connected loop-free graph')
    if g.vertex_count > 12:
        raise ValidationError('exhaustive_embed is limited to 12 vertices')
    choices = math.prod(math.factorial(max(d - 1, 0)) for d in g.degrees)
    if choices > EXHAUSTIVE_ROTATION_LIMIT:
        raise ValidationError(f'{choices} rotation systems is too many for exhaustive search')
    target = 2 - g.vertex_count + g.m
    per_vertex = []
    for ends in g.incidence:
        if len(ends) <= 2:
            per_vertex.append([tuple(ends)])
        else:
            first, rest = ends[0], ends[1:]
            per_vertex.append([(first,) + perm for perm in itertools.permutations(rest)])
    for rotation in itertools.product(*per_vertex):
        if _face_count(g, rotation) == target:
            return PlaneEmbedding(g, tuple(rotation))
    return None


def duplicate_edge(e: PlaneEmbedding, edge_id: int) -> Tuple[PlaneEmbedding, int]:
    """Add a parallel copy of edge_id beside it so that the pair bounds a digon face."""
    g = e.graph
    u, v = g.edges[edge_id]
    if u == v:
        raise ValidationError('cannot duplicate a loop')
    new_id = g.m
    graph = Graph(g.vertex_count, g.edges + ((u, v),), g.loop_allowed)
    rotation = [list(ends) for ends in e.rotation]
    at_u = rotation[u].index((edge_id, 0))
    rotation[u].insert(at_u + 1, (new_id, 0))
    at_v = rotation[v].index((edge_id, 1))
    rotation[v].insert(at_v, (new_id, 1))
    return PlaneEmbedding(graph, tuple(tuple(ends) for ends in rotation)), new_id


def induced_embedding(
    e: PlaneEmbedding, vertices
) -> Tuple[PlaneEmbedding, Dict[int, int], Dict[int, int]]:
    """
    Restrict a rotation system to the subgraph induced by `vertices`.

    Returns:
        (embedding, old vertex -> new vertex, old edge id -> new edge id)
    """
    g = e.graph
    kept = sorted(set(vertices))
    vertex_map = {old: new for new, old in enumerate(kept)}
    edge_map: Dict[int, int] = {}
    new_edges = []
    for edge_id, (u, v) in enumerate(g.edges):
        if u in vertex_map and v in vertex_map:
            edge_map[edge_id] = len(new_edges)
            new_edges.append((vertex_map[u], vertex_map[v]))
    graph = Graph(len(kept), tuple(new_edges), g.loop_allowed)
    rotation = tuple(
        tuple((edge_map[edge_id], side) for edge_id, side in e.rotation[old] if edge_id in edge_map)
        for old in kept
    )
    return PlaneEmbedding(graph, rotation), vertex_map, edge_map


def is_triangulation(e: PlaneEmbedding) -> bool:
    return all(walk.length == 3 and walk.is_cycle for walk in e.faces)


def require_plane(e: PlaneEmbedding) -> None:
    """Raise unless every face of a connected embedding is bounded by a cycle."""
    if not e.graph.is_connected:
        raise NotPlanarError('embedding of a disconnected graph')
    bad = [index for index, walk in enumerate(e.faces) if not walk.is_cycle]
    if bad:
        raise StructureError(f'faces {bad[:5]} are not bounded by cycles')
