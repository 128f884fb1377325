# cycles/reductions.py
"""Suppression, subdivision and edge restriction with provenance for lifting."""
from typing import Iterable, Tuple

from django.core.exceptions import ValidationError

from graphs.models import Graph

from .models import ReducedGraph


def suppress_degree2_vertex(g: Graph, v: int, allow_loop: bool = False) -> ReducedGraph:
    """
    Remove a degree-2 vertex and merge its two edges into one new last edge.

    Vertices above v shift down by one. When both edges go to the same
    neighbour the merge makes a loop, which needs allow_loop.

    Raises:
        ValidationError: deg(v) != 2, v carries a loop, or a loop would be
            created without allow_loop
    """
    if not 0 <= v < g.vertex_count:
        raise ValidationError(f'vertex {v} out of range')
    if g.degree(v) != 2:
        raise ValidationError(f'vertex {v} has degree {g.degree(v)}, not 2')
    (first, _), (second, _) = g.incidence[v]
    if first == second:
        raise ValidationError(f'vertex {v} only carries a loop')
    a = g.other_end(first, v)
    b = g.other_end(second, v)
    if a == b and not allow_loop:
        raise ValidationError(f'edges at {v} are parallel; merging them would create a loop')

    vertex_map = {w: (w if w < v else w - 1) for w in range(g.vertex_count) if w != v}
    edges = []
    origin = []
    for edge_id, (x, y) in enumerate(g.edges):
        if edge_id in (first, second):
            continue
        edges.append((vertex_map[x], vertex_map[y]))
        origin.append(frozenset({edge_id}))
    edges.append((vertex_map[a], vertex_map[b]))
    origin.append(frozenset({first, second}))
    graph = Graph(g.vertex_count - 1, tuple(edges), g.loop_allowed or a == b)
    return ReducedGraph(g, graph, vertex_map, tuple(origin))


def subdivide_edge(g: Graph, edge_id: int) -> Tuple[ReducedGraph, int]:
    """
    Put a new vertex x = n on edge (u, v).

    Edge edge_id becomes (u, x) and a new last edge (x, v) is added; both
    lift back to the original edge.

    Returns:
        (reduced graph, x)
    """
    u, v = g.edges[edge_id]
    x = g.vertex_count
    edges = list(g.edges)
    edges[edge_id] = (u, x)
    edges.append((x, v))
    origin = [frozenset({e}) for e in range(g.m)] + [frozenset({edge_id})]
    graph = Graph(x + 1, tuple(edges), g.loop_allowed)
    return ReducedGraph(g, graph, {w: w for w in range(x)}, tuple(origin)), x


def edge_subgraph(g: Graph, edge_ids: Iterable[int]) -> ReducedGraph:
    """Spanning subgraph on the given edges, renumbered in increasing id order."""
    kept = sorted(set(edge_ids))
    graph = Graph(g.vertex_count, tuple(g.edges[e] for e in kept), g.loop_allowed)
    return ReducedGraph(
        g, graph, {w: w for w in range(g.vertex_count)}, tuple(frozenset({e}) for e in kept)
    )


def split_off_pair(g: Graph, w: int, first: int, second: int) -> ReducedGraph:
    """
    Replace edges wx (first) and wy (second) by one new last edge xy.

    Raises:
        ValidationError: an edge is not at w, the edges coincide, or x == y
            (the pair would become a loop)
    """
    if first == second:
        raise ValidationError('split-off needs two different edges')
    x = g.other_end(first, w)
    y = g.other_end(second, w)
    if x == w or y == w:
        raise ValidationError('cannot split off a loop')
    if x == y:
        raise ValidationError(f'edges {first} and {second} both go to {x}; splitting them off makes a loop')
    kept = [e for e in range(g.m) if e not in (first, second)]
    graph = Graph(g.vertex_count, tuple(g.edges[e] for e in kept) + ((x, y),), g.loop_allowed)
    origin = tuple(frozenset({e}) for e in kept) + (frozenset({first, second}),)
    return ReducedGraph(g, graph, {v: v for v in range(g.vertex_count)}, origin)
