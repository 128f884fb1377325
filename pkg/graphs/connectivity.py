# graphs/connectivity.py
"""Connectivity tests and small edge cuts."""
import itertools
from typing import FrozenSet, Iterable, List, Tuple

import networkx as nx

from core.exceptions import StructureError

from .models import Graph


def vertex_connectivity_at_least(g: Graph, k: int) -> bool:
    """
    True iff g has more than k vertices and no vertex cut of size < k.

    Parallel edges and loops do not affect vertex connectivity, so the
    underlying simple graph is tested.
    """
    if k <= 0:
        return True
    if g.vertex_count <= k:
        return False
    simple = g.to_simple_networkx()
    if not nx.is_connected(simple):
        return False
    return nx.node_connectivity(simple) >= k


def components_without(g: Graph, removed: Iterable[int]) -> List[FrozenSet[int]]:
    """Vertex sets of the components of g minus the given edges, sorted by least vertex."""
    removed = set(removed)
    graph = nx.Graph()
    graph.add_nodes_from(range(g.vertex_count))
    graph.add_edges_from(
        (u, v) for edge_id, (u, v) in enumerate(g.edges) if edge_id not in removed and u != v
    )
    parts = [frozenset(c) for c in nx.connected_components(graph)]
    return sorted(parts, key=min)


def bridges(g: Graph) -> List[int]:
    """Edge ids whose removal disconnects their component."""
    found = []
    for u, v in nx.bridges(g.to_simple_networkx()):
        ids = g.edges_between(u, v)
        if len(ids) == 1:
            found.append(ids[0])
    return sorted(found)


def two_edge_cuts(g: Graph) -> List[Tuple[int, int]]:
    """Pairs of non-bridge edges whose joint removal disconnects a connected g."""
    single = set(bridges(g))
    cuts = []
    for a, b in itertools.combinations(range(g.m), 2):
        if a in single or b in single:
            continue
        if len(components_without(g, (a, b))) > 1:
            cuts.append((a, b))
    return cuts


def three_edge_cut_sides(g: Graph, cut: Iterable[int]) -> Tuple[FrozenSet[int], FrozenSet[int]]:
    """
    The two sides of a 3-edge-cut, the side holding vertex 0 first.

    Raises:
        StructureError: cut is not three edges, or removing it does not leave
            exactly two components each holding one end of every cut edge
    """
    cut = tuple(cut)
    if len(set(cut)) != 3:
        raise StructureError('a 3-edge-cut needs three distinct edges')
    parts = components_without(g, cut)
    if len(parts) != 2:
        raise StructureError(f'removing {list(cut)} leaves {len(parts)} components')
    left, right = parts
    for edge_id in cut:
        u, v = g.edges[edge_id]
        if (u in left) == (v in left):
            raise StructureError(f'edge {edge_id} does not cross the cut')
    return left, right


def nontrivial_three_edge_cuts(g: Graph) -> List[Tuple[int, int, int]]:
    """3-edge-cuts of a cubic graph whose both sides have at least two vertices."""
    cuts = []
    for cut in itertools.combinations(range(g.m), 3):
        try:
            left, right = three_edge_cut_sides(g, cut)
        except StructureError:
            continue
        if len(left) >= 2 and len(right) >= 2:
            cuts.append(cut)
    return cuts


def components_without_vertices(g: Graph, removed: Iterable[int]) -> List[FrozenSet[int]]:
    """Vertex sets of the components of g minus the given vertices, sorted by least vertex."""
    graph = g.to_simple_networkx()
    graph.remove_nodes_from(set(removed))
    return sorted((frozenset(c) for c in nx.connected_components(graph)), key=min)
