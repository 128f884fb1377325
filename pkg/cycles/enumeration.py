# cycles/enumeration.py
"""Backtracking enumeration of simple cycles and Hamiltonian cycles."""
import logging
from functools import partial
from typing import List, Optional, Tuple

from django.core.exceptions import ValidationError

from core.utils import parallel_map
from graphs.models import Cycle, Graph

from .models import CycleCatalog

logger = logging.getLogger(__name__)


def _cycles_through_least(g: Graph, min_len: int, max_len: int, start: int) -> List[Tuple[int, ...]]:
    """
    Cycles whose least vertex is `start`.

    Paths leave start and only visit larger vertices. A cycle is kept in the
    direction whose first edge id is smaller than its closing edge id, so each
    undirected cycle is reported once (digons included).
    """
    found: List[Tuple[int, ...]] = []
    incidence = g.incidence
    edges = g.edges
    visited = {start}
    path: List[int] = []

    def extend(vertex: int) -> None:
        for edge_id, side in incidence[vertex]:
            if path and edge_id == path[-1]:
                continue
            other = edges[edge_id][1 - side]
            length = len(path) + 1
            if other == start:
                if path and length >= min_len and path[0] < edge_id:
                    found.append(tuple(sorted(path + [edge_id])))
            elif other > start and other not in visited and length < max_len:
                visited.add(other)
                path.append(edge_id)
                extend(other)
                path.pop()
                visited.discard(other)

    extend(start)
    return found


def enumerate_cycles(
    g: Graph, min_len: Optional[int] = None, max_len: Optional[int] = None, workers: int = 1
) -> CycleCatalog:
    """
    Every simple cycle of g with length in [min_len, max_len].

    Defaults: min_len 3 for simple graphs and 2 otherwise, max_len n. Work is
    split by least vertex; the merged result is sorted, so the catalog does
    not depend on the worker count.
    """
    if g.has_loops:
        raise ValidationError('enumerate_cycles needs a loop-free graph')
    if min_len is None:
        min_len = 3 if g.is_simple else 2
    if max_len is None:
        max_len = g.vertex_count
    min_len = max(min_len, 2)
    keys = set()
    if max_len >= min_len:
        task = partial(_cycles_through_least, g, min_len, max_len)
        for chunk in parallel_map(task, range(g.vertex_count), workers):
            keys.update(chunk)
    cycles = tuple(Cycle(g, frozenset(key)) for key in sorted(keys))
    logger.debug("%s: %d cycles with length in [%d, %d]", g, len(cycles), min_len, max_len)
    return CycleCatalog(g, cycles, min_len, max_len)


def enumerate_hamiltonian(g: Graph) -> List[Cycle]:
    """All spanning cycles of a connected graph, each undirected cycle once."""
    n = g.vertex_count
    if n < 2 or g.has_loops:
        return []
    found = set()
    incidence = g.incidence
    edges = g.edges
    visited = {0}
    path: List[int] = []

    def extend(vertex: int) -> None:
        for edge_id, side in incidence[vertex]:
            if path and edge_id == path[-1]:
                continue
            other = edges[edge_id][1 - side]
            if other == 0:
                if len(path) + 1 == n and path[0] < edge_id:
                    found.add(tuple(sorted(path + [edge_id])))
            elif other not in visited:
                visited.add(other)
                path.append(edge_id)
                extend(other)
                path.pop()
                visited.discard(other)

    extend(0)
    return [Cycle(g, frozenset(key)) for key in sorted(found)]
