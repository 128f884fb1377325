# cycles/decomposition.py
"""Minimum decompositions of even subgraphs into edge-disjoint cycles."""
import logging
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import networkx as nx

from core.exceptions import ProofStepError
from graphs.models import Cycle, EvenSubgraph, Graph

from .enumeration import enumerate_cycles
from .models import CycleDecomposition
from .reductions import edge_subgraph

logger = logging.getLogger(__name__)


class _PartitionSearch:
    """Iterative-deepening exact partition of an edge mask into catalog cycles."""

    def __init__(self, masks: List[int], incidence: List[int], circumference: int):
        self.masks = masks
        self.incidence = incidence
        self.circumference = circumference
        self.by_edge: Dict[int, List[int]] = {}
        for index, mask in enumerate(masks):
            bits = mask
            while bits:
                low = bits & -bits
                self.by_edge.setdefault(low.bit_length() - 1, []).append(index)
                bits ^= low
        self.dead = set()

    def lower_bound(self, remaining: int) -> int:
        if not remaining:
            return 0
        by_length = -(-remaining.bit_count() // self.circumference)
        by_degree = max((remaining & inc).bit_count() for inc in self.incidence) // 2
        return max(by_length, by_degree)

    def solve(self, remaining: int, budget: int) -> Optional[List[int]]:
        if not remaining:
            return []
        if self.lower_bound(remaining) > budget or (remaining, budget) in self.dead:
            return None
        edge = (remaining & -remaining).bit_length() - 1
        for index in self.by_edge.get(edge, ()):
            mask = self.masks[index]
            if mask & remaining != mask:
                continue
            rest = self.solve(remaining ^ mask, budget - 1)
            if rest is not None:
                return [index] + rest
        self.dead.add((remaining, budget))
        return None


def _is_simple_planar(g: Graph, edge_set: Iterable[int]) -> bool:
    pairs = [g.edges[e] for e in edge_set]
    if len({(min(u, v), max(u, v)) for u, v in pairs}) != len(pairs):
        return False
    simple = nx.Graph()
    simple.add_edges_from(pairs)
    return nx.check_planarity(simple)[0]


def min_cycle_decomposition(s: EvenSubgraph, check_bound: bool = True) -> CycleDecomposition:
    """
    Partition s into as few edge-disjoint cycles as possible.

    When s is simple and planar the result obeys cd <= floor((n-1)/2) with n
    the order of the host graph; a violation raises ProofStepError.
    """
    host = s.parent
    if not s.edge_set:
        return CycleDecomposition(s, ())
    restricted = edge_subgraph(host, s.edge_set)
    catalog = enumerate_cycles(restricted.graph)
    full = (1 << restricted.graph.m) - 1
    masks = [sum(1 << e for e in cycle.edge_set) for cycle in catalog.cycles]
    incidence = [sum(1 << e for e, _ in ends) for ends in restricted.graph.incidence]
    search = _PartitionSearch(masks, incidence, catalog.circumference or 1)
    budget = search.lower_bound(full)
    chosen = None
    while chosen is None:
        if budget > restricted.graph.m:
            raise ProofStepError('even subgraph admits no cycle decomposition')
        chosen = search.solve(full, budget)
        budget += 1
    parts = tuple(
        sorted((restricted.lift_cycle(catalog.cycles[index]) for index in chosen), key=lambda c: c.key)
    )
    if check_bound and _is_simple_planar(host, s.edge_set):
        bound = (host.vertex_count - 1) // 2
        if len(parts) > bound:
            raise ProofStepError(
                f'{len(parts)} cycles exceed the planar bound {bound} for a host of order {host.vertex_count}'
            )
    logger.debug("decomposed %d edges into %d cycles", len(s.edge_set), len(parts))
    return CycleDecomposition(s, parts)


def split_into_cycles(parent: Graph, edge_set: FrozenSet[int]) -> Tuple[Cycle, ...]:
    """Minimum split of an even edge set into cycles, with no planar bound check."""
    return min_cycle_decomposition(EvenSubgraph(parent, edge_set), check_bound=False).parts
