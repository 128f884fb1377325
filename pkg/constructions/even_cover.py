# constructions/even_cover.py
"""Three even subgraphs covering every edge of a Hamiltonian graph twice."""
import logging
from typing import FrozenSet, List, Tuple

from django.core.exceptions import ValidationError

from core.exceptions import ProofStepError, StructureError
from cycles.models import ReducedGraph
from cycles.reductions import edge_subgraph, split_off_pair, suppress_degree2_vertex
from graphs.models import Cycle, EvenSubgraph, Graph

logger = logging.getLogger(__name__)


class _Reduction:
    """The current graph with, per edge, the original edges it stands for."""

    def __init__(self, g: Graph, h: Cycle):
        self.h_edges = h.edge_set
        self.groups: List[FrozenSet[int]] = [frozenset({e}) for e, (u, v) in enumerate(g.edges) if u == v]
        restricted = edge_subgraph(g, [e for e, (u, v) in enumerate(g.edges) if u != v])
        self.graph = restricted.graph
        self.origin = list(restricted.edge_origin)

    def _apply(self, reduced: ReducedGraph) -> None:
        self.origin = [frozenset().union(*(self.origin[e] for e in parts)) for parts in reduced.edge_origin]
        self.graph = reduced.graph

    def on_h(self, edge_id: int) -> bool:
        return self.origin[edge_id] <= self.h_edges

    def has_chords(self) -> bool:
        return any(not self.on_h(edge_id) for edge_id in range(self.graph.m))

    def step(self) -> bool:
        g = self.graph
        for w in range(g.vertex_count):
            if g.degree(w) < 4:
                continue
            first, second = [e for e, _ in g.incidence[w] if not self.on_h(e)][:2]
            if g.other_end(first, w) == g.other_end(second, w):
                self.groups.append(self.origin[first] | self.origin[second])
                self._apply(edge_subgraph(g, [e for e in range(g.m) if e not in (first, second)]))
            else:
                self._apply(split_off_pair(g, w, first, second))
            return True
        if g.vertex_count >= 3:
            for w in range(g.vertex_count):
                if g.degree(w) == 2:
                    self._apply(suppress_degree2_vertex(g, w))
                    return True
        return False


def hamiltonian_three_even_cover(g: Graph, h: Cycle) -> Tuple[EvenSubgraph, EvenSubgraph, EvenSubgraph]:
    """
    Reduce g to a cubic core with Hamiltonian cycle h by suppressing degree-2
    vertices and splitting off pairs of non-h edges, colour the core's h
    edges alternately 1 and 2 and the rest 3, and lift the three colour-pair
    unions back.

    A pair of non-h edges that would become a loop, and every loop of g, is
    an even subgraph on its own and joins the second and third subgraph.
    """
    if h.parent != g:
        raise StructureError('h belongs to another graph')
    if g.vertex_count < 3:
        raise ValidationError('the graph needs at least three vertices')
    if len(h.vertices) != g.vertex_count or h.length != g.vertex_count:
        raise ValidationError('h is not a Hamiltonian cycle')

    reduction = _Reduction(g, h)
    while reduction.has_chords() and reduction.step():
        pass
    core = reduction.graph

    if not reduction.has_chords():
        lifted = [h.edge_set, h.edge_set, frozenset()]
        logger.debug("%s: core is the Hamiltonian cycle itself", g)
    else:
        if not core.is_cubic:
            raise ProofStepError(f'reduction stopped at a non-cubic core with degrees {core.degrees}')
        sequence = Cycle(core, frozenset(e for e in range(core.m) if reduction.on_h(e))).edge_sequence
        colour = {edge_id: 1 + position % 2 for position, edge_id in enumerate(sequence)}
        lifted = []
        for pair in ((1, 2), (1, 3), (2, 3)):
            chosen = [e for e in range(core.m) if colour.get(e, 3) in pair]
            lifted.append(frozenset().union(*(reduction.origin[e] for e in chosen)))
        logger.debug("%s: cubic core on %d vertices", g, core.vertex_count)

    for group in reduction.groups:
        lifted[1] |= group
        lifted[2] |= group
    counts = [0] * g.m
    for edge_set in lifted:
        for edge_id in edge_set:
            counts[edge_id] += 1
    if any(count != 2 for count in counts):
        raise ProofStepError('the three even subgraphs do not cover every edge twice')
    return tuple(EvenSubgraph(g, edge_set) for edge_set in lifted)
