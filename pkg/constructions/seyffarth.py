# constructions/seyffarth.py
"""
(n-1)-CDCs of 4-connected plane graphs containing a given Hamiltonian cycle.

The faces are 4-coloured from h (1/2 inside, 3/4 outside); h = G12 together
with the even subgraphs G13 and G14 covers every edge twice, and each even
subgraph splits into at most (n-1)/2 cycles. For odd n one of the two is
shrunk at a vertex v of degree 4 or 5 to save the missing cycle.
"""
import logging
from typing import Iterable, List, Optional, Tuple

from django.conf import settings
from django.core.exceptions import ValidationError

from cdc.models import Cdc
from cdc.solver import min_cdc
from cdc.verification import verify_cdc
from core.exceptions import NotApplicableError, ProofStepError, StructureError
from cycles.decomposition import min_cycle_decomposition
from cycles.reductions import edge_subgraph, suppress_degree2_vertex
from graphs.colouring import even_subgraph_G1j, four_face_colouring
from graphs.connectivity import vertex_connectivity_at_least
from graphs.embedding import duplicate_edge
from graphs.models import Cycle, EvenSubgraph, Graph, PlaneEmbedding

from .models import ConstructedCdc

logger = logging.getLogger(__name__)


def _decompose(s: EvenSubgraph, check_bound: bool = True) -> List[Cycle]:
    return list(min_cycle_decomposition(s, check_bound=check_bound).parts)


def _decompose_suppressed(g: Graph, edge_ids: Iterable[int], v: int) -> List[Cycle]:
    """Decompose the edge set after suppressing v (degree 2 in it); cycles come back in g."""
    restricted = edge_subgraph(g, edge_ids)
    suppressed = suppress_degree2_vertex(restricted.graph, v)
    parts = _decompose(EvenSubgraph(suppressed.graph, frozenset(range(suppressed.graph.m))))
    return [restricted.lift_cycle(suppressed.lift_cycle(cycle)) for cycle in parts]


def _generic_cover(e: PlaneEmbedding, h: Cycle, inner_choice: int, outer_choice: int, check_bound: bool) -> List[Cycle]:
    colouring = four_face_colouring(e, h, inner_choice, outer_choice)
    g13 = even_subgraph_G1j(colouring, 3)
    g14 = even_subgraph_G1j(colouring, 4)
    return [h] + _decompose(g13, check_bound) + _decompose(g14, check_bound)


def _degree4_cover(e: PlaneEmbedding, h: Cycle, v: int, p: int) -> List[Cycle]:
    g = e.graph
    ends = e.rotation[v]
    colouring = four_face_colouring(
        e, h, 1, 3,
        inner_face=e.face_between(v, (p + 2) % 4),
        outer_face=e.face_between(v, (p + 1) % 4),
    )
    g13 = even_subgraph_G1j(colouring, 3)
    g14 = even_subgraph_G1j(colouring, 4)
    at_v = {edge_id for edge_id, _ in g.incidence[v]} & g13.edge_set
    if at_v != {ends[(p + 1) % 4][0], ends[(p + 3) % 4][0]}:
        raise ProofStepError(f'vertex {v} does not have degree 2 in G13 through v1 and v3')
    return [h] + _decompose_suppressed(g, g13.edge_set, v) + _decompose(g14)


def _degree5_cover(e: PlaneEmbedding, h: Cycle, v: int, p: int) -> Tuple[List[Cycle], str]:
    g = e.graph
    ends = e.rotation[v]
    e0, e1, e3, e4 = (ends[(p + offset) % 5][0] for offset in (0, 1, 3, 4))
    v3 = g.other_end(e3, v)
    doubled, copy = duplicate_edge(e, e3)
    gd = doubled.graph
    hd = Cycle(gd, h.edge_set)
    colouring = four_face_colouring(
        doubled, hd, 1, 3,
        inner_face=doubled.face_between(v, doubled.position_of(v, e4)),
        outer_face=doubled.face_between(v, doubled.position_of(v, e0)),
    )
    g13 = even_subgraph_G1j(colouring, 3)
    g14 = even_subgraph_G1j(colouring, 4)
    digon = frozenset({e3, copy})
    if not digon <= g13.edge_set:
        raise ProofStepError('the doubled edge does not lie in G13')
    if {edge_id for edge_id, _ in gd.incidence[v]} & (g13.edge_set - digon) != {e1, e4}:
        raise ProofStepError(f'vertex {v} does not have degree 2 in G13 once the digon is removed')

    first = _decompose_suppressed(gd, g13.edge_set - digon, v)
    second = _decompose(g14, check_bound=False)
    back = {edge_id: edge_id for edge_id in range(g.m)}
    back[copy] = e3

    def to_g(cycle: Cycle) -> Cycle:
        return Cycle(g, frozenset(back[edge_id] for edge_id in cycle.edge_set))

    if not any(cycle.edge_set == digon for cycle in second):
        cycles = [h] + [to_g(c) for c in first] + [to_g(c) for c in second]
        return cycles, 'degree 5: digon split across G14 cycles'
    rest = [to_g(c) for c in second if c.edge_set != digon]
    left, right = h.paths_between(v, v3)
    pair = [Cycle(g, left | {e3}), Cycle(g, right | {e3})]
    return pair + [to_g(c) for c in first] + rest, 'degree 5: digon in G14, h replaced by two cycles through vv3'


def _h_positions(e: PlaneEmbedding, h: Cycle, v: int) -> List[int]:
    return [position for position, (edge_id, _) in enumerate(e.rotation[v]) if edge_id in h.edge_set]


def _finish(g: Graph, cycles: List[Cycle], trace: List[str]) -> ConstructedCdc:
    cover = Cdc.from_cycles(g, cycles)
    if not verify_cdc(g, cover):
        raise ProofStepError('constructed cover does not double cover the graph')
    if cover.size > g.vertex_count - 1:
        raise ProofStepError(f'constructed cover has {cover.size} cycles, more than n - 1 = {g.vertex_count - 1}')
    return ConstructedCdc(cover, tuple(trace))


def seyffarth_small_cdc(e: PlaneEmbedding, h: Cycle, v: int, node_limit: Optional[int] = None) -> ConstructedCdc:
    """
    A CDC of size at most n - 1 that contains h, or that contains two cycles
    through an edge vv3 whose union with it is h plus that edge twice.

    Raises:
        ValidationError: h not Hamiltonian, or v not of degree 4 or 5
        NotApplicableError: the graph is not 4-connected
        ProofStepError: a construction step failed
        SearchLimitError: the exact fallback for cofacial h ran out of nodes
    """
    g = e.graph
    if h.parent != g:
        raise StructureError('h belongs to another graph')
    if len(h.vertices) != g.vertex_count or h.length != g.vertex_count:
        raise ValidationError('h is not a Hamiltonian cycle')
    if not 0 <= v < g.vertex_count or g.degree(v) not in (4, 5):
        raise ValidationError('v must be a vertex of degree 4 or 5')
    if not g.is_simple or not vertex_connectivity_at_least(g, 4):
        raise NotApplicableError('the graph is not 4-connected')

    n = g.vertex_count
    if n % 2 == 0:
        return _finish(g, _generic_cover(e, h, 1, 3, check_bound=True), ['even n: h with G13 and G14 decomposed'])

    degree = g.degree(v)
    first, second = _h_positions(e, h, v)
    if (second - first) % degree in (1, degree - 1):
        return _cofacial_cover(e, h, v, node_limit)
    if degree == 4:
        trace = ['odd n, degree 4: v suppressed in G13 (v1v3 shortcut)']
        return _finish(g, _degree4_cover(e, h, v, first), trace)
    # h sits at positions p and p + 2 with the lone vertex v1 between them.
    p = first if (second - first) % degree == 2 else second
    cycles, step = _degree5_cover(e, h, v, p)
    return _finish(g, cycles, ['odd n, degree 5: edge vv3 duplicated', step])


def _cofacial_cover(e: PlaneEmbedding, h: Cycle, v: int, node_limit: Optional[int]) -> ConstructedCdc:
    g = e.graph
    n = g.vertex_count
    best = None
    for inner in (1, 2):
        for outer in (3, 4):
            cycles = _generic_cover(e, h, inner, outer, check_bound=False)
            if best is None or len(cycles) < len(best[0]):
                best = cycles, f'odd n, h cofacial at {v}: colouring ({inner}, {outer})'
    if len(best[0]) <= n - 1:
        return _finish(g, best[0], [best[1]])
    if node_limit is None:
        node_limit = settings.CDC_FALLBACK_NODE_LIMIT
    logger.info("%s: colourings give %d cycles, searching for an (n-1)-CDC through h", g, len(best[0]))
    found = min_cdc(g, containing=[h], node_limit=node_limit)
    if found is None:
        raise ProofStepError('no CDC contains h')
    return _finish(g, found[1].cycles, [f'odd n, h cofacial at {v}: exact search with h fixed'])
