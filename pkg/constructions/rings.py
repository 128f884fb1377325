# constructions/rings.py
"""
Cycle rings and wheel rings of face boundaries in cubic plane graphs.

Around a face B with boundary edges f_0..f_{k-1}, the neighbouring faces
C_0..C_{k-1} form a ring when C_i meets B only in f_i, consecutive C_i
share exactly one edge (the spoke at the corner of B) and non-consecutive
C_i share no vertex. Exchanging the ring replaces k face boundaries by two
cycles (k even) or k + 1 boundaries, B included, by three cycles (k odd).
"""
import logging
from functools import reduce
from typing import List, Sequence, Tuple

from django.core.exceptions import ValidationError

from cdc.models import Cdc
from cdc.verification import verify_cdc
from core.exceptions import NotApplicableError, ProofStepError, StructureError
from graphs.models import Cycle, PlaneEmbedding

from .models import CYCLE_RING, WHEEL_RING, RingStructure

logger = logging.getLogger(__name__)


def find_ring(e: PlaneEmbedding, face: int) -> RingStructure:
    """
    The ring of faces around `face` of a cubic plane graph.

    Raises:
        StructureError: the graph is not cubic
        NotApplicableError: the faces around `face` do not form a ring
    """
    g = e.graph
    if not g.is_cubic:
        raise StructureError('rings are defined for cubic graphs')
    if not 0 <= face < len(e.faces):
        raise ValidationError(f'face {face} does not exist')
    walk = e.faces[face]
    if not walk.is_cycle:
        raise NotApplicableError(f'face {face} is not bounded by a cycle')
    k = walk.length
    ring_faces = tuple(e.dart_face[(edge_id, 1 - side)] for edge_id, side in walk.darts)
    if len(set(ring_faces)) != k or face in ring_faces:
        raise NotApplicableError(f'faces around face {face} repeat')
    spokes = []
    for i in range(k):
        corner = walk.vertices[(i + 1) % k]
        used = {walk.edges[i], walk.edges[(i + 1) % k]}
        third = [edge_id for edge_id, _ in g.incidence[corner] if edge_id not in used]
        if len(third) != 1:
            raise NotApplicableError(f'corner {corner} of face {face} has no single spoke')
        spokes.append(third[0])
    for index in ring_faces:
        if not e.faces[index].is_cycle:
            raise NotApplicableError(f'face {index} is not bounded by a cycle')
    cycles = tuple(Cycle(g, e.faces[index].edge_set) for index in ring_faces)
    boundary = Cycle(g, walk.edge_set)
    for i in range(k):
        if cycles[i].edge_set & boundary.edge_set != {walk.edges[i]}:
            raise NotApplicableError(f'face {ring_faces[i]} meets face {face} in more than one edge')
        for j in range(i + 1, k):
            if j == i + 1 or (i == 0 and j == k - 1):
                spoke = spokes[i] if j == i + 1 else spokes[k - 1]
                if cycles[i].edge_set & cycles[j].edge_set != {spoke}:
                    raise NotApplicableError(f'faces {ring_faces[i]} and {ring_faces[j]} do not share just a spoke')
            elif cycles[i].vertices & cycles[j].vertices:
                raise NotApplicableError(f'faces {ring_faces[i]} and {ring_faces[j]} touch; neighbourhood not induced')
    kind = CYCLE_RING if k % 2 == 0 else WHEEL_RING
    return RingStructure(g, kind, face, boundary, cycles, tuple(spokes), ring_faces)


def _combine(r: RingStructure, parts: Sequence[Cycle]) -> Cycle:
    edge_set = reduce(lambda acc, c: acc ^ c.edge_set, parts, r.boundary.edge_set)
    try:
        return Cycle(r.host, edge_set)
    except ValidationError as exc:
        raise ProofStepError(f'ring exchange at face {r.face} did not give a cycle: {exc.messages[0]}') from exc


def cycle_ring_exchange(r: RingStructure) -> Tuple[Cycle, Cycle]:
    """D_1 = B + C_0 + C_2 + ..., D_2 = B + C_1 + C_3 + ... (symmetric differences)."""
    if r.kind != CYCLE_RING:
        raise ValidationError('a cycle ring exchange needs an even ring')
    first = _combine(r, r.cycles[0::2])
    second = _combine(r, r.cycles[1::2])
    if first.edge_set == second.edge_set:
        raise ProofStepError('cycle ring exchange gave the same cycle twice')
    return first, second


def wheel_ring_exchange(r: RingStructure, chosen: int = 0) -> Tuple[Cycle, Cycle, Cycle]:
    """
    O_1 = B + C, then B plus each of the two alternating unions of the other
    rim cycles, taken in ring order starting after C.
    """
    if r.kind != WHEEL_RING:
        raise ValidationError('a wheel ring exchange needs an odd ring')
    k = len(r.cycles)
    if not 0 <= chosen < k:
        raise ValidationError(f'chosen cycle {chosen} is not in the ring')
    others = [r.cycles[(chosen + offset) % k] for offset in range(1, k)]
    result = (_combine(r, [r.cycles[chosen]]), _combine(r, others[0::2]), _combine(r, others[1::2]))
    if len({c.edge_set for c in result}) != 3:
        raise ProofStepError('wheel ring exchange gave repeated cycles')
    return result


def exchange_ring(cdc: Cdc, r: RingStructure, chosen: int = 0) -> Cdc:
    """
    Replace the ring's cycles in a CDC by their exchange.

    A cycle ring drops its k rim cycles for D_1, D_2; a wheel ring also
    drops B and gains O_1, O_2, O_3.
    """
    if cdc.parent != r.host:
        raise StructureError('ring and CDC belong to different graphs')
    remaining: List[Cycle] = list(cdc.cycles)
    removed = list(r.cycles) + ([r.boundary] if r.kind == WHEEL_RING else [])
    for cycle in removed:
        for position, candidate in enumerate(remaining):
            if candidate.edge_set == cycle.edge_set:
                del remaining[position]
                break
        else:
            raise StructureError(f'ring cycle {list(cycle.key)} is not in the CDC')
    added = cycle_ring_exchange(r) if r.kind == CYCLE_RING else wheel_ring_exchange(r, chosen)
    result = Cdc.from_cycles(r.host, remaining + list(added))
    if not verify_cdc(r.host, result):
        raise ProofStepError(f'ring exchange at face {r.face} broke the double cover')
    logger.debug("%s at face %d: %d -> %d cycles", r.kind, r.face, cdc.size, result.size)
    return result
