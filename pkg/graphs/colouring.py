# graphs/colouring.py
"""
Four-face-colourings induced by a Hamiltonian cycle.

The faces inside the cycle are properly 2-coloured with 1/2 and the faces
outside with 3/4. The three even subgraphs G12, G13, G14 built from such a
colouring cover every edge exactly twice, and G12 is the cycle itself.
"""
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from django.core.exceptions import ValidationError

from core.exceptions import ProofStepError, StructureError

from .models import Cycle, EvenSubgraph, PlaneEmbedding

INTERIOR = (1, 2)
EXTERIOR = (3, 4)


@dataclass(frozen=True)
class FaceColouring:
    embedding: PlaneEmbedding
    hamiltonian: Cycle
    colours: Tuple[int, ...]

    def colour_of(self, face: int) -> int:
        return self.colours[face]

    def edge_colours(self, edge_id: int) -> Tuple[int, int]:
        left, right = self.embedding.faces_of_edge(edge_id)
        return self.colours[left], self.colours[right]

    @property
    def interior_faces(self) -> List[int]:
        return [face for face, colour in enumerate(self.colours) if colour in INTERIOR]

    @property
    def exterior_faces(self) -> List[int]:
        return [face for face, colour in enumerate(self.colours) if colour in EXTERIOR]


def _other(colour: int) -> int:
    return {1: 2, 2: 1, 3: 4, 4: 3}[colour]


def four_face_colouring(
    e: PlaneEmbedding,
    h: Cycle,
    inner_choice: int = 1,
    outer_choice: int = 3,
    inner_face: Optional[int] = None,
    outer_face: Optional[int] = None,
) -> FaceColouring:
    """
    Colour the faces of e from a Hamiltonian cycle h.

    The faces reachable from inner_face without crossing h form the interior
    and inner_face gets inner_choice; outer_face gets outer_choice. Without
    explicit faces, the two faces on either side of h's smallest edge are
    used.

    Raises:
        ValidationError: h not Hamiltonian, bad choices, a face not bounded
            by a cycle, or the two reference faces on the same side
        ProofStepError: a side that cannot be properly 2-coloured
    """
    g = e.graph
    if h.parent != g:
        raise StructureError('the Hamiltonian cycle belongs to another graph')
    if len(h.vertices) != g.vertex_count or h.length != g.vertex_count:
        raise ValidationError('h is not a Hamiltonian cycle')
    if inner_choice not in INTERIOR or outer_choice not in EXTERIOR:
        raise ValidationError('inner_choice must be 1 or 2 and outer_choice 3 or 4')
    if not all(walk.is_cycle for walk in e.faces):
        raise ValidationError('every face boundary must be a cycle')

    neighbours: Dict[int, List[int]] = {face: [] for face in range(len(e.faces))}
    for edge_id in range(g.m):
        if edge_id in h.edge_set:
            continue
        left, right = e.faces_of_edge(edge_id)
        neighbours[left].append(right)
        neighbours[right].append(left)

    first = min(h.edge_set)
    if inner_face is None:
        inner_face = e.dart_face[(first, 0)]
    if outer_face is None:
        outer_face = e.dart_face[(first, 1)] if inner_face == e.dart_face[(first, 0)] else None

    colours: Dict[int, int] = {}

    def spread(start: int, colour: int) -> None:
        colours[start] = colour
        queue = deque([start])
        while queue:
            face = queue.popleft()
            for other in neighbours[face]:
                if other not in colours:
                    colours[other] = _other(colours[face])
                    queue.append(other)
                elif colours[other] == colours[face]:
                    raise ProofStepError(f'faces {face} and {other} cannot be 2-coloured')

    spread(inner_face, inner_choice)
    if outer_face is None:
        outer_face = next(face for face in range(len(e.faces)) if face not in colours)
    if outer_face in colours:
        raise ValidationError('inner and outer reference faces lie on the same side of h')
    spread(outer_face, outer_choice)
    if len(colours) != len(e.faces):
        raise ProofStepError('h does not split the faces into exactly two sides')
    for edge_id in h.edge_set:
        left, right = e.faces_of_edge(edge_id)
        if (colours[left] in INTERIOR) == (colours[right] in INTERIOR):
            raise ProofStepError(f'edge {edge_id} of h does not separate interior from exterior')
    return FaceColouring(e, h, tuple(colours[face] for face in range(len(e.faces))))


def even_subgraph_G1j(colouring: FaceColouring, j: int) -> EvenSubgraph:
    """Edges incident with a face coloured 1 or j, but not with both kinds."""
    if j not in (2, 3, 4):
        raise ValidationError('j must be 2, 3 or 4')
    wanted = {1, j}
    chosen = set()
    for edge_id in range(colouring.embedding.graph.m):
        a, b = colouring.edge_colours(edge_id)
        if (a in wanted) != (b in wanted):
            chosen.add(edge_id)
    return EvenSubgraph(colouring.embedding.graph, frozenset(chosen))
