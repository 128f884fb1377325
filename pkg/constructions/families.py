# constructions/families.py
"""
Named graph families.

Vertex (i, j) of the layered graphs is i*k + j: ring i, position j. Their
edge ids come in blocks: ring edges, then rungs, then diagonals.
"""
import logging
from typing import List, Tuple

import networkx as nx
from django.core.exceptions import ValidationError

from graphs.formats import graph_from_networkx
from graphs.models import Cycle, Graph, PlaneEmbedding, build_graph

from .models import AntiprismLayout

logger = logging.getLogger(__name__)


class LayeredIndex:
    """Edge ids of the k x l layered triangulated annulus."""

    def __init__(self, k: int, layers: int):
        self.k = k
        self.layers = layers

    def vertex(self, i: int, j: int) -> int:
        return i * self.k + j % self.k

    def ring(self, i: int, j: int) -> int:
        return i * self.k + j % self.k

    def rung(self, i: int, j: int) -> int:
        return self.layers * self.k + i * self.k + j % self.k

    def diagonal(self, i: int, j: int) -> int:
        return (2 * self.layers - 1) * self.k + i * self.k + j % self.k

    def ring_edges(self, i: int) -> frozenset:
        return frozenset(self.ring(i, j) for j in range(self.k))

    def upper_triangle(self, band: int, j: int) -> frozenset:
        """(band, j), (band, j+1), (band+1, j+1)."""
        return frozenset({self.ring(band, j), self.rung(band, j + 1), self.diagonal(band, j)})

    def lower_triangle(self, band: int, j: int) -> frozenset:
        """(band, j), (band+1, j), (band+1, j+1)."""
        return frozenset({self.ring(band + 1, j), self.rung(band, j), self.diagonal(band, j)})


def gen_theorem2_graph(k: int, layers: int) -> Tuple[Graph, PlaneEmbedding]:
    """
    `layers` nested k-cycles, consecutive ones joined by rungs
    {ik+j, (i+1)k+j} and diagonals {ik+j, (i+1)k+j+1}.

    The graph has k*layers vertices, k(3*layers - 2) edges and
    2k(layers - 1) + 2 faces: two k-gons and triangles between them.
    """
    if k < 3 or layers < 2:
        raise ValidationError('the layered graph needs k >= 3 and at least 2 layers')
    index = LayeredIndex(k, layers)
    pairs: List[Tuple[int, int]] = []
    for i in range(layers):
        pairs.extend((index.vertex(i, j), index.vertex(i, j + 1)) for j in range(k))
    for i in range(layers - 1):
        pairs.extend((index.vertex(i, j), index.vertex(i + 1, j)) for j in range(k))
    for i in range(layers - 1):
        pairs.extend((index.vertex(i, j), index.vertex(i + 1, j + 1)) for j in range(k))
    graph = build_graph(k * layers, pairs)

    rotation = []
    for i in range(layers):
        for j in range(k):
            ends = []
            if i + 1 < layers:
                ends += [(index.rung(i, j), 0), (index.diagonal(i, j), 0)]
            ends.append((index.ring(i, j), 0))
            if i > 0:
                ends += [(index.rung(i - 1, j), 1), (index.diagonal(i - 1, j - 1), 1)]
            ends.append((index.ring(i, j - 1), 1))
            rotation.append(tuple(ends))
    return graph, PlaneEmbedding(graph, tuple(rotation))


def gen_antiprism(k: int) -> AntiprismLayout:
    """The square of the 2k-cycle, drawn as two k-gons with a band of 2k triangles."""
    if k < 3:
        raise ValidationError('an antiprism needs k >= 3')
    graph, embedding = gen_theorem2_graph(k, 2)
    index = LayeredIndex(k, 2)
    triangles = []
    for j in range(k):
        triangles.append(Cycle(graph, index.lower_triangle(0, j)))
        triangles.append(Cycle(graph, index.upper_triangle(0, j)))
    return AntiprismLayout(
        k=k,
        graph=graph,
        embedding=embedding,
        outer_edges=index.ring_edges(0),
        inner_edges=index.ring_edges(1),
        cross_edges=frozenset(range(2 * k, 4 * k)),
        triangles=tuple(triangles),
    )


def gen_double_wheel(n: int) -> Graph:
    """Rim 0..n-3 with hubs n-2 and n-1 joined to every rim vertex."""
    if n < 5:
        raise ValidationError('a double wheel needs n >= 5')
    rim = n - 2
    pairs = [(j, (j + 1) % rim) for j in range(rim)]
    pairs += [(rim, j) for j in range(rim)]
    pairs += [(rim + 1, j) for j in range(rim)]
    return build_graph(n, pairs)


def gen_prism(k: int) -> Graph:
    """C_k x K_2: outer cycle 0..k-1, inner cycle k..2k-1, rung j -- k+j."""
    if k < 3:
        raise ValidationError('a prism needs k >= 3')
    pairs = [(j, (j + 1) % k) for j in range(k)]
    pairs += [(k + j, k + (j + 1) % k) for j in range(k)]
    pairs += [(j, k + j) for j in range(k)]
    return build_graph(2 * k, pairs)


def gen_ladder(n: int) -> Graph:
    """The cubic ladder on n vertices, i.e. the prism over an n/2-cycle."""
    if n < 6 or n % 2:
        raise ValidationError('a cubic ladder needs an even n >= 6')
    return gen_prism(n // 2)


def gen_cube() -> Graph:
    return gen_prism(4)


def gen_petersen() -> Graph:
    return graph_from_networkx(nx.petersen_graph())


def gen_icosahedron() -> Graph:
    return graph_from_networkx(nx.icosahedral_graph())


def gen_octahedron() -> Graph:
    return graph_from_networkx(nx.octahedral_graph())


def gen_complete(n: int) -> Graph:
    if n < 1:
        raise ValidationError('K_n needs n >= 1')
    return graph_from_networkx(nx.complete_graph(n))


def gen_cycle(n: int) -> Graph:
    if n < 3:
        raise ValidationError('C_n needs n >= 3')
    return build_graph(n, [(j, (j + 1) % n) for j in range(n)])


def gen_stacked_triangulation(steps: int) -> Graph:
    """
    K_4 with `steps` vertices stacked one after another: vertex 4+s goes
    into the face (s+1, s+2, s+3). Every step adds a separating triangle.
    """
    if steps < 0:
        raise ValidationError('steps must be non-negative')
    pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    for step in range(steps):
        pairs += [(step + 1, 4 + step), (step + 2, 4 + step), (step + 3, 4 + step)]
    return build_graph(4 + steps, pairs)

