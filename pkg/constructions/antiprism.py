# constructions/antiprism.py
"""Face-count CDCs of antiprisms and of the layered graphs, and the counting bound."""
import logging
import math
from functools import lru_cache
from typing import Dict, List, Tuple

from django.core.exceptions import ValidationError

from cdc.models import Cdc
from cdc.verification import verify_cdc
from core.exceptions import NotApplicableError, ProofStepError
from graphs.models import Cycle

from .families import LayeredIndex, gen_antiprism, gen_theorem2_graph

logger = logging.getLogger(__name__)


def _checked(cdc: Cdc, what: str) -> Cdc:
    if not verify_cdc(cdc.parent, cdc):
        raise ProofStepError(f'{what} is not a cycle double cover')
    return cdc


def antiprism_three_cdcs(k: int) -> List[Cdc]:
    """
    The three (n+2)-CDCs of the antiprism on n = 2k vertices.

    In order: every triangle plus both k-gons (the only true one); the
    odd-numbered triangles doubled with the outer k-gon doubled; the
    even-numbered triangles doubled with the inner k-gon doubled.
    """
    layout = gen_antiprism(k)
    outer, inner = layout.outer_cycle, layout.inner_cycle
    odd = layout.triangles[0::2]
    even = layout.triangles[1::2]
    g = layout.graph
    covers = [
        Cdc(g, ((inner, 1), (outer, 1)) + tuple((t, 1) for t in layout.triangles)),
        Cdc(g, ((outer, 2),) + tuple((t, 2) for t in odd)),
        Cdc(g, ((inner, 2),) + tuple((t, 2) for t in even)),
    ]
    return [_checked(cdc, f'antiprism cover {i}') for i, cdc in enumerate(covers)]


def theorem2_enumerate_fcdcs(k: int, layers: int) -> List[Cdc]:
    """
    Every CDC of the layered graph whose size equals its face count.

    For each choice of two k-cycles (possibly the same one twice) the
    triangle multiplicities are forced band by band: the deficit of a ring
    edge fixes the multiplicity of the triangle above it, and the diagonal
    it shares with the triangle below fixes that one. There are
    layers(layers+1)/2 such covers; only the choice of the innermost and
    outermost k-cycle is true.
    """
    g, _ = gen_theorem2_graph(k, layers)
    index = LayeredIndex(k, layers)
    found = []
    for first in range(layers):
        for second in range(first, layers):
            coverage: Dict[int, int] = dict.fromkeys(range(g.m), 0)
            entries: List[Tuple[Cycle, int]] = []

            def place(edge_set, times):
                if times < 0 or times > 2:
                    raise ProofStepError(f'forced multiplicity {times} for rings ({first}, {second})')
                if times:
                    entries.append((Cycle(g, edge_set), times))
                    for edge_id in edge_set:
                        coverage[edge_id] += times

            place(index.ring_edges(first), 1)
            place(index.ring_edges(second), 1)
            for band in range(layers - 1):
                for j in range(k):
                    place(index.upper_triangle(band, j), 2 - coverage[index.ring(band, j)])
                    place(index.lower_triangle(band, j), 2 - coverage[index.diagonal(band, j)])
            found.append(_checked(Cdc(g, tuple(entries)), f'layered cover for rings ({first}, {second})'))
    logger.debug("layered graph k=%d, %d layers: %d face-count covers", k, layers, len(found))
    return found


@lru_cache(maxsize=None)
def partition_count(r: int) -> int:
    """Number of partitions of r into positive parts."""
    if r < 0:
        raise ValidationError('partition_count needs r >= 0')
    table = [1] + [0] * r
    for part in range(1, r + 1):
        for total in range(part, r + 1):
            table[total] += table[total - part]
    return table[r]


def theorem2ii_bound(n: int, c: int) -> float:
    """
    Upper bound 4 (e/c)^(2c) (3c+1) p(3c) n^(5c) on the number of
    (n+c)-CDCs of the antiprism on n vertices.

    c = 0 gives the exact count 3. The bound is not established for c = 2.
    """
    if c < 0:
        raise ValidationError('c must be non-negative')
    if n < 6 or n % 2:
        raise ValidationError('antiprisms have an even number n >= 6 of vertices')
    if c == 0:
        return 3.0
    if c == 2:
        raise NotApplicableError('the antiprism counting bound does not cover c = 2')
    if n <= 6 * c + 6:
        raise NotApplicableError(f'the antiprism counting bound needs n > {6 * c + 6}')
    return 4 * (math.e / c) ** (2 * c) * (3 * c + 1) * partition_count(3 * c) * n ** (5 * c)
