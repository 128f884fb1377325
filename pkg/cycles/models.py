"""
Cycle-engine domain types.

- CycleCatalog: every cycle of a graph within a length window, canonical order
- CycleDecomposition: partition of an even subgraph into cycles
- ReducedGraph: a graph derived by suppression/subdivision/restriction,
  together with the provenance needed to lift edge sets back
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from django.core.exceptions import ValidationError

from core.exceptions import StructureError
from graphs.models import Cycle, EvenSubgraph, Graph


@dataclass(frozen=True)
class CycleCatalog:
    """All cycles of `parent` with length in [min_len, max_len], sorted by edge-id list."""

    parent: Graph
    cycles: Tuple[Cycle, ...]
    min_len: int
    max_len: int

    def __len__(self) -> int:
        return len(self.cycles)

    def __iter__(self):
        return iter(self.cycles)

    @cached_property
    def containing(self) -> Tuple[Tuple[int, ...], ...]:
        """Catalog indices of the cycles through each edge."""
        by_edge: List[List[int]] = [[] for _ in range(self.parent.m)]
        for index, cycle in enumerate(self.cycles):
            for edge_id in cycle.edge_set:
                by_edge[edge_id].append(index)
        return tuple(tuple(indices) for indices in by_edge)

    @property
    def circumference(self) -> Optional[int]:
        return max((c.length for c in self.cycles), default=None)

    @property
    def girth(self) -> Optional[int]:
        return min((c.length for c in self.cycles), default=None)

    def to_json(self) -> List[List[int]]:
        return [list(cycle.key) for cycle in self.cycles]


@dataclass(frozen=True)
class CycleDecomposition:
    """Pairwise edge-disjoint cycles whose union is the parent even subgraph."""

    parent: EvenSubgraph
    parts: Tuple[Cycle, ...]

    def __post_init__(self):
        covered = set()
        for cycle in self.parts:
            if cycle.parent != self.parent.parent:
                raise StructureError('decomposition part belongs to another graph')
            if covered & cycle.edge_set:
                raise ValidationError('decomposition parts overlap')
            covered |= cycle.edge_set
        if covered != set(self.parent.edge_set):
            raise ValidationError('decomposition does not cover the even subgraph')

    def __len__(self) -> int:
        return len(self.parts)


@dataclass(frozen=True)
class ReducedGraph:
    """
    A graph obtained from `source` plus edge provenance.

    edge_origin[new_edge] is the set of source edges it stands for; a merged
    edge stands for two. vertex_map sends surviving source vertices to their
    new ids.
    """

    source: Graph
    graph: Graph
    vertex_map: Dict[int, int]
    edge_origin: Tuple[FrozenSet[int], ...]

    def lift(self, edge_set: Iterable[int]) -> FrozenSet[int]:
        lifted = set()
        for edge_id in edge_set:
            lifted |= self.edge_origin[edge_id]
        return frozenset(lifted)

    def lift_cycle(self, cycle: Cycle) -> Cycle:
        if cycle.parent != self.graph:
            raise StructureError('cycle does not belong to the reduced graph')
        return Cycle(self.source, self.lift(cycle.edge_set))
