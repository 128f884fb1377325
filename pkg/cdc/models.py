"""
Cycle double cover types.

A Cdc is a multiset of cycles of one graph, each with multiplicity 1 or 2,
kept in canonical order (by sorted edge-id list). A Cdc value is only a
candidate until verify_cdc accepts it: the solver and every constructor
verify before returning, but a Cdc read from a file may be wrong.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from django.core.exceptions import ValidationError

from core.exceptions import StructureError
from graphs.models import Cycle, Graph


@dataclass(frozen=True)
class Cdc:
    parent: Graph
    entries: Tuple[Tuple[Cycle, int], ...]

    def __post_init__(self):
        totals: Dict[Tuple[int, ...], int] = {}
        cycles: Dict[Tuple[int, ...], Cycle] = {}
        for cycle, multiplicity in self.entries:
            if cycle.parent != self.parent:
                raise StructureError('cycle belongs to another graph')
            totals[cycle.key] = totals.get(cycle.key, 0) + int(multiplicity)
            cycles[cycle.key] = cycle
        for key, multiplicity in totals.items():
            if multiplicity not in (1, 2):
                raise ValidationError(f'cycle {list(key)} has multiplicity {multiplicity}; only 1 or 2 allowed')
        entries = tuple((cycles[key], totals[key]) for key in sorted(totals))
        object.__setattr__(self, 'entries', entries)

    @classmethod
    def from_cycles(cls, parent: Graph, cycles: Iterable[Cycle]) -> 'Cdc':
        """Collect a list of cycles, repeated cycles becoming multiplicity 2."""
        return cls(parent, tuple((cycle, 1) for cycle in cycles))

    @property
    def size(self) -> int:
        return sum(multiplicity for _, multiplicity in self.entries)

    @property
    def is_true(self) -> bool:
        return all(multiplicity == 1 for _, multiplicity in self.entries)

    @property
    def cycles(self) -> List[Cycle]:
        """Cycles with repetition."""
        return [cycle for cycle, multiplicity in self.entries for _ in range(multiplicity)]

    @property
    def canonical_key(self) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
        return tuple((cycle.key, multiplicity) for cycle, multiplicity in self.entries)

    def coverage(self) -> List[int]:
        counts = [0] * self.parent.m
        for cycle, multiplicity in self.entries:
            for edge_id in cycle.edge_set:
                counts[edge_id] += multiplicity
        return counts

    def contains(self, cycle: Cycle) -> bool:
        return any(c.key == cycle.key for c, _ in self.entries)

    def to_json(self, case_trace: Optional[Sequence[str]] = None) -> Dict[str, Any]:
        payload: Dict[str, Any] = {
            'size': self.size,
            'true': self.is_true,
            'cycles': [{'edges': list(cycle.key), 'mult': multiplicity} for cycle, multiplicity in self.entries],
        }
        if case_trace is not None:
            payload['case_trace'] = list(case_trace)
        return payload

    @classmethod
    def from_json(cls, parent: Graph, payload: Dict[str, Any]) -> 'Cdc':
        try:
            entries = tuple(
                (Cycle(parent, frozenset(item['edges'])), int(item['mult'])) for item in payload['cycles']
            )
        except (KeyError, TypeError) as exc:
            raise ValidationError(f'malformed CDC JSON: {exc}') from exc
        return cls(parent, entries)


@dataclass(frozen=True)
class CoverageReport:
    valid: bool
    coverage: Tuple[int, ...]

    @property
    def undercovered(self) -> List[int]:
        return [edge_id for edge_id, count in enumerate(self.coverage) if count < 2]

    @property
    def overcovered(self) -> List[int]:
        return [edge_id for edge_id, count in enumerate(self.coverage) if count > 2]

    def __bool__(self) -> bool:
        return self.valid


@dataclass(frozen=True)
class CdcCensus:
    """
    Counts of k-CDCs and true k-CDCs for every k up to a bound.

    min_size / min_true_size are math.inf when no (true) CDC exists within
    the bound.
    """

    parent: Graph
    per_size: Dict[int, Tuple[int, int]] = field(default_factory=dict)

    def __post_init__(self):
        for size, (total, true_count) in self.per_size.items():
            if true_count > total:
                raise ValidationError(f'more true {size}-CDCs than {size}-CDCs')

    @property
    def min_size(self) -> Union[int, float]:
        return min((k for k, (total, _) in self.per_size.items() if total), default=math.inf)

    @property
    def min_true_size(self) -> Union[int, float]:
        return min((k for k, (_, true_count) in self.per_size.items() if true_count), default=math.inf)

    def count(self, k: int, true_only: bool = False) -> int:
        total, true_count = self.per_size.get(k, (0, 0))
        return true_count if true_only else total

    def count_at_most(self, k: int, true_only: bool = False) -> int:
        return sum(self.count(size, true_only) for size in self.per_size if size <= k)


def cdc_to_json(cdc: Cdc, case_trace: Optional[Sequence[str]] = None) -> Dict[str, Any]:
    return cdc.to_json(case_trace=case_trace)


def cdc_from_json(g: Graph, payload: Dict[str, Any]) -> Cdc:
    """Read a CDC back; an unverified candidate until verify_cdc accepts it."""
    return Cdc.from_json(g, payload)
