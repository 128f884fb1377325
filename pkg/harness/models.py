"""
Job and table-row records for the command-line harness.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

from django.core.exceptions import ValidationError

from graphs.models import Graph, PlaneEmbedding

TABLE_COLUMNS = ('class', 'n', 'stat', 'value', 'witness')


@dataclass(frozen=True)
class JobSpec:
    """
    One harness job. A job reads its graphs either from graph6/sparse6 files
    or from a named family generator, never both.
    """

    subcommand: str
    inputs: Tuple[str, ...] = ()
    family: Optional[str] = None
    params: Dict[str, int] = field(default_factory=dict)
    k: Optional[str] = None
    true_only: bool = False
    output: Optional[str] = None
    workers: int = 1

    def __post_init__(self):
        if bool(self.inputs) == bool(self.family):
            raise ValidationError('give either input files or --family, not both')
        if self.workers < 1:
            raise ValidationError('workers must be at least 1')


@dataclass(frozen=True)
class GraphRecord:
    """A graph read by a job, with the id that lets a table row point back at it."""

    witness: str
    graph: Graph
    embedding: Optional[PlaneEmbedding] = None


@dataclass(frozen=True)
class TableRow:
    class_label: str
    n: int
    stat: str
    value: str
    witness: str

    def to_dict(self) -> Dict[str, Any]:
        return dict(zip(TABLE_COLUMNS, (self.class_label, self.n, self.stat, self.value, self.witness)))
