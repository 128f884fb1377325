"""
Per-graph statistics and the tables folded from them.

A table row holds, for one graph class and one order n, the extreme value
of a statistic over the input graphs of that order together with the first
input graph attaining it. Values are exact: integers, rationals written as
p/q, or inf when a graph has no CDC.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Tuple, Union

import openpyxl
import pandas as pd
from django.core.exceptions import ValidationError
from openpyxl.styles import Alignment, Font, PatternFill

from cdc.models import Cdc
from cdc.solver import compute_census, count_cdcs, min_cdc
from core.exceptions import NotApplicableError
from core.utils import parallel_map
from cycles.enumeration import enumerate_cycles, enumerate_hamiltonian
from graphs.connectivity import vertex_connectivity_at_least
from graphs.embedding import planar_embed
from graphs.models import Graph

from .ingest import parse_size
from .models import TABLE_COLUMNS, GraphRecord, TableRow

logger = logging.getLogger(__name__)

Value = Optional[Union[int, Fraction]]


def defect(g: Graph, workers: int = 1) -> Fraction:
    """
    c(G) minus the larger of the two trivial lower bounds 2m/circ(G) and Δ(G).

    Raises:
        NotApplicableError: g has no CDC, so the defect is undefined
    """
    result = min_cdc(g, workers=workers)
    if result is None or g.m == 0:
        raise NotApplicableError(f'{g} has no CDC; its defect is undefined')
    circumference = enumerate_cycles(g, workers=workers).circumference
    return Fraction(result[0]) - max(Fraction(2 * g.m, circumference), Fraction(g.max_degree))


def theorem1_instance_check(g: Graph, workers: int = 1) -> Tuple[int, int, bool]:
    """
    Count the (n-1)⁻-CDCs and the Hamiltonian cycles of g and test
    22 * (CDC count) >= (Hamiltonian count).
    """
    bound = g.vertex_count - 1
    total = compute_census(g, max_size=bound, workers=workers).count_at_most(bound)
    hamiltonian = len(enumerate_hamiltonian(g))
    return total, hamiltonian, 22 * total >= hamiltonian


def long_cycle_count(cdc: Cdc) -> int:
    """Cycles (with repetition) longer than half the number of vertices."""
    n = cdc.parent.vertex_count
    return sum(1 for cycle in cdc.cycles if 2 * cycle.length > n)


def is_cubic_two_connected(g: Graph) -> bool:
    return g.is_cubic and vertex_connectivity_at_least(g, 2)


def is_cubic_three_connected(g: Graph) -> bool:
    return g.is_cubic and vertex_connectivity_at_least(g, 3)


def is_planar_four_connected(g: Graph) -> bool:
    return vertex_connectivity_at_least(g, 4) and planar_embed(g) is not None


CLASS_FILTERS: Dict[str, Callable[[Graph], bool]] = {
    'cubic-2-connected': is_cubic_two_connected,
    'cubic-3-connected': is_cubic_three_connected,
    'planar-4-connected': is_planar_four_connected,
    'any': lambda g: True,
}


def _min_size(g: Graph, k: Optional[str], workers: int) -> Value:
    result = min_cdc(g, workers=workers)
    return None if result is None else result[0]


def _min_true_size(g: Graph, k: Optional[str], workers: int) -> Value:
    result = min_cdc(g, true_only=True, workers=workers)
    return None if result is None else result[0]


def _defect_or_none(g: Graph, k: Optional[str], workers: int) -> Value:
    try:
        return defect(g, workers=workers)
    except NotApplicableError:
        return None


def _count_at(g: Graph, k: Optional[str], workers: int) -> Value:
    if k is None:
        raise ValidationError('count-at-k needs --k')
    return count_cdcs(g, parse_size(k, g.vertex_count), workers=workers)


@dataclass(frozen=True)
class Statistic:
    name: str
    compute: Callable[[Graph, Optional[str], int], Value]
    fold: str  # 'max' or 'min'
    missing_is_infinite: bool = True


STATISTICS: Dict[str, Statistic] = {
    'max-mincdc': Statistic('max-mincdc', _min_size, 'max'),
    'min-mincdc': Statistic('min-mincdc', _min_size, 'min'),
    'max-mincdc-true': Statistic('max-mincdc-true', _min_true_size, 'max'),
    'max-defect': Statistic('max-defect', _defect_or_none, 'max', missing_is_infinite=False),
    'count-at-k': Statistic('count-at-k', _count_at, 'max'),
}


def format_value(value: Value) -> str:
    if value is None:
        return 'inf'
    if isinstance(value, Fraction) and value.denominator != 1:
        return f'{value.numerator}/{value.denominator}'
    return str(int(value))


def _graph_value(job: Tuple[str, Graph, Optional[str]]) -> Value:
    stat_name, g, k = job
    return STATISTICS[stat_name].compute(g, k, 1)


def fold_table(
    records: Iterable[GraphRecord],
    class_label: str,
    stat_name: str,
    k: Optional[str] = None,
    workers: int = 1,
) -> List[TableRow]:
    """
    One row per order n: the max (or min) of the statistic over the graphs
    of that order which belong to the class. Ties go to the earliest input.
    """
    if class_label not in CLASS_FILTERS:
        raise ValidationError(f'unknown class {class_label!r}; choose from {", ".join(CLASS_FILTERS)}')
    if stat_name not in STATISTICS:
        raise ValidationError(f'unknown statistic {stat_name!r}; choose from {", ".join(STATISTICS)}')
    statistic = STATISTICS[stat_name]
    records = list(records)
    members = [record for record in records if CLASS_FILTERS[class_label](record.graph)]
    if len(members) < len(records):
        logger.info("%d of %d graphs are not %s and were left out",
                    len(records) - len(members), len(records), class_label)
    values = parallel_map(_graph_value, [(stat_name, record.graph, k) for record in members], workers)

    frame = pd.DataFrame({
        'n': [record.graph.vertex_count for record in members],
        'value': pd.Series(values, dtype=object),
        'witness': [record.witness for record in members],
        'order': range(len(members)),
    })
    if not statistic.missing_is_infinite:
        frame = frame[frame['value'].notna()]
    if frame.empty:
        return []
    frame = frame.assign(key=frame['value'].map(lambda value: float('inf') if value is None else float(value)))
    frame = frame.sort_values(['n', 'key', 'order'], ascending=[True, statistic.fold == 'min', True])
    best = frame.groupby('n', sort=True).head(1)
    return [
        TableRow(class_label, int(row.n), stat_name, format_value(row.value), row.witness)
        for row in best.itertuples(index=False)
    ]


def table_frame(rows: Iterable[TableRow]) -> pd.DataFrame:
    return pd.DataFrame([row.to_dict() for row in rows], columns=list(TABLE_COLUMNS))


def table_to_csv(rows: Iterable[TableRow], path: Optional[str] = None) -> Optional[str]:
    """CSV with header class,n,stat,value,witness; returned as text when no path is given."""
    return table_frame(rows).to_csv(path, index=False, lineterminator='\n')


def write_xlsx(rows: Iterable[TableRow], path: str) -> None:
    wb = openpyxl.Workbook()
    ws = wb.active
    ws.title = "Table"

    header_fill = PatternFill(start_color="2563EB", end_color="2563EB", fill_type="solid")
    header_font = Font(color="FFFFFF", bold=True)

    for col_num, header in enumerate(TABLE_COLUMNS, 1):
        cell = ws.cell(row=1, column=col_num)
        cell.value = header
        cell.fill = header_fill
        cell.font = header_font
        cell.alignment = Alignment(horizontal="center")

    for row_num, row in enumerate(rows, 2):
        for col_num, value in enumerate(row.to_dict().values(), 1):
            ws.cell(row=row_num, column=col_num, value=value)

    wb.save(path)
