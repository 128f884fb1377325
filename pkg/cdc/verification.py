# cdc/verification.py
from core.exceptions import StructureError
from graphs.models import Graph

from .models import Cdc, CoverageReport


def verify_cdc(g: Graph, candidate: Cdc) -> CoverageReport:
    """
    Check that every edge of g is covered exactly twice.

    Raises:
        StructureError: the candidate's cycles belong to another graph
    """
    if candidate.parent != g:
        raise StructureError('CDC candidate belongs to another graph')
    coverage = tuple(candidate.coverage())
    return CoverageReport(all(count == 2 for count in coverage), coverage)
