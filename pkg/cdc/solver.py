# cdc/solver.py
"""
Exact CDC search.

A CDC is an exact cover of the doubled edge set by catalog cycles, each
used once or twice. The search state is a pair of edge bitmasks
(once, twice): edges whose residual demand is at least 1, and edges whose
residual demand is 2, so twice is always a subset of once.

Every node branches on the uncovered edge with the fewest fitting cycles
and decides, there and only there, which cycles cover it and how often.
A cycle that has been placed contains an edge whose demand is now 0, so it
never fits again; this is what makes every multiset come out exactly once.
"""
import logging
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from django.conf import settings
from django.core.exceptions import ValidationError

from core.exceptions import ProofStepError, SearchLimitError, StructureError
from core.utils import parallel_map
from cycles.enumeration import enumerate_cycles
from cycles.models import CycleCatalog
from graphs.models import Cycle, Graph

from .models import Cdc, CdcCensus
from .verification import verify_cdc

logger = logging.getLogger(__name__)

Choice = Tuple[Tuple[int, int], ...]


class CoverSearch:
    """Branching exact cover with multiplicities over one cycle catalog."""

    def __init__(
        self,
        catalog: CycleCatalog,
        true_only: bool = False,
        excluded: Sequence[int] = (),
        node_limit: Optional[int] = None,
    ):
        g = catalog.parent
        self.catalog = catalog
        self.full = (1 << g.m) - 1
        self.masks = [sum(1 << e for e in cycle.edge_set) for cycle in catalog.cycles]
        excluded = set(excluded)
        self.candidates = tuple(
            tuple(i for i in indices if i not in excluded) for indices in catalog.containing
        )
        self.incidence = [sum(1 << e for e, _ in ends) for ends in g.incidence]
        self.circumference = catalog.circumference or 1
        self.girth = catalog.girth or 1
        self.allow_double = not true_only
        self.node_limit = node_limit
        self.nodes = 0
        self._counts: Dict[Tuple[int, int, int], int] = {}
        self._feasible: Dict[Tuple[int, int, int], bool] = {}

    def __getstate__(self):
        state = self.__dict__.copy()
        state['_counts'] = {}
        state['_feasible'] = {}
        state['nodes'] = 0
        return state

    @staticmethod
    def apply(once: int, twice: int, mask: int, times: int) -> Tuple[int, int]:
        if times == 2:
            return once & ~mask, twice & ~mask
        return (once & ~mask) | (twice & mask), twice & ~mask

    def apply_choice(self, once: int, twice: int, choice: Choice) -> Tuple[int, int, int]:
        used = 0
        for index, times in choice:
            once, twice = self.apply(once, twice, self.masks[index], times)
            used += times
        return once, twice, used

    def bounds(self, once: int, twice: int) -> Tuple[int, int]:
        """Fewest and most cycles that can still finish the cover."""
        slots = once.bit_count() + twice.bit_count()
        if not slots:
            return 0, 0
        low = -(-slots // self.circumference)
        for incident in self.incidence:
            at_vertex = (once & incident).bit_count() + (twice & incident).bit_count()
            low = max(low, -(-at_vertex // 2))
        return low, slots // self.girth

    def branch(self, once: int, twice: int) -> List[Choice]:
        self.nodes += 1
        if self.node_limit is not None and self.nodes > self.node_limit:
            raise SearchLimitError(f'CDC search exceeded {self.node_limit} nodes')
        masks = self.masks
        best = None
        bits = once
        while bits:
            low = bits & -bits
            bits ^= low
            edge = low.bit_length() - 1
            fitting = [i for i in self.candidates[edge] if masks[i] & once == masks[i]]
            needs_two = bool(twice & low)
            if not fitting or (needs_two and not self.allow_double and len(fitting) < 2):
                return []
            score = len(fitting) * (len(fitting) + 1) // 2 if needs_two else len(fitting)
            if best is None or score < best[0]:
                best = (score, fitting, needs_two)
                if score == 1:
                    break
        _, fitting, needs_two = best
        if not needs_two:
            return [((i, 1),) for i in fitting]
        options: List[Choice] = []
        for position, i in enumerate(fitting):
            mask = masks[i]
            if self.allow_double and mask & twice == mask:
                options.append(((i, 2),))
            after, _ = self.apply(once, twice, mask, 1)
            for j in fitting[position + 1:]:
                if masks[j] & after == masks[j]:
                    options.append(((i, 1), (j, 1)))
        return options

    def _pruned(self, once: int, twice: int, budget: int) -> bool:
        low, high = self.bounds(once, twice)
        return not low <= budget <= high

    def count(self, once: int, twice: int, budget: int) -> int:
        """Covers of the residual demand by exactly `budget` cycles."""
        if not once:
            return int(budget == 0)
        if self._pruned(once, twice, budget):
            return 0
        key = (once, twice, budget)
        if key in self._counts:
            return self._counts[key]
        total = 0
        for choice in self.branch(once, twice):
            o, t, used = self.apply_choice(once, twice, choice)
            if used <= budget:
                total += self.count(o, t, budget - used)
        self._counts[key] = total
        return total

    def feasible(self, once: int, twice: int, budget: int) -> bool:
        if not once:
            return budget == 0
        if self._pruned(once, twice, budget):
            return False
        key = (once, twice, budget)
        if key in self._feasible:
            return self._feasible[key]
        found = False
        for choice in self.branch(once, twice):
            o, t, used = self.apply_choice(once, twice, choice)
            if used <= budget and self.feasible(o, t, budget - used):
                found = True
                break
        self._feasible[key] = found
        return found

    def walk(self, once: int, twice: int, budget: int) -> Iterator[List[Tuple[int, int]]]:
        """Every cover of exactly `budget` cycles, as (catalog index, multiplicity) lists."""
        if not once:
            if budget == 0:
                yield []
            return
        if not self.feasible(once, twice, budget):
            return
        for choice in self.branch(once, twice):
            o, t, used = self.apply_choice(once, twice, choice)
            if used <= budget:
                for rest in self.walk(o, t, budget - used):
                    yield list(choice) + rest


def _run_branch(job) -> object:
    search, once, twice, budget, method = job
    if method == 'walk':
        return list(search.walk(once, twice, budget))
    return getattr(search, method)(once, twice, budget)


def _fan_out(search: CoverSearch, once: int, twice: int, budget: int, method: str, workers: int) -> List:
    """Run `method` on every root branch, in branch order."""
    jobs = []
    for choice in search.branch(once, twice):
        o, t, used = search.apply_choice(once, twice, choice)
        if used <= budget:
            jobs.append((search, o, t, budget - used, method, choice))
    results = parallel_map(_run_branch, [job[:5] for job in jobs], workers)
    if method == 'walk':
        return [list(job[5]) + rest for job, found in zip(jobs, results) for rest in found]
    return results


class _Problem:
    """A prepared search: catalog, start state and the cycles fixed up front."""

    def __init__(self, g: Graph, true_only: bool, containing: Sequence[Cycle], node_limit: Optional[int], workers: int):
        if g.has_loops:
            raise ValidationError('CDC search needs a loop-free graph')
        self.graph = g
        self.catalog = enumerate_cycles(g, workers=workers)
        limit = getattr(settings, 'CDC_MAX_CYCLE_CATALOG', None)
        if limit is not None and len(self.catalog) > limit:
            raise SearchLimitError(f'{g} has {len(self.catalog)} cycles, more than CDC_MAX_CYCLE_CATALOG={limit}')
        index_of = {cycle.key: i for i, cycle in enumerate(self.catalog.cycles)}
        self.fixed: List[Cycle] = []
        fixed_indices = []
        for cycle in containing:
            if cycle.parent != g:
                raise StructureError('required cycle belongs to another graph')
            self.fixed.append(cycle)
            fixed_indices.append(index_of[cycle.key])
        self.search = CoverSearch(
            self.catalog, true_only, excluded=fixed_indices if true_only else (), node_limit=node_limit
        )
        self.workers = workers
        self.once = self.twice = self.search.full
        self.possible = not (true_only and len(set(fixed_indices)) < len(fixed_indices))
        for index in fixed_indices:
            mask = self.search.masks[index]
            if mask & self.once != mask:
                self.possible = False
                break
            self.once, self.twice = self.search.apply(self.once, self.twice, mask, 1)

    def bounds(self) -> Tuple[int, int]:
        return self.search.bounds(self.once, self.twice)

    def _parallel(self, budget: int) -> bool:
        return self.workers > 1 and self.once != 0 and budget > 0

    def count(self, budget: int) -> int:
        if not self.possible or budget < 0:
            return 0
        if self._parallel(budget):
            return sum(_fan_out(self.search, self.once, self.twice, budget, 'count', self.workers))
        return self.search.count(self.once, self.twice, budget)

    def feasible(self, budget: int) -> bool:
        if not self.possible or budget < 0:
            return False
        if self._parallel(budget):
            return any(_fan_out(self.search, self.once, self.twice, budget, 'feasible', self.workers))
        return self.search.feasible(self.once, self.twice, budget)

    def solutions(self, budget: int) -> List[Cdc]:
        if not self.possible or budget < 0:
            return []
        if self._parallel(budget):
            walks = _fan_out(self.search, self.once, self.twice, budget, 'walk', self.workers)
        else:
            walks = list(self.search.walk(self.once, self.twice, budget))
        cycles = self.catalog.cycles
        found = [
            Cdc(self.graph, tuple((c, 1) for c in self.fixed) + tuple((cycles[i], times) for i, times in walk))
            for walk in walks
        ]
        return sorted(found, key=lambda cdc: cdc.canonical_key)


def _checked(g: Graph, cdc: Cdc) -> Cdc:
    if not verify_cdc(g, cdc):
        raise ProofStepError('solver produced a cover that does not verify')
    return cdc


def min_cdc(
    g: Graph,
    true_only: bool = False,
    containing: Sequence[Cycle] = (),
    workers: int = 1,
    node_limit: Optional[int] = None,
) -> Optional[Tuple[int, Cdc]]:
    """
    Smallest CDC (or true CDC) of g, optionally among those containing the
    given cycles.

    The witness is the canonically least CDC of that size. Returns None
    when no such CDC exists, e.g. when g has a bridge.
    """
    if g.m == 0:
        return 0, Cdc(g, ())
    problem = _Problem(g, true_only, containing, node_limit, workers)
    if not problem.possible:
        return None
    if not problem.once:
        witness = _checked(g, Cdc.from_cycles(g, problem.fixed))
        return witness.size, witness
    low, high = problem.bounds()
    for budget in range(low, high + 1):
        if problem.feasible(budget):
            witness = _checked(g, problem.solutions(budget)[0])
            logger.info("%s: minimum %sCDC has size %d", g, 'true ' if true_only else '', witness.size)
            return witness.size, witness
    logger.info("%s: no %sCDC", g, 'true ' if true_only else '')
    return None


def count_cdcs(g: Graph, k: int, true_only: bool = False, workers: int = 1) -> int:
    """Number of k-CDCs (or true k-CDCs) of g."""
    if k < 0:
        raise ValidationError('k must be non-negative')
    if g.m == 0:
        return int(k == 0)
    problem = _Problem(g, true_only, (), None, workers)
    total = problem.count(k)
    logger.debug("%s: %d %sCDCs of size %d", g, total, 'true ' if true_only else '', k)
    return total


def enumerate_cdcs(g: Graph, max_size: int, true_only: bool = False, workers: int = 1) -> Iterator[Cdc]:
    """Every CDC of size at most max_size, by size and then canonical order."""
    if g.m == 0:
        yield Cdc(g, ())
        return
    problem = _Problem(g, true_only, (), None, workers)
    low, high = problem.bounds()
    for budget in range(low, min(max_size, high) + 1):
        if problem.feasible(budget):
            for cdc in problem.solutions(budget):
                yield _checked(g, cdc)


def compute_census(g: Graph, max_size: Optional[int] = None, workers: int = 1) -> CdcCensus:
    """
    Counts of k-CDCs and true k-CDCs for k up to max_size.

    Without max_size the census runs to the largest size any CDC can have
    (2m divided by the girth).
    """
    if g.m == 0:
        return CdcCensus(g, {0: (1, 1)})
    everything = _Problem(g, False, (), None, workers)
    true_only = _Problem(g, True, (), None, workers)
    low, high = everything.bounds()
    if max_size is not None:
        high = min(high, max_size)
    per_size = {}
    for k in range(low, high + 1):
        total = everything.count(k)
        if total:
            per_size[k] = (total, true_only.count(k))
    return CdcCensus(g, per_size)
