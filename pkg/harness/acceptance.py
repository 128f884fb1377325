"""
Self-check suite: known values tying the constructors to the exact solver.

Each check returns a one-line detail on success and raises CheckFailed
otherwise. Checks marked slow (Petersen ≡ Petersen, the n = 14 antiprism,
every small-CDC triple) only run with full=True. Corpus files, when given,
add the graph-class sweeps: planar cubic 2-connected graphs with
6 <= n <= 14 and planar 4-connected graphs with 6 <= n <= 9. The
brute-force oracle sweeps the networkx graph atlas (n <= 7); full=True
raises its cycle cap.
"""
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Sequence, Tuple

import networkx as nx
from django.core.exceptions import ValidationError

from cdc.solver import compute_census, count_cdcs, min_cdc
from constructions.antiprism import partition_count, theorem2_enumerate_fcdcs, theorem2ii_bound
from constructions.cubic import cubic_planar_half_cdc, join_equiv
from constructions.families import (
    gen_antiprism, gen_complete, gen_cube, gen_double_wheel, gen_ladder, gen_octahedron, gen_petersen,
    gen_prism, gen_stacked_triangulation,
)
from constructions.seyffarth import seyffarth_small_cdc
from constructions.triangulations import glue_triangulations, theorem3_cdc, theorem3_upper_bound
from core.exceptions import CdcError
from cycles.enumeration import enumerate_cycles, enumerate_hamiltonian
from graphs.connectivity import bridges
from graphs.embedding import planar_embed
from graphs.formats import graph_from_networkx
from graphs.models import Cycle, Graph

from .models import GraphRecord
from .stats import (
    defect, is_cubic_two_connected, is_planar_four_connected, long_cycle_count, theorem1_instance_check,
)

logger = logging.getLogger(__name__)

# cycle-count caps for the brute-force sweep over small graphs
ORACLE_QUICK_CYCLES = 15
ORACLE_FULL_CYCLES = 24


class CheckFailed(Exception):
    pass


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def expect(condition: bool, message: str) -> None:
    if not condition:
        raise CheckFailed(message)


def brute_force_census(g: Graph) -> Dict[int, Tuple[int, int]]:
    """
    CDC counts by size from first principles: cycles are the connected
    2-regular edge subsets, and every cycle gets multiplicity 0, 1 or 2.
    """
    cycles = []
    for size in range(2, g.m + 1):
        for subset in itertools.combinations(range(g.m), size):
            try:
                cycles.append(Cycle(g, frozenset(subset)))
            except ValidationError:
                continue
    last_use = [-1] * g.m
    for index, cycle in enumerate(cycles):
        for edge_id in cycle.edge_set:
            last_use[edge_id] = index
    counts: Dict[int, List[int]] = {}
    coverage = [0] * g.m

    def place(index: int, size: int, doubled: bool) -> None:
        if any(coverage[e] < 2 and last_use[e] < index for e in range(g.m)):
            return
        if index == len(cycles):
            entry = counts.setdefault(size, [0, 0])
            entry[0] += 1
            entry[1] += not doubled
            return
        edges = cycles[index].edge_set
        for multiplicity in (0, 1, 2):
            if multiplicity and any(coverage[e] + multiplicity > 2 for e in edges):
                break
            for e in edges:
                coverage[e] += multiplicity
            place(index + 1, size + multiplicity, doubled or multiplicity == 2)
            for e in edges:
                coverage[e] -= multiplicity

    if g.m:
        place(0, 0, False)
    return {size: (total, true_count) for size, (total, true_count) in sorted(counts.items())}


def partitions_by_table(r: int) -> int:
    table = [1] + [0] * r
    for part in range(1, r + 1):
        for total in range(part, r + 1):
            table[total] += table[total - part]
    return table[r]


def check_antiprism_counts() -> str:
    for k in (3, 4, 5):
        g = gen_antiprism(k).graph
        n = g.vertex_count
        expect(count_cdcs(g, n + 2) == 3, f'antiprism n={n}: not three (n+2)-CDCs')
        expect(count_cdcs(g, n + 2, true_only=True) == 1, f'antiprism n={n}: not one true (n+2)-CDC')
        expect(count_cdcs(g, n + 3) == 0, f'antiprism n={n}: an (n+3)-CDC exists')
    fcdcs = theorem2_enumerate_fcdcs(4, 3)
    expect(len(fcdcs) == 6, f'(4,3) layered graph: {len(fcdcs)} f-CDCs, expected 6')
    expect(sum(cdc.is_true for cdc in fcdcs) == 1, '(4,3) layered graph: not exactly one true f-CDC')
    return 'antiprisms n=6,8,10 have 3 (n+2)-CDCs, 1 true, none of size n+3; (4,3) has 6 f-CDCs'


def check_minimum_sizes() -> str:
    expected = [('K4', gen_complete(4), 3), ('Petersen', gen_petersen(), 5), ('cube', gen_cube(), 4)]
    expected += [(f'ladder({n})', gen_ladder(n), n // 2) for n in (6, 8)]
    for name, g, size in expected:
        found = min_cdc(g)[0]
        expect(found == size, f'c({name}) = {found}, expected {size}')
    # tabulated as n/2; a ring exchange at a cap face gives 4
    diverging = {n: min_cdc(gen_ladder(n))[0] for n in (10, 12)}
    expect(diverging == {10: 4, 12: 4}, f'ladder sizes {diverging}, expected 4 for n = 10 and 12')
    return ('K4=3, Petersen=5, cube=4, ladder(6)=3, ladder(8)=4; '
            'ladder(10)=ladder(12)=4, below the tabulated n/2')


def check_small_join() -> str:
    joined = join_equiv(gen_complete(4), 0, gen_complete(4), 0).joined
    expect(min_cdc(joined)[0] == 3, 'c(K4 ≡ K4) is not 3')
    return 'c(K4 ≡ K4) = 3'


def check_petersen_join() -> str:
    joined = join_equiv(gen_petersen(), 0, gen_petersen(), 0).joined
    expect(min_cdc(joined)[0] == 7, 'c(Petersen ≡ Petersen) is not 7')
    return 'c(Petersen ≡ Petersen) = 7'


def _cubic_half(g: Graph, exact_up_to: int) -> None:
    built = cubic_planar_half_cdc(planar_embed(g))
    n = g.vertex_count
    expect(built.size <= n // 2, f'{g}: constructed size {built.size} > n/2')
    if n <= exact_up_to:
        expect(built.size >= min_cdc(g)[0], f'{g}: constructed CDC smaller than the minimum')


def check_cubic_half(graphs: Sequence[Graph] = ()) -> str:
    graphs = list(graphs) or [gen_prism(k) for k in (3, 4, 5, 6, 7)]
    for g in graphs:
        _cubic_half(g, exact_up_to=10)
    return f'{len(graphs)} planar cubic graphs have a verified (n/2)⁻-CDC'


def check_hamiltonian_inequality(graphs: Sequence[Graph] = ()) -> str:
    graphs = list(graphs) or [gen_octahedron(), gen_double_wheel(7), gen_double_wheel(8)]
    for g in graphs:
        total, hamiltonian, holds = theorem1_instance_check(g)
        expect(holds, f'{g}: {total} (n-1)⁻-CDCs but {hamiltonian} Hamiltonian cycles')
    return f'{len(graphs)} planar 4-connected graphs satisfy 22·Σc(k) >= h'


def check_small_cdc_triples(graphs: Sequence[Graph] = ()) -> str:
    graphs = list(graphs) or [gen_octahedron(), gen_double_wheel(7)]
    triples = 0
    for g in graphs:
        e = planar_embed(g)
        n = g.vertex_count
        for h in enumerate_hamiltonian(g):
            for v in range(n):
                if g.degree(v) not in (4, 5):
                    continue
                built = seyffarth_small_cdc(e, h, v)
                expect(built.size <= n - 1, f'{g}: size {built.size} > n-1')
                expect(long_cycle_count(built.cdc) <= 11, f'{g}: more than 11 long cycles')
                triples += 1
    return f'{triples} (graph, h, v) triples give verified (n-1)⁻-CDCs'


def check_true_small_cdcs(graphs: Sequence[Graph] = ()) -> str:
    graphs = list(graphs) or [gen_octahedron(), gen_double_wheel(7), gen_double_wheel(8)]
    for g in graphs:
        result = min_cdc(g, true_only=True)
        expect(result is not None and result[0] <= g.vertex_count - 2, f'{g}: no true (n-2)⁻-CDC')
    return f'{len(graphs)} planar 4-connected graphs have a true (n-2)⁻-CDC'


def check_partitions() -> str:
    for r in range(21):
        expect(partition_count(r) == partitions_by_table(r), f'p({r}) disagrees with the table')
    return 'p(r) matches the partition table for r <= 20'


def check_antiprism_bound() -> str:
    g = gen_antiprism(7).graph
    found = count_cdcs(g, 15)
    bound = theorem2ii_bound(14, 1)
    expect(found <= bound, f'{found} 15-CDCs of the n=14 antiprism exceed the bound {bound:.3g}')
    return f'{found} 15-CDCs of the n=14 antiprism <= {bound:.3g}'


def _glued(left: Graph, left_triangle: Sequence[int], right: Graph, right_triangle: Sequence[int]) -> Graph:
    return glue_triangulations(left, left_triangle, right, right_triangle).glued


def check_triangulations() -> str:
    for steps in range(1, 6):
        e = planar_embed(gen_stacked_triangulation(steps))
        built = theorem3_cdc(e)
        bound = theorem3_upper_bound(e)
        expect(built.size <= bound, f'stacked({steps}): merged size {built.size} > {bound}')
        expect(min_cdc(e.graph)[0] <= bound, f'stacked({steps}): c(T) > {bound}')
    octahedron = gen_octahedron()
    composites = [
        ('octahedron+octahedron', _glued(octahedron, (0, 1, 2), octahedron, (0, 1, 2)), 8),
        ('octahedron+double-wheel(7)', _glued(octahedron, (0, 1, 2), gen_double_wheel(7), (0, 1, 5)), 9),
        ('octahedron+K4+octahedron',
         _glued(_glued(octahedron, (0, 1, 2), gen_complete(4), (0, 1, 2)), (0, 1, 6), octahedron, (0, 1, 2)), 11),
    ]
    for name, g, expected_bound in composites:
        e = planar_embed(g)
        built = theorem3_cdc(e)
        bound = theorem3_upper_bound(e)
        expect(bound == expected_bound, f'{name}: piece bound {bound}, expected {expected_bound}')
        expect(built.size <= bound, f'{name}: merged size {built.size} > {bound}')
    return (f'stacked triangulations with 1..5 steps and {len(composites)} composites with '
            '4-connected pieces merge within the piece bound')


def oracle_graphs(max_cycles: int) -> List[Graph]:
    """Connected bridgeless graphs on at most seven vertices with at most max_cycles cycles."""
    graphs = []
    for nx_graph in nx.graph_atlas_g():
        if nx_graph.number_of_edges() < 3 or not nx.is_connected(nx_graph):
            continue
        g = graph_from_networkx(nx_graph)
        if bridges(g) or len(enumerate_cycles(g)) > max_cycles:
            continue
        graphs.append(g)
    return graphs


def check_oracle(full: bool = False) -> str:
    graphs = oracle_graphs(ORACLE_FULL_CYCLES if full else ORACLE_QUICK_CYCLES)
    if full:
        graphs.append(gen_complete(5))
    for g in graphs:
        census = compute_census(g)
        brute = brute_force_census(g)
        solver = {size: counts for size, counts in census.per_size.items() if counts[0]}
        expect(solver == brute, f'{g}: solver census {solver} differs from brute force {brute}')
        if g.is_cubic:
            bound = g.vertex_count // 2 + 2
            expect(census.min_size <= bound, f'{g}: c(G) > n/2 + 2')
            expect(census.min_true_size <= bound, f'{g}: no true CDC of size at most n/2 + 2')
    return f'{len(graphs)} bridgeless graphs on at most 7 vertices: solver census equals brute force'


def check_defects() -> str:
    expected = [('cube', gen_cube(), Fraction(1)), ('Petersen', gen_petersen(), Fraction(5, 3)),
                ('K4', gen_complete(4), Fraction(0))]
    for name, g, value in expected:
        found = defect(g)
        expect(found == value, f'd({name}) = {found}, expected {value}')
    return 'd(cube)=1, d(Petersen)=5/3, d(K4)=0'


@dataclass(frozen=True)
class Check:
    name: str
    run: Callable[[], str]
    slow: bool = False


def build_checks(corpus: Iterable[GraphRecord] = (), full: bool = False) -> List[Check]:
    corpus = list(corpus)
    cubic = [r.graph for r in corpus if 6 <= r.graph.vertex_count <= 14 and is_cubic_two_connected(r.graph)
             and planar_embed(r.graph) is not None]
    four_connected = [r.graph for r in corpus if 6 <= r.graph.vertex_count <= 9 and is_planar_four_connected(r.graph)]
    return [
        Check('antiprism counts', check_antiprism_counts),
        Check('minimum CDC sizes', check_minimum_sizes),
        Check('K4 join', check_small_join),
        Check('Petersen join', check_petersen_join, slow=True),
        Check('cubic half bound', lambda: check_cubic_half(cubic)),
        Check('Hamiltonian inequality', lambda: check_hamiltonian_inequality(four_connected)),
        Check('small CDC triples', lambda: check_small_cdc_triples(four_connected), slow=True),
        Check('true small CDCs', lambda: check_true_small_cdcs([g for g in four_connected if g.vertex_count <= 8])),
        Check('partition numbers', check_partitions),
        Check('antiprism bound n=14', check_antiprism_bound, slow=True),
        Check('triangulation merging', check_triangulations),
        Check('brute-force oracle', lambda: check_oracle(full)),
        Check('defects', check_defects),
    ]


def run_checks(corpus: Iterable[GraphRecord] = (), full: bool = False) -> List[CheckResult]:
    results = []
    for check in build_checks(corpus, full):
        if check.slow and not full:
            results.append(CheckResult(check.name, True, 'skipped (slow; use --full)'))
            continue
        logger.info("running check: %s", check.name)
        try:
            results.append(CheckResult(check.name, True, check.run()))
        except (CheckFailed, CdcError, ValidationError) as exc:
            logger.warning("check %s failed: %s", check.name, exc)
            results.append(CheckResult(check.name, False, str(exc)))
    return results
