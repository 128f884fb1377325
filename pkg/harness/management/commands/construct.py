"""
Management command to run one of the constructive CDC builders.

Constructors:
    faces          face boundaries of a plane graph
    double-wheel   (n-2)-CDC of the double wheel        (--family double-wheel)
    antiprism      the three (n+2)-CDCs of an antiprism (--family antiprism)
    fcdcs          every f-CDC of a layered graph       (--family layered)
    cubic-half     n/2 bound for planar cubic graphs
    small-cdc      (n-1)-CDC through a Hamiltonian cycle of a planar 4-connected graph
    triangulation  piecewise CDC of a triangulation along separating triangles
    even-cover     three even subgraphs covering each edge twice, one being h

Usage: python manage.py construct --constructor cubic-half cubic10.g6
       python manage.py construct --constructor antiprism --family antiprism --k 5
"""
from typing import Any, Dict, Iterable

from django.core.exceptions import ValidationError

from constructions.antiprism import antiprism_three_cdcs, theorem2_enumerate_fcdcs
from constructions.cubic import cubic_planar_half_cdc
from constructions.elementary import double_wheel_cdc, face_boundary_cdc
from constructions.even_cover import hamiltonian_three_even_cover
from constructions.seyffarth import seyffarth_small_cdc
from constructions.triangulations import theorem3_cdc
from core.exceptions import NotApplicableError
from cycles.enumeration import enumerate_hamiltonian
from harness.command_base import HarnessCommand
from harness.ingest import embedding_for, read_embedding

FAMILY_CONSTRUCTORS = {'double-wheel': 'double-wheel', 'antiprism': 'antiprism', 'fcdcs': 'layered'}

CONSTRUCTORS = (
    'faces', 'double-wheel', 'antiprism', 'fcdcs', 'cubic-half', 'small-cdc', 'triangulation', 'even-cover',
)


class Command(HarnessCommand):
    help = 'Build CDCs with one of the constructive methods and print them with their case trace'

    def add_job_arguments(self, parser):
        parser.add_argument('--constructor', choices=CONSTRUCTORS, required=True, help='which construction to run')
        parser.add_argument('--embedding', type=str, help='embedding JSON for the (single) input graph')
        parser.add_argument('--vertex', type=int, help='small-cdc: vertex of degree 4 or 5 (default: first one)')
        parser.add_argument('--hamiltonian', type=int, default=0, help='index of the Hamiltonian cycle to use')
        parser.add_argument('--node-limit', type=int, help='node cap for bounded fallback searches')

    def run(self, job, records, options):
        name = options['constructor']
        family = FAMILY_CONSTRUCTORS.get(name)
        if family and job.family != family:
            raise ValidationError(f'constructor {name} works on --family {family}')
        if options.get('embedding'):
            if len(records) != 1:
                raise ValidationError('--embedding needs exactly one input graph')
            records = [read_embedding(options['embedding'], records[0])]

        for record in records:
            for payload in self.construct(name, job, record, options):
                yield {'graph': record.witness, 'constructor': name, **payload}

    def construct(self, name, job, record, options) -> Iterable[Dict[str, Any]]:
        g = record.graph
        if name == 'faces':
            yield face_boundary_cdc(embedding_for(record)).to_json(case_trace=['face boundaries'])
        elif name == 'double-wheel':
            yield double_wheel_cdc(job.params['n']).to_json(case_trace=['double wheel'])
        elif name == 'antiprism':
            for cdc in antiprism_three_cdcs(job.params['k']):
                yield cdc.to_json()
        elif name == 'fcdcs':
            for cdc in theorem2_enumerate_fcdcs(job.params['k'], job.params['layers']):
                yield cdc.to_json()
        elif name == 'cubic-half':
            yield cubic_planar_half_cdc(embedding_for(record)).to_json()
        elif name == 'triangulation':
            yield theorem3_cdc(embedding_for(record)).to_json()
        elif name == 'small-cdc':
            h = self.hamiltonian(record, options)
            v = options.get('vertex')
            if v is None:
                v = next((u for u in range(g.vertex_count) if g.degree(u) in (4, 5)), -1)
            built = seyffarth_small_cdc(embedding_for(record), h, v, node_limit=options.get('node_limit'))
            yield built.to_json()
        elif name == 'even-cover':
            h = self.hamiltonian(record, options)
            parts = hamiltonian_three_even_cover(g, h)
            yield {'even_subgraphs': [sorted(part.edge_set) for part in parts]}

    def hamiltonian(self, record, options):
        cycles = enumerate_hamiltonian(record.graph)
        if not cycles:
            raise NotApplicableError(f'{record.witness} has no Hamiltonian cycle')
        index = options.get('hamiltonian') or 0
        if not 0 <= index < len(cycles):
            raise ValidationError(f'--hamiltonian must be below {len(cycles)}')
        return cycles[index]
