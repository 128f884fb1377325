"""
Management command to generate a member of a named graph family.

Writes the graph as one graph6/sparse6 line and, for planar graphs, its
embedding as JSON with edges numbered the way the line decodes.

Usage: python manage.py gen antiprism --k 4 [--output g.g6] [--embedding-output g.json]
"""

from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from core.exceptions import CdcError
from core.utils import dump_json
from graphs.embedding import planar_embed
from graphs.formats import embedding_to_json, graph_to_line, sorted_embedding
from harness.ingest import FAMILIES, build_family


class Command(BaseCommand):
    help = 'Generate a graph family member as graph6/sparse6 plus embedding JSON'

    def add_arguments(self, parser):
        parser.add_argument('family', choices=sorted(FAMILIES), help='family name')
        parser.add_argument('--k', type=int, help='family parameter k')
        parser.add_argument('--n', type=int, help='family parameter n')
        parser.add_argument('--layers', type=int, help='family parameter: number of layers')
        parser.add_argument('--steps', type=int, help='family parameter: stacking steps')
        parser.add_argument('--t', type=int, help='family parameter: chain length')
        parser.add_argument('--output', type=str, help='write the graph line to this file')
        parser.add_argument('--embedding-output', type=str, help='write the embedding JSON to this file')

    def handle(self, *args, **options):
        params = {
            name: options[name] for name in ('k', 'n', 'layers', 'steps', 't') if options.get(name) is not None
        }
        try:
            record = build_family(options['family'], params)
            embedding = record.embedding or planar_embed(record.graph)
        except (ValidationError, CdcError) as exc:
            message = '; '.join(exc.messages) if isinstance(exc, ValidationError) else str(exc)
            raise CommandError(f'gen: {message}')

        if embedding is None:
            line, embedding_json = graph_to_line(record.graph), None
            self.stderr.write(self.style.WARNING(f'{record.witness} is not planar; no embedding written'))
        else:
            embedding = sorted_embedding(embedding)
            line, embedding_json = graph_to_line(embedding.graph), dump_json(embedding_to_json(embedding))

        if options.get('output'):
            with open(options['output'], 'w') as handle:
                handle.write(line + '\n')
        else:
            self.stdout.write(line)

        if embedding_json is not None:
            if options.get('embedding_output'):
                with open(options['embedding_output'], 'w') as handle:
                    handle.write(embedding_json + '\n')
            else:
                self.stdout.write(embedding_json)

        self.stderr.write(self.style.SUCCESS(
            f'{record.witness}: n={record.graph.vertex_count}, m={record.graph.m}'
        ))
