"""
Reading graphs into harness jobs.

Graphs come from graph6/sparse6 files (one graph per line) or from a named
family generator. File lines are checked one at a time and collected with
their errors, so a bad line can either stop the job or be skipped with a
warning.
"""
import json
import logging
import os
import re
from typing import Any, Callable, Dict, List, Optional, Tuple

from django.core.exceptions import ValidationError

from constructions.cubic import petersen_chain
from constructions.families import (
    gen_antiprism, gen_complete, gen_cube, gen_cycle, gen_double_wheel, gen_icosahedron, gen_ladder,
    gen_octahedron, gen_petersen, gen_prism, gen_stacked_triangulation, gen_theorem2_graph,
)
from core.exceptions import NotPlanarError, StructureError
from graphs.embedding import planar_embed
from graphs.formats import embedding_from_json, parse_graph_line
from graphs.models import Graph, PlaneEmbedding

from .models import GraphRecord, JobSpec

logger = logging.getLogger(__name__)

Built = Tuple[Graph, Optional[PlaneEmbedding]]


def _with_embedding(g: Graph) -> Built:
    return g, None


def _antiprism(k: int) -> Built:
    layout = gen_antiprism(k)
    return layout.graph, layout.embedding


# name -> (builder, parameter names in call order)
FAMILIES: Dict[str, Tuple[Callable[..., Built], Tuple[str, ...]]] = {
    'antiprism': (_antiprism, ('k',)),
    'layered': (lambda k, layers: gen_theorem2_graph(k, layers), ('k', 'layers')),
    'double-wheel': (lambda n: _with_embedding(gen_double_wheel(n)), ('n',)),
    'prism': (lambda k: _with_embedding(gen_prism(k)), ('k',)),
    'ladder': (lambda n: _with_embedding(gen_ladder(n)), ('n',)),
    'cube': (lambda: _with_embedding(gen_cube()), ()),
    'petersen': (lambda: _with_embedding(gen_petersen()), ()),
    'icosahedron': (lambda: _with_embedding(gen_icosahedron()), ()),
    'octahedron': (lambda: _with_embedding(gen_octahedron()), ()),
    'complete': (lambda n: _with_embedding(gen_complete(n)), ('n',)),
    'cycle': (lambda n: _with_embedding(gen_cycle(n)), ('n',)),
    'stacked': (lambda steps: _with_embedding(gen_stacked_triangulation(steps)), ('steps',)),
    'petersen-chain': (lambda t: _with_embedding(petersen_chain(t)), ('t',)),
}

SIZE_PATTERN = re.compile(r'^\s*(?:(n)\s*([+-])\s*)?(\d+)\s*$|^\s*n\s*$')


def parse_size(expression: str, n: int) -> int:
    """
    Evaluate a size argument: a plain integer, 'n', 'n+c' or 'n-c'.

    Raises:
        ValidationError: unreadable expression or a negative result
    """
    text = str(expression).strip()
    match = SIZE_PATTERN.match(text)
    if not match:
        raise ValidationError(f'cannot read size {expression!r}; use an integer, n, n+c or n-c')
    if match.group(3) is None:
        value = n
    elif match.group(1) is None:
        value = int(match.group(3))
    else:
        offset = int(match.group(3))
        value = n + offset if match.group(2) == '+' else n - offset
    if value < 0:
        raise ValidationError(f'size {expression!r} is negative for n = {n}')
    return value


def build_family(name: str, params: Dict[str, int]) -> GraphRecord:
    """Generate one member of a named family; the witness spells out the parameters."""
    if name not in FAMILIES:
        raise ValidationError(f'unknown family {name!r}; choose from {", ".join(sorted(FAMILIES))}')
    builder, names = FAMILIES[name]
    missing = [key for key in names if params.get(key) is None]
    if missing:
        raise ValidationError(f'family {name} needs --{" --".join(missing)}')
    values = [int(params[key]) for key in names]
    graph, embedding = builder(*values)
    label = ','.join(f'{key}={value}' for key, value in zip(names, values))
    return GraphRecord(witness=f'{name}({label})', graph=graph, embedding=embedding)


def _process_line(line: bytes, line_num: int, source: str) -> Dict[str, Any]:
    data = {
        'line_num': line_num,
        'witness': f'{source}:{line_num}',
        'graph': None,
        'errors': [],
        'valid': True,
    }
    try:
        data['graph'] = parse_graph_line(line)
    except ValidationError as exc:
        data['errors'].extend(exc.messages)
        data['valid'] = False
    return data


def scan_graph_file(path: str) -> List[Dict[str, Any]]:
    """Every non-blank line of a graph file, parsed or carrying its errors."""
    rows = []
    source = os.path.basename(path)
    try:
        with open(path, 'rb') as handle:
            for line_num, line in enumerate(handle, start=1):
                if line.strip():
                    rows.append(_process_line(line, line_num, source))
    except OSError as exc:
        raise ValidationError(f'cannot read {path}: {exc.strerror}') from exc
    return rows


def load_graphs(job: JobSpec, strict: bool = True) -> List[GraphRecord]:
    """
    The graphs a job works on, in input order.

    With strict=False unreadable lines are logged and skipped; otherwise the
    first one raises ValidationError naming the file and line.
    """
    if job.family:
        return [build_family(job.family, job.params)]
    records = []
    for path in job.inputs:
        for row in scan_graph_file(path):
            if not row['valid']:
                message = f'{row["witness"]}: {"; ".join(row["errors"])}'
                if strict:
                    raise ValidationError(message)
                logger.warning("skipping %s", message)
                continue
            records.append(GraphRecord(witness=row['witness'], graph=row['graph']))
    logger.info("%s: %d graphs loaded", job.subcommand, len(records))
    return records


def read_embedding(path: str, record: GraphRecord) -> GraphRecord:
    """Attach the embedding stored in a JSON file; it must be of the record's graph."""
    try:
        with open(path) as handle:
            payload = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f'cannot read embedding {path}: {exc}') from exc
    embedding = embedding_from_json(payload)
    if embedding.graph != record.graph:
        raise StructureError(f'embedding in {path} is not of {record.witness}')
    return GraphRecord(record.witness, record.graph, embedding)


def embedding_for(record: GraphRecord) -> PlaneEmbedding:
    if record.embedding is not None:
        return record.embedding
    embedding = planar_embed(record.graph)
    if embedding is None:
        raise NotPlanarError(f'{record.witness} is not planar')
    return embedding
