# graphs/formats.py
"""graph6 / sparse6 codecs (through networkx) and the embedding JSON schema."""
from typing import Any, Dict, List, Union

import networkx as nx
from django.core.exceptions import ValidationError

from .models import Graph, PlaneEmbedding

GRAPH6_HEADER = '>>graph6<<'
SPARSE6_HEADER = '>>sparse6<<'


def graph_from_networkx(nx_graph) -> Graph:
    """Relabel nodes 0..n-1 in sorted order; edge ids follow sorted endpoint pairs."""
    nodes = sorted(nx_graph.nodes())
    index = {node: position for position, node in enumerate(nodes)}
    pairs = sorted(
        (min(index[u], index[v]), max(index[u], index[v])) for u, v in nx_graph.edges()
    )
    return Graph(len(nodes), tuple(pairs), loop_allowed=any(u == v for u, v in pairs))


def parse_graph_line(line: Union[str, bytes]) -> Graph:
    """
    Decode one graph6 or sparse6 line (optional header allowed).

    Raises:
        ValidationError: the line is not a valid encoding
    """
    text = line.decode('ascii') if isinstance(line, bytes) else line
    text = text.strip()
    if not text:
        raise ValidationError('empty graph line')
    try:
        if text.startswith(SPARSE6_HEADER) or text.startswith(':'):
            nx_graph = nx.from_sparse6_bytes(text.encode('ascii'))
        else:
            nx_graph = nx.from_graph6_bytes(text.encode('ascii'))
    except (nx.NetworkXError, ValueError, IndexError) as exc:
        raise ValidationError(f'cannot decode {text[:20]!r}: {exc}') from exc
    return graph_from_networkx(nx_graph)


def graph_to_graph6(g: Graph) -> str:
    if not g.is_simple:
        raise ValidationError('graph6 encodes simple graphs only; use sparse6')
    return nx.to_graph6_bytes(g.to_simple_networkx(), header=False).decode('ascii').strip()


def graph_to_sparse6(g: Graph) -> str:
    return nx.to_sparse6_bytes(g.to_networkx(), header=False).decode('ascii').strip()


def graph_to_line(g: Graph) -> str:
    """graph6 for simple graphs, sparse6 otherwise."""
    return graph_to_graph6(g) if g.is_simple else graph_to_sparse6(g)


def embedding_to_json(e: PlaneEmbedding) -> Dict[str, Any]:
    return {
        'n': e.graph.vertex_count,
        'edges': [list(pair) for pair in e.graph.edges],
        'rotation': [[list(end) for end in ends] for ends in e.rotation],
    }


def embedding_from_json(payload: Dict[str, Any]) -> PlaneEmbedding:
    try:
        graph = Graph(int(payload['n']), tuple(tuple(pair) for pair in payload['edges']))
        rotation = tuple(tuple(tuple(end) for end in ends) for ends in payload['rotation'])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f'malformed embedding JSON: {exc}') from exc
    return PlaneEmbedding(graph, rotation)


def sorted_embedding(e: PlaneEmbedding) -> PlaneEmbedding:
    """
    Same embedding with edges renumbered in sorted endpoint order.

    This is the order in which graph6/sparse6 decoding numbers edges, so an
    embedding written next to a graph line matches the graph read back.
    """
    g = e.graph
    order = sorted(range(g.m), key=lambda edge_id: (min(g.edges[edge_id]), max(g.edges[edge_id]), edge_id))
    new_id = {old: new for new, old in enumerate(order)}
    edges = []
    flipped = set()
    for old in order:
        u, v = g.edges[old]
        if u > v:
            flipped.add(old)
        edges.append((min(u, v), max(u, v)))
    graph = Graph(g.vertex_count, tuple(edges), g.loop_allowed)
    rotation = tuple(
        tuple((new_id[edge_id], 1 - side if edge_id in flipped else side) for edge_id, side in ends)
        for ends in e.rotation
    )
    return PlaneEmbedding(graph, rotation)


def read_graph_file(path) -> List[Graph]:
    """
    Every graph in a graph6/sparse6 file, in file order.

    Blank lines are skipped; a bad line raises ValidationError naming its
    line number.
    """
    graphs = []
    with open(path, 'rb') as handle:
        for number, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                graphs.append(parse_graph_line(line))
            except ValidationError as exc:
                raise ValidationError(f'line {number}: {exc.messages[0]}') from exc
    return graphs
