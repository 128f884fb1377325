# constructions/cubic.py
"""
Cubic graphs: the 3-edge-cut join, merging CDCs across it, and CDCs of
size at most n/2 for 2-connected planar cubic graphs.
"""
import logging
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from django.core.exceptions import ValidationError

from cdc.models import Cdc
from cdc.verification import verify_cdc
from core.exceptions import NotApplicableError, NotPlanarError, ProofStepError, StructureError
from graphs.connectivity import (
    components_without,
    nontrivial_three_edge_cuts,
    three_edge_cut_sides,
    two_edge_cuts,
    vertex_connectivity_at_least,
)
from graphs.embedding import dual, induced_embedding, planar_embed
from graphs.models import Cycle, Graph, PlaneEmbedding

from .elementary import face_boundary_cdc
from .families import gen_petersen
from .models import CubicJoin, ConstructedCdc
from .rings import exchange_ring, find_ring

logger = logging.getLogger(__name__)


def _ends_at(g: Graph, vertex: int) -> Tuple[int, ...]:
    ends = tuple(sorted(edge_id for edge_id, _ in g.incidence[vertex]))
    if len(set(ends)) != 3:
        raise StructureError(f'vertex {vertex} does not carry three distinct edges')
    return ends


def join_equiv(
    g: Graph, x: int, h: Graph, y: int, matching: Optional[Sequence[Tuple[int, int]]] = None
) -> CubicJoin:
    """
    G ≡ H: delete x from g and y from h and join the dangling edges.

    matching lists (edge at x, edge at y) pairs; by default the edges are
    paired in increasing id order. Vertices of g - x come first in the
    joined graph, then those of h - y.
    """
    if not g.is_cubic or not h.is_cubic:
        raise StructureError('the 3-cut join needs two cubic graphs')
    if not 0 <= x < g.vertex_count or not 0 <= y < h.vertex_count:
        raise ValidationError('join vertex out of range')
    g_ends, h_ends = _ends_at(g, x), _ends_at(h, y)
    if matching is None:
        matching = list(zip(g_ends, h_ends))
    matching = [(int(a), int(b)) for a, b in matching]
    if sorted(a for a, _ in matching) != list(g_ends) or sorted(b for _, b in matching) != list(h_ends):
        raise ValidationError('matching must pair the edges at x with the edges at y')

    g_vertices = {v: i for i, v in enumerate(w for w in range(g.vertex_count) if w != x)}
    offset = g.vertex_count - 1
    h_vertices = {v: offset + i for i, v in enumerate(w for w in range(h.vertex_count) if w != y)}
    edges: List[Tuple[int, int]] = []
    left_edges: Dict[int, int] = {}
    right_edges: Dict[int, int] = {}
    for edge_id, (u, v) in enumerate(g.edges):
        if x not in (u, v):
            left_edges[edge_id] = len(edges)
            edges.append((g_vertices[u], g_vertices[v]))
    for edge_id, (u, v) in enumerate(h.edges):
        if y not in (u, v):
            right_edges[edge_id] = len(edges)
            edges.append((h_vertices[u], h_vertices[v]))
    cut = []
    for a, b in matching:
        cut.append(len(edges))
        edges.append((g_vertices[g.other_end(a, x)], h_vertices[h.other_end(b, y)]))
    joined = Graph(offset + h.vertex_count - 1, tuple(edges))
    return CubicJoin(
        joined=joined,
        left=g,
        left_vertex=x,
        right=h,
        right_vertex=y,
        cut=tuple(cut),
        left_cut=tuple(a for a, _ in matching),
        right_cut=tuple(b for _, b in matching),
        left_edges=left_edges,
        right_edges=right_edges,
    )


def _contract_side(g: Graph, side: FrozenSet[int], cut: Sequence[int]):
    order = sorted(side)
    vertex_map = {v: i for i, v in enumerate(order)}
    x = len(order)
    edges: List[Tuple[int, int]] = []
    edge_map: Dict[int, int] = {}
    for edge_id, (u, v) in enumerate(g.edges):
        if u in side and v in side:
            edge_map[len(edges)] = edge_id
            edges.append((vertex_map[u], vertex_map[v]))
    ends = []
    for edge_id in cut:
        u, v = g.edges[edge_id]
        ends.append(len(edges))
        edges.append((vertex_map[u if u in side else v], x))
    return Graph(x + 1, tuple(edges)), x, tuple(ends), edge_map


def split_cubic_three_cut(g: Graph, cut: Sequence[int]) -> CubicJoin:
    """
    Inverse of join_equiv: contract each side of a 3-edge-cut to a single
    new vertex (the last vertex of each side graph).
    """
    if not g.is_cubic:
        raise StructureError('split_cubic_three_cut needs a cubic graph')
    cut = tuple(int(e) for e in cut)
    left_side, right_side = three_edge_cut_sides(g, cut)
    left, x, left_cut, left_edges = _contract_side(g, left_side, cut)
    right, y, right_cut, right_edges = _contract_side(g, right_side, cut)
    return CubicJoin(g, left, x, right, y, cut, left_cut, right_cut, left_edges, right_edges)


def _cycles_at_removed_vertex(cdc: Cdc, ends: Sequence[int], edge_map: Dict[int, int]):
    by_pair: Dict[Tuple[int, int], FrozenSet[int]] = {}
    others: List[FrozenSet[int]] = []
    for cycle in cdc.cycles:
        at = tuple(i for i, edge_id in enumerate(ends) if edge_id in cycle.edge_set)
        mapped = frozenset(edge_map[edge_id] for edge_id in cycle.edge_set if edge_id not in ends)
        if not at:
            others.append(mapped)
        elif len(at) == 2 and at not in by_pair:
            by_pair[at] = mapped
        else:
            raise ProofStepError('cycles at the removed vertex do not use each edge pair once')
    if len(by_pair) != 3:
        raise ProofStepError('expected three cycles through the removed vertex')
    return by_pair, others


def merge_cubic_dual_cdcs(c1: Cdc, c2: Cdc, join: CubicJoin) -> Cdc:
    """
    CDC of join.joined of size |c1| + |c2| - 3.

    Exactly three cycles of each cover pass the removed vertex, one per pair
    of its edges; the two cycles using the same pair are glued along the
    matching cut edges.
    """
    if c1.parent != join.left or c2.parent != join.right:
        raise StructureError('CDCs do not belong to the two sides of the join')
    left_pairs, left_rest = _cycles_at_removed_vertex(c1, join.left_cut, join.left_edges)
    right_pairs, right_rest = _cycles_at_removed_vertex(c2, join.right_cut, join.right_edges)
    g = join.joined
    edge_sets = left_rest + right_rest
    for (i, j), left_part in sorted(left_pairs.items()):
        edge_sets.append(left_part | right_pairs[(i, j)] | {join.cut[i], join.cut[j]})
    try:
        merged = Cdc.from_cycles(g, (Cycle(g, edge_set) for edge_set in edge_sets))
    except ValidationError as exc:
        raise ProofStepError(f'gluing across the cut did not give cycles: {exc.messages[0]}') from exc
    if not verify_cdc(g, merged):
        raise ProofStepError('merged cover does not verify')
    return merged


def petersen_chain(t: int) -> Graph:
    """t copies of the Petersen graph joined one after another by ≡."""
    if t < 1:
        raise ValidationError('a Petersen chain needs t >= 1')
    petersen = gen_petersen()
    chain = petersen
    for _ in range(t - 1):
        chain = join_equiv(chain, chain.vertex_count - 1, petersen, 0).joined
    return chain


def _ring_cover(e: PlaneEmbedding) -> Tuple[Cdc, str]:
    """Face CDC with one ring exchanged, at the longest face that carries a ring."""
    faces = sorted(range(len(e.faces)), key=lambda f: (-e.faces[f].length, f))
    for face in faces:
        try:
            ring = find_ring(e, face)
        except NotApplicableError:
            continue
        return exchange_ring(face_boundary_cdc(e), ring), f'{ring.kind} exchange at face {face}'
    raise ProofStepError('no face of a graph with 4-connected dual carries a ring')


def _dual_is_four_connected(e: PlaneEmbedding) -> bool:
    dual_graph, _, _ = dual(e)
    return vertex_connectivity_at_least(dual_graph, 4)


def _disjoint_triangles(e: PlaneEmbedding) -> List[int]:
    """
    Triangle faces, greedily chosen pairwise vertex-disjoint, each bordered
    by three distinct faces.
    """
    chosen: List[int] = []
    used: Set[int] = set()
    for face, walk in enumerate(e.faces):
        if walk.length != 3 or used & set(walk.vertices):
            continue
        around = {e.dart_face[(edge_id, 1 - side)] for edge_id, side in walk.darts}
        if len(around) != 3:
            continue
        chosen.append(face)
        used |= set(walk.vertices)
    return chosen


def _triangle_cover(e: PlaneEmbedding, triangles: Sequence[int]) -> Cdc:
    g = e.graph
    current = {face: walk.edge_set for face, walk in enumerate(e.faces)}
    for triangle in triangles:
        edges = e.faces[triangle].edge_set
        for neighbour in {e.dart_face[(edge_id, 1 - side)] for edge_id, side in e.faces[triangle].darts}:
            current[neighbour] = current[neighbour] ^ edges
        del current[triangle]
    try:
        return Cdc.from_cycles(g, (Cycle(g, edge_set) for _, edge_set in sorted(current.items())))
    except ValidationError as exc:
        raise ProofStepError(f'rerouting around triangles did not give cycles: {exc.messages[0]}') from exc


def _leaf_split(e: PlaneEmbedding):
    """Smallest non-triangle side of a 3-edge-cut whose contraction has a 4-connected dual."""
    g = e.graph
    candidates = []
    for cut in nontrivial_three_edge_cuts(g):
        left, right = three_edge_cut_sides(g, cut)
        for position, side in enumerate((left, right)):
            if len(side) > 3:
                candidates.append((len(side), cut, position))
    for _, cut, position in sorted(candidates):
        join = split_cubic_three_cut(g, cut)
        piece = join.left if position == 0 else join.right
        piece_embedding = planar_embed(piece)
        if piece_embedding is not None and _dual_is_four_connected(piece_embedding):
            return join, position, piece_embedding
    return None


def _split_cover(join: CubicJoin, position: int, piece_embedding: PlaneEmbedding) -> Tuple[Cdc, str]:
    ring_cdc, step = _ring_cover(piece_embedding)
    other = join.right if position == 0 else join.left
    other_embedding = planar_embed(other)
    if other_embedding is None:
        raise ProofStepError('side of a planar cut is not planar')
    face_cdc = face_boundary_cdc(other_embedding)
    pair = (ring_cdc, face_cdc) if position == 0 else (face_cdc, ring_cdc)
    return merge_cubic_dual_cdcs(pair[0], pair[1], join), f'split at 3-cut {list(join.cut)}; piece: {step}'


def _two_cut_cover(e: PlaneEmbedding, trace: List[str]) -> Optional[Cdc]:
    """Try every 2-edge-cut and orientation, smallest patch side first."""
    g = e.graph
    candidates = []
    for a, b in two_edge_cuts(g):
        parts = components_without(g, (a, b))
        if len(parts) != 2:
            continue
        first, second = parts
        candidates.append((len(second), a, b, first, second))
        candidates.append((len(first), a, b, second, first))
    candidates.sort(key=lambda c: (c[0], c[1], c[2], min(c[3])))
    for _, a, b, keep, patch in candidates:
        cover = _bridge_patch(e, a, b, keep, patch, trace)
        if cover is not None:
            return cover
    return None


def _bridge_patch(e, a, b, keep, patch, trace) -> Optional[Cdc]:
    """
    Recurse on H = K + vw, where K is the kept side and v, w are the ends
    of the cut edges in K. The two cycles of H through vw are rerouted
    along the two halves of the patch side's outer face, and the bounded
    faces of the patch side are added.
    """
    g = e.graph
    v, v_out = (g.edges[a] if g.edges[a][0] in keep else g.edges[a][::-1])
    w, w_out = (g.edges[b] if g.edges[b][0] in keep else g.edges[b][::-1])
    if v == w or v_out == w_out or g.edges_between(v, w) or len(keep) < 6:
        return None

    order = sorted(keep)
    k_vertices = {old: new for new, old in enumerate(order)}
    h_edges: List[Tuple[int, int]] = []
    h_origin: List[Optional[int]] = []
    for edge_id, (x, y) in enumerate(g.edges):
        if x in keep and y in keep:
            h_edges.append((k_vertices[x], k_vertices[y]))
            h_origin.append(edge_id)
    shortcut = len(h_edges)
    h_edges.append((k_vertices[v], k_vertices[w]))
    h_origin.append(None)
    h = Graph(len(order), tuple(h_edges))
    if not vertex_connectivity_at_least(h, 2):
        return None
    try:
        patch_embedding, patch_vertices, patch_edges = induced_embedding(e, patch)
    except NotPlanarError:
        return None
    patch_graph = patch_embedding.graph
    if not vertex_connectivity_at_least(patch_graph, 2):
        return None
    if not all(walk.is_cycle for walk in patch_embedding.faces):
        return None

    ends = e.rotation[v_out]
    at = next(i for i, (edge_id, _) in enumerate(ends) if edge_id == a)
    before = ends[at - 1][0]
    local = patch_vertices[v_out]
    outer = patch_embedding.face_between(local, patch_embedding.position_of(local, patch_edges[before]))
    back = {new: old for old, new in patch_edges.items()}
    outer_cycle = Cycle(patch_graph, patch_embedding.faces[outer].edge_set)
    if patch_vertices[w_out] not in outer_cycle.vertices:
        raise ProofStepError('the cut edges do not meet a common face of the patch side')
    routes = outer_cycle.paths_between(local, patch_vertices[w_out])

    h_embedding = planar_embed(h)
    if h_embedding is None:
        raise ProofStepError('kept side of a planar 2-cut is not planar')
    sub_trace: List[str] = []
    h_cover = _half_cover(h_embedding, sub_trace)
    through = [cycle for cycle in h_cover.cycles if shortcut in cycle.edge_set]
    if len(through) != 2:
        raise ProofStepError('the shortcut edge is not on exactly two cycles')

    edge_sets = []
    routed = 0
    for cycle in h_cover.cycles:
        lifted = frozenset(h_origin[edge_id] for edge_id in cycle.edge_set if edge_id != shortcut)
        if shortcut in cycle.edge_set:
            lifted = lifted | {a, b} | {back[edge_id] for edge_id in routes[routed]}
            routed += 1
        edge_sets.append(lifted)
    for face, walk in enumerate(patch_embedding.faces):
        if face != outer:
            edge_sets.append(frozenset(back[edge_id] for edge_id in walk.edge_set))
    try:
        cover = Cdc.from_cycles(g, (Cycle(g, edge_set) for edge_set in edge_sets))
    except ValidationError as exc:
        raise ProofStepError(f'patching across the 2-cut did not give cycles: {exc.messages[0]}') from exc
    if not verify_cdc(g, cover):
        raise ProofStepError('patched cover across the 2-cut does not verify')
    trace.append(f'2-cut {[a, b]}: recurse on {len(order)} vertices, patch {len(patch)}')
    trace.extend(f'  {step}' for step in sub_trace)
    return cover


def _half_cover(e: PlaneEmbedding, trace: List[str]) -> Cdc:
    g = e.graph
    three_connected = vertex_connectivity_at_least(g, 3)
    if three_connected and _dual_is_four_connected(e):
        cover, step = _ring_cover(e)
        trace.append(f'dual 4-connected: {step}')
        return cover
    triangles = _disjoint_triangles(e)
    if len(triangles) >= 2:
        trace.append(f'reroute around triangle faces {triangles}')
        return _triangle_cover(e, triangles)
    if three_connected:
        split = _leaf_split(e)
        if split is not None:
            cover, step = _split_cover(*split)
            trace.append(step)
            return cover
        raise ProofStepError(f'{g}: no 3-edge-cut splits off a piece with 4-connected dual')
    cover = _two_cut_cover(e, trace)
    if cover is None:
        raise ProofStepError(f'{g}: no 2-edge-cut admits the bridge patch')
    return cover


def cubic_planar_half_cdc(e: PlaneEmbedding) -> ConstructedCdc:
    """
    CDC of size at most n/2 for a 2-connected planar cubic graph on n > 4
    vertices.

    Cases, in order: a 3-connected graph with 4-connected dual allows a ring
    exchange; two or more disjoint triangle faces are absorbed into their
    neighbours; a 3-connected graph is split at a 3-edge-cut into a piece
    with 4-connected dual, whose ring-exchanged cover is merged with the face
    cover of the rest; a graph with a 2-edge-cut is reduced across it.

    Raises:
        ProofStepError: no case of the ladder applies or a step fails
    """
    g = e.graph
    if not g.is_cubic:
        raise StructureError('cubic_planar_half_cdc needs a cubic graph')
    if g.vertex_count <= 4:
        raise ValidationError('cubic_planar_half_cdc needs n > 4')
    if not vertex_connectivity_at_least(g, 2):
        raise ValidationError('cubic_planar_half_cdc needs a 2-connected graph')
    trace: List[str] = []
    cover = _half_cover(e, trace)
    if not verify_cdc(g, cover):
        raise ProofStepError('half cover does not verify')
    if 2 * cover.size > g.vertex_count:
        raise ProofStepError(f'cover of size {cover.size} exceeds n/2 = {g.vertex_count // 2}')
    for step in trace:
        logger.debug("%s: %s", g, step)
    return ConstructedCdc(cover, tuple(trace))
