# constructions/elementary.py
"""CDCs that come straight from an embedding or a family's structure."""
from django.core.exceptions import ValidationError

from cdc.models import Cdc
from cdc.verification import verify_cdc
from core.exceptions import ProofStepError
from graphs.embedding import require_plane
from graphs.models import Cycle, PlaneEmbedding

from .families import gen_double_wheel


def face_boundary_cdc(e: PlaneEmbedding) -> Cdc:
    """All face boundaries of a plane graph whose faces are bounded by cycles."""
    require_plane(e)
    g = e.graph
    return Cdc.from_cycles(g, (Cycle(g, walk.edge_set) for walk in e.faces))


def double_wheel_cdc(n: int) -> Cdc:
    """
    (n-2)-CDC of the double wheel: hubs a, b and rim r_0..r_{n-3}, with the
    cycles a r_i r_{i+1} b r_{i+3} r_{i+2} a.
    """
    if n < 6:
        raise ValidationError('the double wheel cover needs n >= 6')
    g = gen_double_wheel(n)
    rim = n - 2
    a, b = rim, rim + 1
    cycles = [
        Cycle.from_vertices(g, (a, i, (i + 1) % rim, b, (i + 3) % rim, (i + 2) % rim))
        for i in range(rim)
    ]
    cdc = Cdc.from_cycles(g, cycles)
    if not verify_cdc(g, cdc):
        raise ProofStepError('double wheel cover does not verify')
    return cdc
