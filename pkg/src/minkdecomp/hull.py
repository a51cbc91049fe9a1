"""Brute-force facet enumeration for desk-scale vertex sets.

Every d-subset of the input is tested for spanning a supporting
hyperplane; the maximal coplanar vertex set of each such hyperplane is a
facet.  Exponential, but exact, and entirely adequate below the guard of
C(n, d) <= 10^7 subsets.  Input coordinates are rational; a common
denominator is cleared so the kernels run over integers (uniform scaling
does not change the face structure).
"""

from fractions import Fraction
from math import comb, lcm
from typing import List, Sequence, Tuple

from . import kernels
from .errors import DegenerateInputError, GuardExceededError, InvalidInputError
from .linalg import Rational, Vec, matrix_rank

SUBSET_GUARD = 10**7


def _as_int_coords(vertices: Sequence[Vec]) -> Tuple[List[Tuple[int, ...]], int]:
    mult = lcm(*(c.denominator for v in vertices for c in v))
    return [tuple(int(c * mult) for c in v) for v in vertices], mult


def facet_data(dim: int, vertices: Sequence[Sequence[Rational]]):
    """Facets with their outward hyperplanes.

    Returns a list of (vertex_index_tuple, normal, offset) sorted by the
    vertex tuple, with normal . x <= offset over the whole vertex set and
    equality exactly on the facet.  Callers must pass the extreme points
    of the intended polytope; non-extreme input surfaces later as a
    validation failure (some vertex in fewer than d facets).
    """
    pts = [Vec(v) for v in vertices]
    n = len(pts)
    if n == 0:
        raise InvalidInputError("empty vertex set")
    d = dim
    if any(len(p) != d for p in pts):
        raise InvalidInputError("vertex of wrong dimension")
    if len(set(pts)) != n:
        raise InvalidInputError("duplicate vertices")
    if comb(n, d) > SUBSET_GUARD:
        raise GuardExceededError(
            f"C({n},{d}) = {comb(n, d)} d-subsets exceeds the guard of {SUBSET_GUARD}"
        )
    if matrix_rank([p - pts[0] for p in pts[1:]] or [], ncols=d) != d:
        raise DegenerateInputError("vertex set does not affinely span the ambient dimension")
    ints, mult = _as_int_coords(pts)
    raw = kernels.facet_scan(ints, d)
    out = []
    for mask, normal, offset in raw:
        members = tuple(i for i in range(n) if mask >> i & 1)
        # Undo the scaling: the integer scan saw mult * x.
        out.append((members, Vec(normal), Fraction(offset, mult)))
    out.sort(key=lambda t: t[0])
    return out


def enumerate_facets(dim: int, vertices: Sequence[Sequence[Rational]]) -> List[Tuple[int, ...]]:
    """Facet vertex-index sets, each sorted, list sorted lexicographically."""
    return [members for members, _, _ in facet_data(dim, vertices)]
