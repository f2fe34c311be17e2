"""Affine normalization of perfect prismatoids onto 0/1-polytopes.

Pick ``d`` facets with independent normals.  Their slabs
``c_i <= (a_i, x) <= b_i`` cut out a parallelepiped whose vertex set contains
``Vert(P)``; sending each slab onto ``[0, 1]`` maps that parallelepiped onto
the unit cube and ``P`` onto a 0/1-polytope.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateNormals, VerificationFailure
from .exact_linalg import AffineMap, rank
from .polytope import Facet, HPolytope, VPolytope, h_to_v
from .two_level import TwoLevelSystem, extract_two_level_system


@dataclass(frozen=True)
class Normalization:
    map: AffineMap
    chosen_facets: tuple
    image: VPolytope
    system: TwoLevelSystem


def select_independent_normals(S: TwoLevelSystem) -> list[int]:
    """Greedy in facet order: keep a facet iff its normal raises the rank."""
    d = S.dim
    chosen: list[int] = []
    normals: list = []
    for i, f in enumerate(S.facets):
        if rank(normals + [f.a]) > len(normals):
            normals.append(f.a)
            chosen.append(i)
            if len(chosen) == d:
                return chosen
    raise DegenerateNormals(f"facet normals span only {len(chosen)} of {d} dimensions")


def parallelepiped(S: TwoLevelSystem, chosen) -> HPolytope:
    """The box ``c_i <= (a_i, x) <= b_i`` over the chosen facets."""
    facets = []
    for i in chosen:
        f = S.facets[i]
        facets.append(Facet(f.a, f.b))
        facets.append(Facet(tuple(-x for x in f.a), -f.c))
    return HPolytope(S.dim, tuple(facets))


def slab_map(S: TwoLevelSystem, chosen) -> AffineMap:
    """``y_k = ((a_i, x) - c_i) / (b_i - c_i)`` for the k-th chosen facet ``i``."""
    linear, translate = [], []
    for i in chosen:
        f = S.facets[i]
        width = f.b - f.c
        linear.append(tuple(Fraction(a) / width for a in f.a))
        translate.append(-f.c / width)
    return AffineMap(tuple(linear), tuple(translate))


def normalizing_map(P: VPolytope, *, check_parallelepiped: bool = True) -> Normalization:
    S = extract_two_level_system(P)
    chosen = select_independent_normals(S)
    T = slab_map(S, chosen)
    if not T.is_invertible():
        raise VerificationFailure("slab map is singular despite independent normals")

    # each vertex sits on one of the two walls of every chosen slab
    for i in chosen:
        f = S.facets[i]
        for v in P.vertices:
            if f.value(v) not in (f.b, f.c):
                raise VerificationFailure(f"vertex {v} strictly inside slab of facet {i}")
    if check_parallelepiped:
        corners = set(h_to_v(parallelepiped(S, chosen)).vertices)
        missing = [v for v in P.vertices if v not in corners]
        if missing:
            raise VerificationFailure(f"vertices {missing} are not corners of the parallelepiped")

    image = [T(v) for v in P.vertices]
    for y in image:
        if any(c not in (0, 1) for c in y):
            raise VerificationFailure(f"image vertex {y} is not a 0/1 point")
    return Normalization(T, tuple(chosen), VPolytope._trusted(P.dim, image), S)


def to_01_polytope(P: VPolytope) -> tuple[VPolytope, AffineMap]:
    n = normalizing_map(P)
    return n.image, n.map
