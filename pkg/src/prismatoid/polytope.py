"""Exact V- and H-representations, face lattices and f-vectors."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .double_description import extreme_rays
from .errors import (
    DimensionMismatch,
    DuplicateVertex,
    EmptyPolytope,
    MalformedInput,
    NotFullDimensional,
    Unbounded,
)
from .exact_linalg import (
    AffineMap,
    QVector,
    _integer_rows,
    dot,
    format_rational,
    nullspace,
    primitive_integer_vector,
    qvec,
    rank,
    solve,
    to_rational,
    vector_to_json,
    vscale,
    vsub,
)


def affine_dimension(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull of a nonempty point list."""
    if not points:
        raise ValueError("affine_dimension of an empty point list")
    p0 = points[0]
    diffs = [vsub(p, p0) for p in points[1:]]
    return rank(diffs) if diffs else 0


@dataclass(frozen=True)
class AffineChart:
    """Coordinates on the affine hull: ``x = origin + sum_j t_j directions[j]``."""

    origin: QVector
    directions: tuple
    pivot_columns: tuple

    @classmethod
    def of(cls, points: Sequence[Sequence]) -> "AffineChart":
        p0 = qvec(points[0])
        directions: list[QVector] = []
        for p in points[1:]:
            d = vsub(p, p0)
            if rank(directions + [d]) > len(directions):
                directions.append(d)
        # coordinate positions on which the directions restrict to an invertible block
        pivots: list[int] = []
        for c in range(len(p0)):
            cols = pivots + [c]
            if rank([[d[k] for k in cols] for d in directions]) == len(cols):
                pivots.append(c)
            if len(pivots) == len(directions):
                break
        return cls(p0, tuple(directions), tuple(pivots))

    @property
    def dim(self) -> int:
        return len(self.directions)

    def coordinates(self, x: Sequence) -> QVector:
        """Chart coordinates of a point known to lie on the hull."""
        if not self.directions:
            return ()
        diff = vsub(x, self.origin)
        square = [[d[c] for d in self.directions] for c in self.pivot_columns]
        return solve(square, [diff[c] for c in self.pivot_columns])

    def point(self, t: Sequence) -> QVector:
        out = list(self.origin)
        for tj, d in zip(t, self.directions):
            for k, dk in enumerate(d):
                out[k] += tj * dk
        return tuple(out)


def _json_dim(data) -> int:
    dim = data["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool):
        raise MalformedInput(f"'dim' must be an integer, got {dim!r}")
    return dim


# -- H-representation ---------------------------------------------------------

@dataclass(frozen=True, order=True)
class Facet:
    """The inequality ``normal . x <= offset`` with a primitive integer normal."""

    normal: tuple
    offset: Fraction

    def __post_init__(self):
        normal = qvec(self.normal)
        offset = to_rational(self.offset)
        if not any(normal):
            raise MalformedInput("facet normal must be nonzero")
        prim = primitive_integer_vector(normal)
        # positive rescaling factor mapping normal onto prim
        k = next(Fraction(p) / n for p, n in zip(prim, normal) if n != 0)
        object.__setattr__(self, "normal", prim)
        object.__setattr__(self, "offset", offset * k)

    def value(self, x: Sequence) -> Fraction:
        return dot(self.normal, x)

    def to_json(self) -> dict:
        return {"normal": [str(a) for a in self.normal], "offset": format_rational(self.offset)}


def _facet_sort_key(f: Facet):
    return (f.normal, f.offset)


@dataclass(frozen=True, eq=False)
class HPolytope:
    """``{x : normal_i . x <= offset_i}``; facets kept in descending lexicographic order."""

    dim: int
    facets: tuple

    def __post_init__(self):
        facets = tuple(f if isinstance(f, Facet) else Facet(*f) for f in self.facets)
        if self.dim < 1:
            raise DimensionMismatch("dimension must be positive")
        for f in facets:
            if len(f.normal) != self.dim:
                raise DimensionMismatch(f"facet normal {f.normal} does not have length {self.dim}")
        object.__setattr__(self, "facets", tuple(sorted(facets, key=_facet_sort_key, reverse=True)))

    def __len__(self):
        return len(self.facets)

    def __eq__(self, other):
        if not isinstance(other, HPolytope):
            return NotImplemented
        return self.dim == other.dim and frozenset(self.facets) == frozenset(other.facets)

    def __hash__(self):
        return hash((self.dim, frozenset(self.facets)))

    def contains(self, x: Sequence) -> bool:
        return all(f.value(x) <= f.offset for f in self.facets)

    def to_json(self) -> dict:
        return {"dim": self.dim, "facets": [f.to_json() for f in self.facets]}

    @classmethod
    def from_json(cls, data) -> "HPolytope":
        try:
            facets = [Facet(qvec(f["normal"]), to_rational(f["offset"])) for f in data["facets"]]
            return cls(_json_dim(data), tuple(facets))
        except (KeyError, TypeError) as exc:
            raise MalformedInput(f"bad H-polytope document: {exc}") from exc


def _hull_facets(points: Sequence[QVector], d: int) -> list[tuple[Facet, int]]:
    """Facets of conv(points) for full-dimensional input, with incidence masks."""
    rows = _integer_rows([(Fraction(1),) + tuple(p) for p in points])
    out = []
    for ray, mask in extreme_rays(rows, d + 1):
        # ray . (1, x) >= 0  <=>  (-ray[1:]) . x <= ray[0]
        out.append((Facet(tuple(-r for r in ray[1:]), Fraction(ray[0])), mask))
    return out


# -- V-representation -----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class VPolytope:
    """Convex hull of finitely many rational points in ``R^dim``.

    Construction rejects duplicate points and drops points that are not
    vertices of the hull, so ``vertices`` is exactly ``Vert(P)`` in input order.
    """

    dim: int
    vertices: tuple

    def __post_init__(self):
        verts = tuple(qvec(v) for v in self.vertices)
        if self.dim < 1:
            raise DimensionMismatch("dimension must be positive")
        if not verts:
            raise MalformedInput("a polytope needs at least one point")
        for v in verts:
            if len(v) != self.dim:
                raise DimensionMismatch(f"point {v} does not have length {self.dim}")
        if len(set(verts)) != len(verts):
            raise DuplicateVertex("duplicate points in vertex list")
        object.__setattr__(self, "vertices", verts)
        self._canonicalize()

    def _canonicalize(self):
        verts = self.vertices
        chart = AffineChart.of(verts)
        k = chart.dim
        if k == 0:
            return
        if k == self.dim:
            local = verts
        else:
            local = [chart.coordinates(v) for v in verts]
        facets = _hull_facets(local, k)
        keep = []
        for i in range(len(verts)):
            normals = [f.normal for f, mask in facets if mask >> i & 1]
            if normals and rank(normals) == k:
                keep.append(i)
        if len(keep) < len(verts):
            object.__setattr__(self, "vertices", tuple(verts[i] for i in keep))
        if k == self.dim:
            self.__dict__["_facets"] = tuple(f for f, _ in facets)

    @classmethod
    def _trusted(cls, dim: int, vertices) -> "VPolytope":
        """Build from a list already known to be exactly the vertex set."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "dim", dim)
        object.__setattr__(obj, "vertices", tuple(qvec(v) for v in vertices))
        return obj

    def __len__(self):
        return len(self.vertices)

    def __eq__(self, other):
        if not isinstance(other, VPolytope):
            return NotImplemented
        return self.dim == other.dim and frozenset(self.vertices) == frozenset(other.vertices)

    def __hash__(self):
        return hash((self.dim, frozenset(self.vertices)))

    @property
    def affine_dim(self) -> int:
        return affine_dimension(self.vertices)

    def is_full_dimensional(self) -> bool:
        return self.affine_dim == self.dim

    def apply(self, T: AffineMap) -> "VPolytope":
        """Image under an invertible affine map (vertices map to vertices)."""
        if T.dim != self.dim:
            raise DimensionMismatch("affine map dimension differs from polytope dimension")
        if not T.is_invertible():
            return VPolytope(self.dim, tuple(dict.fromkeys(T(v) for v in self.vertices)))
        return VPolytope._trusted(self.dim, [T(v) for v in self.vertices])

    def to_json(self) -> dict:
        return {"dim": self.dim, "vertices": [vector_to_json(v) for v in self.vertices]}

    @classmethod
    def from_json(cls, data) -> "VPolytope":
        try:
            return cls(_json_dim(data), tuple(qvec(v) for v in data["vertices"]))
        except (KeyError, TypeError) as exc:
            raise MalformedInput(f"bad V-polytope document: {exc}") from exc


def load_polytope_json(text: str):
    """Parse a V- or H-representation document."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise MalformedInput("polytope document must be a JSON object")
    if "vertices" in data:
        return VPolytope.from_json(data)
    if "facets" in data:
        return HPolytope.from_json(data)
    raise MalformedInput("polytope document needs 'vertices' or 'facets'")


def _require_full(P: VPolytope) -> None:
    k = P.affine_dim
    if k != P.dim:
        raise NotFullDimensional(
            f"affine hull has dimension {k} < {P.dim}", affine_dim=k, dim=P.dim
        )


def v_to_h(P: VPolytope) -> HPolytope:
    """Irredundant facet description of a full-dimensional V-polytope."""
    cached = P.__dict__.get("_facets")
    if cached is None:
        _require_full(P)
        cached = tuple(f for f, _ in _hull_facets(P.vertices, P.dim))
        P.__dict__["_facets"] = cached
    return HPolytope(P.dim, cached)


def h_to_v(H: HPolytope) -> VPolytope:
    """Vertices of a bounded, nonempty, full-dimensional H-polytope."""
    d = H.dim
    # homogenize: (t, x) with t * offset - normal . x >= 0 and t >= 0
    rows = [(f.offset,) + tuple(-a for a in f.normal) for f in H.facets]
    rows.append((Fraction(1),) + (Fraction(0),) * d)
    rows = _integer_rows(rows)
    lineality = nullspace(rows, d + 1)
    for n in lineality:
        ni = primitive_integer_vector(n)
        rows.append(list(ni))
        rows.append([-x for x in ni])
    rays = extreme_rays(rows, d + 1)
    points = [tuple(Fraction(r) / ray[0] for r in ray[1:]) for ray, _ in rays if ray[0] > 0]
    if not points:
        raise EmptyPolytope("inequality system has no solution")
    if lineality or any(ray[0] == 0 for ray, _ in rays):
        raise Unbounded("inequality system describes an unbounded polyhedron")
    P = VPolytope(d, tuple(dict.fromkeys(points)))
    _require_full(P)
    return P


def vertex_facet_incidence(P: VPolytope, H: HPolytope) -> tuple:
    """``M[i][j]`` is true iff vertex ``i`` lies on facet ``j``."""
    if P.dim != H.dim:
        raise DimensionMismatch(f"V-polytope in R^{P.dim}, H-polytope in R^{H.dim}")
    return tuple(tuple(f.value(v) == f.offset for f in H.facets) for v in P.vertices)


# -- face lattice -------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Face:
    dim: int
    vertices: tuple  # sorted vertex indices


@dataclass(frozen=True)
class FaceLattice:
    """All nonempty faces, ordered by dimension then by vertex indices."""

    faces: tuple
    dim: int

    def of_dimension(self, k: int) -> list[Face]:
        return [f for f in self.faces if f.dim == k]

    def vertex_sets(self) -> set[frozenset]:
        return {frozenset(f.vertices) for f in self.faces}

    def __len__(self):
        return len(self.faces)


@dataclass(frozen=True)
class FVector:
    counts: tuple
    total_with_self: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(self.counts))
        object.__setattr__(self, "total_with_self", sum(self.counts) + 1)

    def __getitem__(self, k):
        return self.counts[k]

    def __len__(self):
        return len(self.counts)


def facet_vertex_sets(P: VPolytope, H: HPolytope | None = None) -> list[frozenset]:
    H = v_to_h(P) if H is None else H
    incidence = vertex_facet_incidence(P, H)
    return [
        frozenset(i for i in range(len(P.vertices)) if incidence[i][j])
        for j in range(len(H.facets))
    ]


def face_lattice(P: VPolytope) -> FaceLattice:
    """Close the facet vertex sets under intersection."""
    _require_full(P)
    facets = facet_vertex_sets(P)
    seen = set(facets)
    frontier = list(seen)
    while frontier:
        fresh = []
        for f in frontier:
            for g in facets:
                h = f & g
                if h and h not in seen:
                    seen.add(h)
                    fresh.append(h)
        frontier = fresh
    everything = frozenset(range(len(P.vertices)))
    seen.add(everything)
    faces = []
    for s in seen:
        idx = tuple(sorted(s))
        faces.append(Face(affine_dimension([P.vertices[i] for i in idx]), idx))
    faces.sort()
    return FaceLattice(tuple(faces), P.dim)


def f_vector(P: VPolytope) -> FVector:
    lattice = face_lattice(P)
    counts = [0] * P.dim
    for f in lattice.faces:
        if f.dim < P.dim:
            counts[f.dim] += 1
    return FVector(tuple(counts))


def central_symmetry_center(P: VPolytope) -> QVector | None:
    """Vertex centroid if the point reflection through it permutes the vertices."""
    n = len(P.vertices)
    c = tuple(sum(coord) / n for coord in zip(*P.vertices))
    verts = set(P.vertices)
    for v in P.vertices:
        if vsub(vscale(2, c), v) not in verts:
            return None
    return c


def apply_affine(P: VPolytope, T: AffineMap) -> VPolytope:
    return P.apply(T)

