"""Two-level facet systems and (perfect) prismatoid predicates.

For a perfect prismatoid every facet functional ``a_i`` takes exactly two
values on the vertex set: ``b_i`` on the facet itself and ``c_i < b_i`` on the
parallel face.  :func:`extract_two_level_system` returns those triples;
:func:`prismatoid_over_facet` is the definition-level check used to
cross-validate it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import MalformedInput, NotPerfectPrismatoid
from .exact_linalg import format_rational, nullspace, primitive_integer_vector, qvec, rank, to_rational, vsub
from .polytope import Facet, HPolytope, VPolytope, face_lattice, v_to_h, vertex_facet_incidence


@dataclass(frozen=True)
class TwoLevelFacet:
    a: tuple
    b: Fraction
    c: Fraction
    top: tuple  # vertex indices with (a, v) = b; the facet itself
    bottom: tuple  # vertex indices with (a, v) = c

    def value(self, x: Sequence) -> Fraction:
        return sum((ai * xi for ai, xi in zip(self.a, x)), Fraction(0))


@dataclass(frozen=True)
class TwoLevelSystem:
    """Per-facet ``b_i >= (a_i, x) >= c_i`` together with the vertices it describes."""

    facets: tuple
    vertices: tuple

    @property
    def dim(self) -> int:
        return len(self.vertices[0])

    def __len__(self):
        return len(self.facets)

    def upper_hpolytope(self) -> HPolytope:
        return HPolytope(self.dim, tuple(Facet(f.a, f.b) for f in self.facets))

    def slab_hpolytope(self) -> HPolytope:
        """Both sides of every slab; the lower sides are redundant."""
        facets = [Facet(f.a, f.b) for f in self.facets]
        facets += [Facet(tuple(-x for x in f.a), -f.c) for f in self.facets]
        return HPolytope(self.dim, tuple(dict.fromkeys(facets)))

    def to_json(self) -> dict:
        return {
            "facets": [
                {
                    "a": [str(x) for x in f.a],
                    "b": format_rational(f.b),
                    "c": format_rational(f.c),
                    "top": list(f.top),
                    "bottom": list(f.bottom),
                }
                for f in self.facets
            ]
        }

    @classmethod
    def from_json(cls, data, vertices) -> "TwoLevelSystem":
        try:
            facets = tuple(
                TwoLevelFacet(
                    tuple(int(to_rational(x)) for x in f["a"]),
                    to_rational(f["b"]),
                    to_rational(f["c"]),
                    tuple(int(i) for i in f["top"]),
                    tuple(int(i) for i in f["bottom"]),
                )
                for f in data["facets"]
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"bad two-level system document: {exc}") from exc
        return cls(facets, tuple(qvec(v) for v in vertices))


@dataclass(frozen=True)
class PrismatoidWitness:
    """``P = conv(F ∪ F')`` for the facet ``facet_index`` with ``lin F' ⊆ lin F``."""

    facet_index: int
    facet: tuple
    parallel_face: tuple
    lin_contained: bool


@dataclass(frozen=True)
class Violation:
    facet_index: int
    normal: tuple
    values: tuple


@dataclass(frozen=True)
class PerfectPrismatoidReport:
    perfect: bool
    witnesses: tuple
    violations: tuple

    def __bool__(self):
        return self.perfect


def facet_value_sets(P: VPolytope, H: HPolytope | None = None) -> list[tuple]:
    """Sorted distinct values of each facet functional on ``Vert(P)``."""
    H = v_to_h(P) if H is None else H
    vertex_facet_incidence(P, H)  # dimension check
    return [tuple(sorted({f.value(v) for v in P.vertices})) for f in H.facets]


def extract_two_level_system(P: VPolytope) -> TwoLevelSystem:
    """Two-level inequality system of a perfect prismatoid.

    Raises :class:`NotPerfectPrismatoid` naming the first facet (in canonical
    facet order) whose functional takes three or more values.
    """
    H = v_to_h(P)
    entries = []
    for i, (f, values) in enumerate(zip(H.facets, facet_value_sets(P, H))):
        if len(values) != 2:
            raise NotPerfectPrismatoid(i, values, normal=f.normal)
        c, b = values
        assert b == f.offset
        top = tuple(j for j, v in enumerate(P.vertices) if f.value(v) == b)
        bottom = tuple(j for j, v in enumerate(P.vertices) if f.value(v) == c)
        entries.append(TwoLevelFacet(f.normal, b, c, top, bottom))
    return TwoLevelSystem(tuple(entries), P.vertices)


def _directions(points: Sequence[Sequence]) -> list:
    if not points:
        return []
    p0 = points[0]
    return [vsub(p, p0) for p in points[1:]]


def prismatoid_over_facet(P: VPolytope, facet_index: int, H: HPolytope | None = None):
    """Witness that ``P`` is a prismatoid over facet ``facet_index``, else ``None``.

    The parallel face ``F'`` is the set of off-facet vertices; it qualifies when
    they share one functional value and ``lin F'`` lies in ``lin F``.
    """
    H = v_to_h(P) if H is None else H
    f = H.facets[facet_index]
    top = tuple(j for j, v in enumerate(P.vertices) if f.value(v) == f.offset)
    rest = tuple(j for j in range(len(P.vertices)) if j not in top)
    if len({f.value(P.vertices[j]) for j in rest}) != 1:
        return None
    lin_f = _directions([P.vertices[j] for j in top])
    lin_fp = _directions([P.vertices[j] for j in rest])
    contained = rank(lin_f + lin_fp) == rank(lin_f) if lin_fp else True
    if not contained:
        return None
    return PrismatoidWitness(facet_index, top, rest, contained)


def is_perfect_prismatoid(P: VPolytope) -> PerfectPrismatoidReport:
    H = v_to_h(P)
    witnesses, violations = [], []
    for i, values in enumerate(facet_value_sets(P, H)):
        if len(values) == 2:
            w = prismatoid_over_facet(P, i, H)
            if w is None:  # pragma: no cover - two values force a witness
                violations.append(Violation(i, H.facets[i].normal, values))
            else:
                witnesses.append(w)
        else:
            violations.append(Violation(i, H.facets[i].normal, values))
    perfect = not violations
    return PerfectPrismatoidReport(perfect, tuple(witnesses) if perfect else (), tuple(violations))


@dataclass(frozen=True)
class PrismatoidResult:
    is_prismatoid: bool
    direction: tuple | None = None
    top: tuple | None = None
    bottom: tuple | None = None

    def __bool__(self):
        return self.is_prismatoid


def is_prismatoid(P: VPolytope) -> PrismatoidResult:
    """Search face pairs ``(F, F')`` partitioning the vertices with parallel hulls."""
    lattice = face_lattice(P)
    d = P.dim
    everything = frozenset(range(len(P.vertices)))
    vertex_sets = lattice.vertex_sets()
    candidates = [f for f in lattice.faces if f.dim < d]
    candidates.sort(key=lambda f: -f.dim)  # stable: lattice order within a dimension
    for face in candidates:
        complement = everything - frozenset(face.vertices)
        if complement not in vertex_sets:
            continue
        other = tuple(sorted(complement))
        dirs = _directions([P.vertices[j] for j in face.vertices])
        dirs += _directions([P.vertices[j] for j in other])
        if (rank(dirs) if dirs else 0) != d - 1:
            continue
        if dirs:
            (w,) = nullspace(dirs, d)
        else:  # d == 1: two single points
            w = (Fraction(1),)
        w = primitive_integer_vector(w)
        if next(x for x in w if x != 0) < 0:
            w = tuple(-x for x in w)
        values = {sum(a * b for a, b in zip(w, v)) for v in P.vertices}
        if len(values) == 2:
            return PrismatoidResult(True, w, face.vertices, other)
    return PrismatoidResult(False)
