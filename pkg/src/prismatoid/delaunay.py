"""Lattice Delaunay embeddings of perfect prismatoids via an empty ellipsoid.

The construction works on the 0/1 image ``P`` of a perfect prismatoid:

* ``Λ(P)`` is the affine lattice of integer combinations of the vertices with
  coefficient sum one, stored as an origin plus an HNF basis;
* each facet contributes ``q_i(x) = ((a_i,x) - b_i) ((a_i,x) - c_i)``, which is
  nonnegative on ``Λ(P)`` and vanishes exactly on the two levels;
* ``Q = Σ q_i`` has positive definite quadratic part, so ``Q <= 0`` is a solid
  ellipsoid whose lattice points are exactly the vertices.

Everything stays rational: instead of rounding the ellipsoid to a sphere the
certificate records the Gram matrix of the lattice basis in the metric of
``Q``'s quadratic part.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import (
    DimensionMismatch,
    EmptinessViolation,
    MalformedCertificate,
    NonIntegerVertices,
    NotFullDimensional,
    NotInLattice,
    NotPositiveDefinite,
    VerificationFailure,
)
from .exact_linalg import (
    QMatrix,
    QVector,
    _lcm_denominator,
    determinant,
    dot,
    format_rational,
    hermite_normal_form,
    inverse,
    is_integral,
    is_symmetric,
    isqrt_bounds,
    ldlt,
    mat_mul,
    mat_vec,
    matrix_to_json,
    qmat,
    qvec,
    rank,
    solve,
    to_rational,
    transpose,
    vadd,
    vec_mat,
    vector_to_json,
    vsub,
)
from .normalize import Normalization, normalizing_map
from .polytope import VPolytope, affine_dimension
from .two_level import TwoLevelSystem, extract_two_level_system


# -- the lattice Λ(P) ------------------------------------------------------------

@dataclass(frozen=True)
class PolytopeLattice:
    """``{origin + z @ basis : z integer}``."""

    origin: QVector
    basis: QMatrix

    @property
    def dim(self) -> int:
        return len(self.origin)

    @property
    def index(self) -> Fraction:
        """Covolume relative to ``Z^d`` (an integer for integral bases)."""
        return abs(determinant(self.basis))

    def point(self, z: Sequence) -> QVector:
        return vadd(self.origin, vec_mat(z, self.basis))

    def rational_coordinates(self, x: Sequence) -> QVector:
        return solve(transpose(self.basis), vsub(x, self.origin))

    def coordinates(self, u: Sequence) -> tuple[int, ...]:
        z = self.rational_coordinates(u)
        if not all(is_integral(c) for c in z):
            raise NotInLattice(f"{tuple(map(str, u))} is not in the lattice")
        return tuple(int(c) for c in z)

    def contains(self, u: Sequence) -> bool:
        return all(is_integral(c) for c in self.rational_coordinates(u))

    def gram(self, A: Sequence[Sequence]) -> QMatrix:
        return mat_mul(mat_mul(self.basis, A), transpose(self.basis))


def _affine_lattice(points: Sequence[Sequence]) -> PolytopeLattice:
    origin = qvec(points[0])
    diffs = [vsub(p, origin) for p in points[1:]]
    k = _lcm_denominator(x for v in diffs for x in v)
    hnf = hermite_normal_form([[x * k for x in v] for v in diffs])
    basis = tuple(tuple(x / k for x in row) for row in hnf)
    if len(basis) != len(origin):
        raise DimensionMismatch("vertices do not span a full-rank lattice")
    return PolytopeLattice(origin, basis)


def lattice_of_polytope(P01: VPolytope) -> PolytopeLattice:
    """``Λ(P)`` for a full-dimensional polytope with integer vertices."""
    if not all(is_integral(x) for v in P01.vertices for x in v):
        raise NonIntegerVertices("lattice_of_polytope needs integer vertex coordinates")
    if affine_dimension(P01.vertices) != P01.dim:
        raise NotFullDimensional("vertices are not full-dimensional", dim=P01.dim)
    return _affine_lattice(P01.vertices)


# -- quadrics and the ellipsoid ---------------------------------------------------

@dataclass(frozen=True)
class FacetQuadric:
    index: int
    a: tuple
    b: Fraction
    c: Fraction

    def __call__(self, x: Sequence) -> Fraction:
        s = dot(self.a, x)
        return (s - self.b) * (s - self.c)


def build_facet_quadrics(S: TwoLevelSystem) -> list[FacetQuadric]:
    return [FacetQuadric(i, f.a, f.b, f.c) for i, f in enumerate(S.facets)]


@dataclass(frozen=True)
class EllipsoidForm:
    """``Q(x) = x^T A x + linear . x + constant = (x - center)^T A (x - center) - radius2``."""

    A: QMatrix
    linear: QVector
    constant: Fraction
    center: QVector
    radius2: Fraction

    @property
    def dim(self) -> int:
        return len(self.center)

    def __call__(self, x: Sequence) -> Fraction:
        return dot(x, mat_vec(self.A, x)) + dot(self.linear, x) + self.constant

    def centered(self, x: Sequence) -> Fraction:
        y = vsub(x, self.center)
        return dot(y, mat_vec(self.A, y)) - self.radius2


def build_ellipsoid(quadrics: Sequence[FacetQuadric], vertices: Sequence[Sequence] = ()) -> EllipsoidForm:
    """Sum the facet quadrics and complete the square.

    ``(s - b)(s - c) = s^2 - (b + c) s + b c`` with ``s = (a, x)``, so the
    quadratic part is ``Σ a a^T``.  If ``vertices`` are given, ``Q`` is checked
    to vanish on each of them.
    """
    if not quadrics:
        raise ValueError("need at least one quadric")
    d = len(quadrics[0].a)
    A = [[Fraction(0)] * d for _ in range(d)]
    linear = [Fraction(0)] * d
    constant = Fraction(0)
    for q in quadrics:
        for i in range(d):
            if q.a[i] == 0:
                continue
            linear[i] -= (q.b + q.c) * q.a[i]
            for j in range(d):
                A[i][j] += q.a[i] * q.a[j]
        constant += q.b * q.c
    A = tuple(tuple(r) for r in A)
    factor = ldlt(A)
    if not factor.positive_definite:
        raise NotPositiveDefinite("facet normals do not span; quadratic part is degenerate", factor.D)
    # gradient 2 A x + linear vanishes at the center
    center = solve(A, tuple(-x / 2 for x in linear))
    radius2 = dot(center, mat_vec(A, center)) - constant
    E = EllipsoidForm(A, tuple(linear), constant, center, radius2)
    for v in vertices:
        if E(v) != 0:
            raise VerificationFailure(f"Q does not vanish at vertex {v}")
    return E


# -- level classification ------------------------------------------------------------

@dataclass(frozen=True)
class LevelClass:
    p: int
    sign: str  # "zero" or "positive"


def classify_level_combination(S: TwoLevelSystem, i: int, u: Sequence,
                               lattice: PolytopeLattice | None = None) -> LevelClass:
    """Top-level weight ``p`` of a lattice point with respect to facet ``i``.

    Every representation ``u = Σ n_j v_j`` with ``Σ n_j = 1`` gives
    ``(a_i, u) = p b_i + (1 - p) c_i`` where ``p`` sums ``n_j`` over the facet's
    vertices, hence ``p = ((a_i, u) - c_i) / (b_i - c_i)`` independent of the
    representation.  ``q_i(u) = (p - 1) p (b_i - c_i)^2`` is zero iff
    ``p ∈ {0, 1}`` and positive for every other integer.
    """
    lattice = _affine_lattice(S.vertices) if lattice is None else lattice
    if not lattice.contains(u):
        raise NotInLattice(f"{tuple(map(str, u))} is not in the polytope lattice")
    f = S.facets[i]
    p = (f.value(u) - f.c) / (f.b - f.c)
    if not is_integral(p):  # pragma: no cover - excluded by lattice membership
        raise NotInLattice(f"level weight {p} is not an integer")
    p = int(p)
    q = FacetQuadric(i, f.a, f.b, f.c)(u)
    sign = "zero" if p in (0, 1) else "positive"
    if (q == 0) != (sign == "zero") or q < 0:
        raise VerificationFailure(f"q_{i}({u}) = {q} disagrees with p = {p}")
    return LevelClass(p, sign)


def top_weight(S: TwoLevelSystem, i: int, coefficients: Sequence[int]) -> int:
    """``p`` read off an explicit affine combination: the sum of ``n_j`` over top vertices."""
    return sum(coefficients[j] for j in S.facets[i].top)


# -- enumeration ----------------------------------------------------------------------

def enumerate_gram_ellipsoid(G: Sequence[Sequence], t: Sequence, r2) -> list[tuple[int, ...]]:
    """All integer ``z`` with ``(z - t)^T G (z - t) <= r2``, sorted.

    Recursive coordinate enumeration over ``G = L D L^T`` from the last
    coordinate down.  Candidate ranges come from integer square-root
    enclosures widened by one and every candidate is filtered exactly.
    """
    factor = ldlt(G)
    if not factor.positive_definite:
        raise NotPositiveDefinite("Gram matrix is not positive definite", factor.D)
    L, D = factor.L, factor.D
    n = len(D)
    t = qvec(t)
    r2 = to_rational(r2)
    out: list[tuple[int, ...]] = []
    z = [0] * n

    def descend(k: int, budget: Fraction):
        if k < 0:
            out.append(tuple(z))
            return
        shift = sum((L[j][k] * (z[j] - t[j]) for j in range(k + 1, n)), Fraction(0))
        mid = t[k] - shift
        _, hi = isqrt_bounds(budget / D[k])
        start = math.floor(mid - hi) - 1
        stop = math.ceil(mid + hi) + 1
        for zk in range(start, stop + 1):
            w = zk - mid
            used = D[k] * w * w
            if used <= budget:
                z[k] = zk
                descend(k - 1, budget - used)
        z[k] = 0

    if r2 >= 0:
        descend(n - 1, r2)
    out.sort()
    return out


def enumerate_lattice_in_ellipsoid(L: PolytopeLattice, E: EllipsoidForm) -> list[QVector]:
    """Exact set ``{u in Λ : Q(u) <= 0}`` in ambient coordinates, sorted."""
    G = L.gram(E.A)
    t = L.rational_coordinates(E.center)
    points = []
    for z in enumerate_gram_ellipsoid(G, t, E.radius2):
        u = L.point(z)
        if E(u) <= 0:
            points.append(u)
    points.sort()
    return points


def box_scan(L: PolytopeLattice, E: EllipsoidForm, vertices: Sequence[Sequence] = (),
             max_dim: int = 4) -> list[QVector]:
    """Brute-force oracle: scan an integer box that provably covers the ellipsoid.

    Along axis ``i`` the ellipsoid spans ``center_i ± sqrt(radius2 (A^-1)_ii)``;
    the box is that extent, joined with the vertex bounding box grown by one.
    """
    d = E.dim
    if d > max_dim:
        raise ValueError(f"box scan limited to dimension {max_dim}")
    Ainv = inverse(E.A)
    ranges = []
    for i in range(d):
        extent = E.radius2 * Ainv[i][i]
        half = math.isqrt(math.ceil(extent)) + 1
        lo = math.floor(E.center[i]) - half
        hi = math.ceil(E.center[i]) + half
        if vertices:
            lo = min(lo, min(math.floor(v[i]) for v in vertices) - 1)
            hi = max(hi, max(math.ceil(v[i]) for v in vertices) + 1)
        ranges.append(range(lo, hi + 1))
    found = []
    for u in itertools.product(*ranges):
        u = tuple(Fraction(x) for x in u)
        if E(u) <= 0 and L.contains(u):
            found.append(u)
    found.sort()
    return found


# -- certificates -------------------------------------------------------------------------

@dataclass(frozen=True)
class DelaunayCertificate:
    """Lattice coordinates of a Delaunay polytope in the metric ``gram``.

    ``vertices`` are integer coordinate vectors ``z`` with
    ``(z - center)^T gram (z - center) = radius2``; no other integer vector
    satisfies ``<= radius2``.  ``basis`` and ``origin`` place the lattice in
    ambient space.
    """

    basis: tuple
    origin: QVector
    gram: QMatrix
    center: QVector
    radius2: Fraction
    vertices: tuple

    @property
    def lattice(self) -> PolytopeLattice:
        return PolytopeLattice(self.origin, self.basis)

    @property
    def dim(self) -> int:
        return len(self.center)

    def ambient_vertices(self) -> list[QVector]:
        return [self.lattice.point(z) for z in self.vertices]

    def to_json(self) -> dict:
        return {
            "basis": [[int(x) if is_integral(x) else format_rational(x) for x in row] for row in self.basis],
            "origin": vector_to_json(self.origin),
            "gram": matrix_to_json(self.gram),
            "center": vector_to_json(self.center),
            "radius2": format_rational(self.radius2),
            "vertices": [list(z) for z in self.vertices],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"

    @classmethod
    def from_json(cls, data) -> "DelaunayCertificate":
        try:
            if not isinstance(data, dict):
                raise TypeError("certificate must be a JSON object")
            basis = qmat(data["basis"])
            origin = qvec(data["origin"])
            gram = qmat(data["gram"])
            center = qvec(data["center"])
            radius2 = to_rational(data["radius2"])
            vertices = []
            for z in data["vertices"]:
                if not all(isinstance(x, int) and not isinstance(x, bool) for x in z):
                    raise TypeError(f"vertex {z!r} must be a list of integers")
                vertices.append(tuple(z))
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedCertificate(f"bad certificate: {exc}") from exc
        cert = cls(basis, origin, gram, center, radius2, tuple(vertices))
        _check_shapes(cert)
        return cert

    @classmethod
    def loads(cls, text: str) -> "DelaunayCertificate":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedCertificate(f"invalid JSON: {exc}") from exc
        return cls.from_json(data)


def _check_shapes(cert: DelaunayCertificate) -> None:
    n = len(cert.center)
    if n == 0:
        raise MalformedCertificate("empty center")
    if len(cert.origin) != n:
        raise MalformedCertificate("origin and center lengths differ")
    for name, m in (("basis", cert.basis), ("gram", cert.gram)):
        if len(m) != n or any(len(row) != n for row in m):
            raise MalformedCertificate(f"{name} must be {n} x {n}")
    if not cert.vertices:
        raise MalformedCertificate("no vertices")
    if any(len(z) != n for z in cert.vertices):
        raise MalformedCertificate(f"vertex coordinates must have length {n}")


@dataclass
class DelaunayEmbedding:
    """Everything produced along the way to a certificate."""

    normalization: Normalization
    system: TwoLevelSystem
    lattice: PolytopeLattice
    quadrics: list
    ellipsoid: EllipsoidForm
    lattice_points: list
    certificate: DelaunayCertificate


def delaunay_embedding(P: VPolytope) -> DelaunayEmbedding:
    norm = normalizing_map(P)
    image = norm.image
    S = extract_two_level_system(image)
    L = lattice_of_polytope(image)
    quadrics = build_facet_quadrics(S)
    E = build_ellipsoid(quadrics, image.vertices)
    points = enumerate_lattice_in_ellipsoid(L, E)

    vertex_set = set(image.vertices)
    for u in points:
        if u not in vertex_set:
            raise EmptinessViolation(f"lattice point {u} inside the ellipsoid is not a vertex", u)
        if E(u) != 0:
            raise EmptinessViolation(f"vertex {u} strictly inside the ellipsoid", u)
    if len(points) != len(vertex_set):
        raise VerificationFailure("enumeration missed a vertex on the ellipsoid")

    cert = DelaunayCertificate(
        basis=L.basis,
        origin=L.origin,
        gram=L.gram(E.A),
        center=L.rational_coordinates(E.center),
        radius2=E.radius2,
        vertices=tuple(sorted(L.coordinates(v) for v in image.vertices)),
    )
    return DelaunayEmbedding(norm, S, L, quadrics, E, points, cert)


def delaunay_certificate(P: VPolytope) -> DelaunayCertificate:
    return delaunay_embedding(P).certificate


# -- verification ------------------------------------------------------------------------------

@dataclass
class CertificateReport:
    valid: bool = True
    problems: list = field(default_factory=list)
    interior_points: list = field(default_factory=list)
    unlisted_points: list = field(default_factory=list)
    off_sphere_vertices: list = field(default_factory=list)

    def fail(self, message: str) -> None:
        self.valid = False
        self.problems.append(message)

    def __bool__(self):
        return self.valid


def verify_certificate(cert: DelaunayCertificate, *, strict: bool = False) -> CertificateReport:
    """Re-check a certificate from its own data.

    With ``strict`` the first lattice point violating emptiness is raised as
    :class:`EmptinessViolation` instead of being reported.
    """
    _check_shapes(cert)
    report = CertificateReport()
    n = cert.dim
    verts = set(cert.vertices)
    if len(verts) != len(cert.vertices):
        report.fail("duplicate vertices")

    # lattice placement: integral HNF basis, integral origin, vertices generate it
    if not all(is_integral(x) for row in cert.basis for x in row):
        report.fail("basis has non-integer entries")
    elif rank(cert.basis) != n:
        report.fail("basis is not full rank")
    elif hermite_normal_form(cert.basis) != tuple(tuple(Fraction(x) for x in r) for r in cert.basis):
        report.fail("basis is not in Hermite normal form")
    if not all(is_integral(x) for x in cert.origin):
        report.fail("origin is not an integer point")
    z0 = cert.vertices[0]
    diffs = [vsub(z, z0) for z in cert.vertices[1:]]
    if not diffs or hermite_normal_form(diffs) != tuple(
        tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)
    ):
        report.fail("vertex differences do not generate the lattice")

    if not is_symmetric(cert.gram):
        report.fail("gram matrix is not symmetric")
        return report
    try:
        positive = ldlt(cert.gram).positive_definite
    except NotPositiveDefinite:
        positive = False
    if not positive:
        report.fail("gram matrix is not positive definite")
        return report

    def norm2(z):
        y = vsub(z, cert.center)
        return dot(y, mat_vec(cert.gram, y))

    for z in cert.vertices:
        if norm2(z) != cert.radius2:
            report.off_sphere_vertices.append(z)
    if report.off_sphere_vertices:
        report.fail(f"{len(report.off_sphere_vertices)} listed vertices are off the sphere")

    for z in enumerate_gram_ellipsoid(cert.gram, cert.center, cert.radius2):
        value = norm2(z)
        if value < cert.radius2:
            report.interior_points.append(z)
        elif z not in verts:
            report.unlisted_points.append(z)
    if report.interior_points:
        report.fail(f"{len(report.interior_points)} lattice points strictly inside the sphere")
        if strict:
            z = report.interior_points[0]
            raise EmptinessViolation(f"lattice point {z} strictly inside the sphere", z)
    if report.unlisted_points:
        report.fail(f"{len(report.unlisted_points)} lattice points on the sphere are not listed")
        if strict:
            z = report.unlisted_points[0]
            raise EmptinessViolation(f"lattice point {z} on the sphere is not listed", z)
    return report

