"""Acceptance gate: one check per criterion, each under its own time limit.

Run with ``pytest tests/test_acceptance.py`` (a PASS/FAIL table is printed at
the end of the session) or directly with ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import dataclasses
import random
import sys
import time

import pytest

from corpus import (
    HANNER_EXPRESSIONS,
    HEXAGON,
    PENTAGON,
    perfect_corpus,
    random_affine_combination,
    random_unimodular_affine,
)
from prismatoid.delaunay import (
    box_scan,
    classify_level_combination,
    delaunay_certificate,
    delaunay_embedding,
    enumerate_lattice_in_ellipsoid,
    lattice_of_polytope,
    top_weight,
    verify_certificate,
)
from prismatoid.errors import NotPerfectPrismatoid
from prismatoid.generators import hanner_polytope, make_crosspolytope, make_cube, make_simplex, total_face_count
from prismatoid.normalize import to_01_polytope
from prismatoid.polytope import f_vector
from prismatoid.two_level import extract_two_level_system, is_perfect_prismatoid

RESULTS: list[str] = []

# cubes, cross-polytopes and simplices up to d = 5, the prisms, the pyramid, Hanner up to d = 4
CORPUS = perfect_corpus(5)
CORPUS4 = {n: P for n, P in CORPUS.items() if P.dim <= 4}


def _gate(name: str, limit: float, check) -> None:
    start = time.perf_counter()
    error = None
    try:
        detail = check()
    except AssertionError as exc:
        error = f"assertion: {exc}" if str(exc) else "assertion failed"
        detail = ""
    elapsed = time.perf_counter() - start
    if error is None and elapsed >= limit:
        error = f"took {elapsed:.2f} s, limit {limit:g} s"
    status = "PASS" if error is None else "FAIL"
    line = f"{status}  {name:<26} {elapsed:7.2f} s / {limit:g} s  {detail or ''}{error or ''}"
    RESULTS.append(line)
    print(line)
    if error is not None:
        pytest.fail(f"{name}: {error}")


# -- checks -----------------------------------------------------------------------

def check_3d_equality():
    assert total_face_count(make_cube(3)) == 27
    assert total_face_count(make_crosspolytope(3)) == 27
    return "cube 27, octahedron 27"


def check_hanner_3d():
    for e in HANNER_EXPRESSIONS:
        total = total_face_count(hanner_polytope(e))
        assert total == 3 ** e.dim, f"{e}: {total} faces"
    return f"{len(HANNER_EXPRESSIONS)} expressions"


def check_two_level_systems():
    for name, P in CORPUS.items():
        S = extract_two_level_system(P)
        for k, f in enumerate(S.facets):
            for j, v in enumerate(P.vertices):
                on_top, on_bottom = f.value(v) == f.b, f.value(v) == f.c
                assert on_top != on_bottom, f"{name} facet {k} vertex {j}"
                assert (j in f.top) == on_top
    try:
        extract_two_level_system(HEXAGON)
    except NotPerfectPrismatoid as exc:
        assert len(exc.values) == 3, exc.values
    else:
        raise AssertionError("hexagon accepted")
    return f"{len(CORPUS)} polytopes, hexagon rejected"


def check_normalization():
    for name, P in CORPUS.items():
        image, T = to_01_polytope(P)
        assert T.is_invertible(), name
        assert all(c in (0, 1) for v in image.vertices for c in v), name
        assert f_vector(image) == f_vector(P), name
        assert image.apply(T.inverse()) == P, name
    return f"{len(CORPUS)} polytopes"


def check_delaunay():
    count = 0
    for name, P in CORPUS4.items():
        emb = delaunay_embedding(P)
        assert verify_certificate(emb.certificate), name
        image = emb.normalization.image
        oracle = box_scan(emb.lattice, emb.ellipsoid, image.vertices)
        assert enumerate_lattice_in_ellipsoid(emb.lattice, emb.ellipsoid) == oracle, name
        assert oracle == sorted(image.vertices), name
        count += 1
    for P in (make_cube(5), make_simplex(5)):
        assert verify_certificate(delaunay_certificate(P))
        count += 1
    return f"{count} certificates, {len(CORPUS4)} oracle scans"


def check_lattice_nonnegativity(samples: int = 1000):
    rng = random.Random(2024)
    total = 0
    for name, P in CORPUS.items():
        S = extract_two_level_system(P)
        L = lattice_of_polytope(P)
        # corpus vertices are integral, so plain ints keep the loop fast and exact
        verts = [tuple(int(x) for x in v) for v in S.vertices]
        for s in range(samples):
            n = random_affine_combination(len(verts), rng)
            u = tuple(sum(k * v[j] for k, v in zip(n, verts)) for j in range(S.dim))
            for i, f in enumerate(S.facets):
                p = top_weight(S, i, n)
                level = sum(a * x for a, x in zip(f.a, u))
                assert level == p * f.b + (1 - p) * f.c, (name, u, i)
                q = (level - f.b) * (level - f.c)
                assert q >= 0, (name, u, i, q)
                assert (q == 0) == (p in (0, 1)), (name, u, i, p, q)
            if s % 100 == 0:
                # functional-value route agrees with the coefficient route
                for i in range(len(S.facets)):
                    assert classify_level_combination(S, i, u, L).p == top_weight(S, i, n)
            total += 1
    return f"{total} lattice points"


def check_mutations():
    cert = delaunay_certificate(make_cube(3))
    assert verify_certificate(cert)
    inflated = dataclasses.replace(cert, radius2=cert.radius2 + 1)
    deleted = dataclasses.replace(cert, vertices=cert.vertices[1:])
    basis = list(cert.basis)
    basis[1] = tuple(x + (k == 0) / 2 for k, x in enumerate(basis[1]))
    off_lattice = dataclasses.replace(cert, basis=tuple(basis))
    for label, bad in (("inflated radius", inflated), ("deleted vertex", deleted), ("basis edit", off_lattice)):
        assert not verify_certificate(bad), label
    return "3 of 3 rejected"


def check_affine_invariance(transforms: int = 20):
    rng = random.Random(11)
    polytopes = {**CORPUS4, "hexagon": HEXAGON, "pentagon": PENTAGON}
    for name, P in polytopes.items():
        perfect = bool(is_perfect_prismatoid(P))
        fv = f_vector(P)
        for _ in range(transforms):
            Q = P.apply(random_unimodular_affine(P.dim, rng))
            assert bool(is_perfect_prismatoid(Q)) == perfect, name
            assert f_vector(Q) == fv, name
    return f"{len(polytopes)} polytopes x {transforms}"


CRITERIA = [
    ("3^d equality", 1, check_3d_equality),
    ("Hanner 3^d", 10, check_hanner_3d),
    ("two-level systems", 30, check_two_level_systems),
    ("0/1 normalization", 30, check_normalization),
    ("Delaunay certificates", 120, check_delaunay),
    ("lattice nonnegativity", 60, check_lattice_nonnegativity),
    ("mutation detection", 5, check_mutations),
    ("affine invariance", 60, check_affine_invariance),
]


@pytest.mark.parametrize("name, limit, check", CRITERIA, ids=[c[0].replace(" ", "_") for c in CRITERIA])
def test_criterion(name, limit, check):
    _gate(name, limit, check)


if __name__ == "__main__":
    failed = 0
    for name, limit, check in CRITERIA:
        try:
            _gate(name, limit, check)
        except pytest.fail.Exception:
            failed += 1
    sys.exit(1 if failed else 0)
