"""Standard test polytopes, Hanner polytopes and face-count checks.

Hanner expressions use a small prefix grammar::

    expr := "I" | "(" ("P" | "S") expr expr ")"

``I`` is the segment ``[-1, 1]``, ``P`` the Cartesian product and ``S`` the
free sum.  Whitespace is ignored.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Union

from .errors import MalformedInput, NotCentrallySymmetric
from .polytope import VPolytope, central_symmetry_center, f_vector


def _check_dim(d: int) -> None:
    if not isinstance(d, int) or d < 1:
        raise ValueError(f"dimension must be a positive integer, got {d!r}")


def make_cube(d: int) -> VPolytope:
    """``conv {0, 1}^d``."""
    _check_dim(d)
    return VPolytope(d, tuple(itertools.product((0, 1), repeat=d)))


def make_crosspolytope(d: int) -> VPolytope:
    """``conv {±e_i}``."""
    _check_dim(d)
    verts = []
    for i in range(d):
        for s in (1, -1):
            verts.append(tuple(s if j == i else 0 for j in range(d)))
    return VPolytope(d, tuple(verts))


def make_simplex(d: int) -> VPolytope:
    """``conv {0, e_1, ..., e_d}``."""
    _check_dim(d)
    verts = [(0,) * d] + [tuple(int(j == i) for j in range(d)) for i in range(d)]
    return VPolytope(d, tuple(verts))


# -- Hanner expressions --------------------------------------------------------

@dataclass(frozen=True)
class Segment:
    @property
    def dim(self) -> int:
        return 1

    def __str__(self):
        return "I"


@dataclass(frozen=True)
class Product:
    left: "HannerExpression"
    right: "HannerExpression"

    @property
    def dim(self) -> int:
        return self.left.dim + self.right.dim

    def __str__(self):
        return f"(P {self.left} {self.right})"


@dataclass(frozen=True)
class FreeSum:
    left: "HannerExpression"
    right: "HannerExpression"

    @property
    def dim(self) -> int:
        return self.left.dim + self.right.dim

    def __str__(self):
        return f"(S {self.left} {self.right})"


HannerExpression = Union[Segment, Product, FreeSum]


def parse_hanner(text: str) -> HannerExpression:
    tokens = [ch for ch in text if not ch.isspace()]
    pos = 0

    def expr():
        nonlocal pos
        if pos >= len(tokens):
            raise MalformedInput(f"unexpected end of Hanner expression {text!r}")
        tok = tokens[pos]
        pos += 1
        if tok == "I":
            return Segment()
        if tok != "(":
            raise MalformedInput(f"unexpected {tok!r} in Hanner expression {text!r}")
        if pos >= len(tokens) or tokens[pos] not in "PS":
            raise MalformedInput(f"expected P or S after '(' in {text!r}")
        op = tokens[pos]
        pos += 1
        left = expr()
        right = expr()
        if pos >= len(tokens) or tokens[pos] != ")":
            raise MalformedInput(f"missing ')' in Hanner expression {text!r}")
        pos += 1
        return Product(left, right) if op == "P" else FreeSum(left, right)

    out = expr()
    if pos != len(tokens):
        raise MalformedInput(f"trailing input in Hanner expression {text!r}")
    return out


def hanner_expressions(leaves: int) -> Iterator[HannerExpression]:
    """Every expression tree with exactly ``leaves`` segments."""
    if leaves == 1:
        yield Segment()
        return
    for k in range(1, leaves):
        for left in hanner_expressions(k):
            for right in hanner_expressions(leaves - k):
                yield Product(left, right)
                yield FreeSum(left, right)


def _hanner_vertices(e: HannerExpression) -> tuple:
    if isinstance(e, Segment):
        return ((Fraction(-1),), (Fraction(1),))
    left = _hanner_vertices(e.left)
    right = _hanner_vertices(e.right)
    if isinstance(e, Product):
        return tuple(u + v for u in left for v in right)
    zl = (Fraction(0),) * e.left.dim
    zr = (Fraction(0),) * e.right.dim
    return tuple(u + zr for u in left) + tuple(zl + v for v in right)


@lru_cache(maxsize=None)
def hanner_polytope(e: HannerExpression) -> VPolytope:
    """Hanner polytope of an expression, centered at the origin."""
    return VPolytope(e.dim, _hanner_vertices(e))


# -- face counts -----------------------------------------------------------------

def total_face_count(P: VPolytope) -> int:
    """Number of nonempty faces including ``P`` itself."""
    return f_vector(P).total_with_self


def check_hanner_3d(e: HannerExpression) -> bool:
    return total_face_count(hanner_polytope(e)) == 3 ** e.dim


@dataclass(frozen=True)
class KalaiCheck:
    total: int
    bound: int
    satisfied: bool

    @property
    def equality(self) -> bool:
        return self.total == self.bound


def kalai_check(P: VPolytope) -> KalaiCheck:
    if central_symmetry_center(P) is None:
        raise NotCentrallySymmetric("polytope is not centrally symmetric")
    total = total_face_count(P)
    bound = 3 ** P.dim
    return KalaiCheck(total, bound, total >= bound)
