"""Exact rational scalars, vectors and matrices.

Scalars are :class:`fractions.Fraction` (always stored reduced, positive
denominator).  Vectors are tuples of fractions, matrices are tuples of row
tuples.  Everything here is a pure function on immutable values.

Elimination routines clear denominators row by row and then run Bareiss'
fraction-free elimination on integers, so intermediate entries stay bounded
by minors of the input.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    DimensionMismatch,
    MalformedInput,
    NegativeInput,
    NotDecomposable,
    NotPositiveDefinite,
    SingularMatrix,
)

Rational = Fraction
QVector = tuple  # tuple[Fraction, ...]
QMatrix = tuple  # tuple[QVector, ...]

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


# -- construction and serialization -----------------------------------------

def to_rational(x) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are rejected: no binary floating point may leak into the pipeline.
    """
    if isinstance(x, bool):
        raise MalformedInput(f"boolean is not a rational: {x!r}")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not _RATIONAL_RE.match(s):
            raise MalformedInput(f"not a rational literal: {x!r}")
        try:
            return Fraction(s)
        except ZeroDivisionError:
            raise MalformedInput(f"zero denominator: {x!r}") from None
    raise MalformedInput(f"cannot interpret {x!r} as an exact rational")


def format_rational(x) -> str:
    return str(Fraction(x))


def qvec(values: Iterable) -> QVector:
    return tuple(to_rational(v) for v in values)


def qmat(rows: Iterable[Iterable]) -> QMatrix:
    m = tuple(qvec(r) for r in rows)
    if m and len({len(r) for r in m}) != 1:
        raise DimensionMismatch("matrix rows have different lengths")
    return m


def identity(n: int) -> QMatrix:
    return tuple(
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(n))
        for i in range(n)
    )


def zero_matrix(rows: int, cols: int) -> QMatrix:
    return tuple(tuple(Fraction(0) for _ in range(cols)) for _ in range(rows))


def vector_to_json(v: Sequence) -> list[str]:
    return [format_rational(x) for x in v]


def matrix_to_json(m: Sequence[Sequence]) -> list[list[str]]:
    return [vector_to_json(r) for r in m]


# -- basic arithmetic ---------------------------------------------------------

def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise DimensionMismatch(f"dot of lengths {len(u)} and {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def vadd(u: Sequence, v: Sequence) -> QVector:
    if len(u) != len(v):
        raise DimensionMismatch(f"add of lengths {len(u)} and {len(v)}")
    return tuple(Fraction(a) + b for a, b in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> QVector:
    if len(u) != len(v):
        raise DimensionMismatch(f"subtract of lengths {len(u)} and {len(v)}")
    return tuple(Fraction(a) - b for a, b in zip(u, v))


def vscale(c, v: Sequence) -> QVector:
    return tuple(c * Fraction(a) for a in v)


def transpose(m: Sequence[Sequence]) -> QMatrix:
    return tuple(zip(*m))


def mat_vec(m: Sequence[Sequence], v: Sequence) -> QVector:
    return tuple(dot(row, v) for row in m)


def vec_mat(v: Sequence, m: Sequence[Sequence]) -> QVector:
    """Row vector times matrix, ``v @ m``."""
    if len(v) != len(m):
        raise DimensionMismatch(f"vector of length {len(v)} times {len(m)}-row matrix")
    if not m:
        return ()
    return tuple(dot(v, col) for col in zip(*m))


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> QMatrix:
    if a and len(a[0]) != len(b):
        raise DimensionMismatch("inner matrix dimensions disagree")
    cols = tuple(zip(*b))
    return tuple(tuple(dot(row, col) for col in cols) for row in a)


def is_integral(x) -> bool:
    return Fraction(x).denominator == 1


def _lcm_denominator(values: Iterable) -> int:
    out = 1
    for x in values:
        out = math.lcm(out, Fraction(x).denominator)
    return out


def _integer_rows(m: Sequence[Sequence]) -> list[list[int]]:
    """Scale each row by the lcm of its denominators (row space unchanged)."""
    rows = []
    for row in m:
        k = _lcm_denominator(row)
        rows.append([int(Fraction(x) * k) for x in row])
    return rows


def primitive_integer_vector(v: Sequence) -> tuple[int, ...]:
    """Positive multiple of ``v`` with coprime integer entries."""
    k = _lcm_denominator(v)
    ints = [int(Fraction(x) * k) for x in v]
    g = math.gcd(*ints) if ints else 0
    if g == 0:
        raise ValueError("zero vector has no primitive multiple")
    return tuple(x // g for x in ints)


# -- elimination --------------------------------------------------------------

def _bareiss(rows: list[list[int]], ncols: int | None = None):
    """In-place fraction-free row echelon form.

    Only the first ``ncols`` columns are used for pivoting (defaults to all),
    which lets callers carry an augmented right-hand side along.
    Returns ``(rank, pivot_columns)``.
    """
    nrows = len(rows)
    width = len(rows[0]) if rows else 0
    if ncols is None:
        ncols = width
    r = 0
    prev = 1
    pivots = []
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        top = rows[r]
        for i in range(r + 1, nrows):
            row = rows[i]
            f = row[c]
            for j in range(c + 1, width):
                row[j] = (p * row[j] - f * top[j]) // prev
            row[c] = 0
        prev = p
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return r, pivots


def rank(m: Sequence[Sequence]) -> int:
    """Exact rank over the rationals."""
    if not m or not len(m[0]):
        return 0
    rows = _integer_rows(m)
    r, _ = _bareiss(rows)
    return r


def solve(m: Sequence[Sequence], rhs: Sequence) -> QVector:
    """Exact solution of the square system ``m x = rhs``."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise DimensionMismatch("solve needs a square matrix")
    if len(rhs) != n:
        raise DimensionMismatch("right-hand side length differs from matrix size")
    if n == 0:
        return ()
    rows = _integer_rows([list(row) + [b] for row, b in zip(m, rhs)])
    r, _ = _bareiss(rows, ncols=n)
    if r < n:
        raise SingularMatrix(f"matrix has rank {r} < {n}")
    x = [Fraction(0)] * n
    for k in range(n - 1, -1, -1):
        row = rows[k]
        acc = Fraction(row[n]) - sum((row[j] * x[j] for j in range(k + 1, n)), Fraction(0))
        x[k] = acc / row[k]
    return tuple(x)


def determinant(m: Sequence[Sequence]) -> Fraction:
    n = len(m)
    if any(len(row) != n for row in m):
        raise DimensionMismatch("determinant needs a square matrix")
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    rows = []
    for row in m:
        k = _lcm_denominator(row)
        scale *= k
        rows.append([int(Fraction(x) * k) for x in row])
    sign = 1
    # Bareiss without bookkeeping of swaps; track them here instead.
    prev = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            sign = -sign
        p = rows[c][c]
        for i in range(c + 1, n):
            f = rows[i][c]
            for j in range(c + 1, n):
                rows[i][j] = (p * rows[i][j] - f * rows[c][j]) // prev
            rows[i][c] = 0
        prev = p
    return Fraction(sign * rows[n - 1][n - 1]) / scale


def inverse(m: Sequence[Sequence]) -> QMatrix:
    n = len(m)
    cols = [solve(m, e) for e in identity(n)]
    return transpose(cols)


def nullspace(m: Sequence[Sequence], ncols: int | None = None) -> list[QVector]:
    """Basis of the right kernel ``{x : m x = 0}`` via reduced row echelon form."""
    if ncols is None:
        if not m:
            raise DimensionMismatch("column count unknown for an empty matrix")
        ncols = len(m[0])
    rows = [[Fraction(x) for x in row] for row in m]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        rows[r] = [x / p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        x = [Fraction(0)] * ncols
        x[fcol] = Fraction(1)
        for i, pc in enumerate(pivots):
            x[pc] = -rows[i][fcol]
        basis.append(tuple(x))
    return basis


def hermite_normal_form(rows: Sequence[Sequence]) -> QMatrix:
    """Row Hermite normal form of the integer row span.

    The result has one row per rank, pivots strictly move right, pivots are
    positive, and every entry sharing a column with a pivot (in the rows above
    it) lies in ``[0, pivot)``.  Two integer matrices span the same lattice iff
    their forms are equal.
    """
    if not rows:
        return ()
    ncols = len(rows[0])
    work = []
    for row in rows:
        if len(row) != ncols:
            raise DimensionMismatch("rows have different lengths")
        if not all(is_integral(x) for x in row):
            raise ValueError("hermite_normal_form needs integer entries")
        work.append([int(Fraction(x)) for x in row])

    r = 0
    for c in range(ncols):
        # Euclid on column c across the remaining rows
        while True:
            live = [i for i in range(r, len(work)) if work[i][c] != 0]
            if not live:
                break
            best = min(live, key=lambda i: abs(work[i][c]))
            work[r], work[best] = work[best], work[r]
            if len(live) == 1:
                break
            pivot_row = work[r]
            p = pivot_row[c]
            for i in range(r + 1, len(work)):
                q = work[i][c] // p
                if q:
                    work[i] = [a - q * b for a, b in zip(work[i], pivot_row)]
        if r >= len(work) or work[r][c] == 0:
            continue
        if work[r][c] < 0:
            work[r] = [-a for a in work[r]]
        p = work[r][c]
        for i in range(r):
            q = work[i][c] // p
            if q:
                work[i] = [a - q * b for a, b in zip(work[i], work[r])]
        r += 1
        if r == len(work):
            break
    return tuple(tuple(Fraction(x) for x in row) for row in work[:r] if any(row))


# -- LDL^T ---------------------------------------------------------------------

@dataclass(frozen=True)
class LDLT:
    L: QMatrix
    D: QVector

    @property
    def positive_definite(self) -> bool:
        return all(d > 0 for d in self.D)

    def reconstruct(self) -> QMatrix:
        n = len(self.D)
        return tuple(
            tuple(
                sum((self.L[i][k] * self.D[k] * self.L[j][k] for k in range(n)), Fraction(0))
                for j in range(n)
            )
            for i in range(n)
        )


def is_symmetric(a: Sequence[Sequence]) -> bool:
    n = len(a)
    return all(len(row) == n for row in a) and all(
        a[i][j] == a[j][i] for i in range(n) for j in range(i + 1, n)
    )


def ldlt(a: Sequence[Sequence], *, require_positive_definite: bool = False) -> LDLT:
    """Exact ``A = L diag(D) L^T`` without pivoting.

    A zero pivot is tolerated only when the rest of its column vanishes
    (positive semidefinite directions); otherwise :class:`NotDecomposable`.
    With ``require_positive_definite`` any pivot ``<= 0`` raises
    :class:`NotPositiveDefinite` carrying the pivots.
    """
    if not is_symmetric(a):
        raise DimensionMismatch("ldlt needs a square symmetric matrix")
    n = len(a)
    L = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    D: list[Fraction] = []
    for k in range(n):
        dk = Fraction(a[k][k]) - sum((L[k][j] ** 2 * D[j] for j in range(k)), Fraction(0))
        col = [
            Fraction(a[i][k]) - sum((L[i][j] * L[k][j] * D[j] for j in range(k)), Fraction(0))
            for i in range(k + 1, n)
        ]
        D.append(dk)
        if require_positive_definite and dk <= 0:
            raise NotPositiveDefinite(f"pivot {k} is {dk}", D)
        if dk == 0:
            if any(col):
                raise NotDecomposable(f"zero pivot {k} with nonzero column", D)
            continue
        for off, i in enumerate(range(k + 1, n)):
            L[i][k] = col[off] / dk
    return LDLT(tuple(tuple(r) for r in L), tuple(D))


def isqrt_bounds(x) -> tuple[int, int]:
    """Integers ``lo <= sqrt(x) <= hi`` with ``hi - lo <= 1``."""
    x = to_rational(x)
    if x < 0:
        raise NegativeInput(f"square root of negative {x}")
    p, q = x.numerator, x.denominator
    lo = math.isqrt(p * q) // q
    hi = lo if lo * lo == x else lo + 1
    return lo, hi


# -- affine maps -----------------------------------------------------------------

@dataclass(frozen=True)
class AffineMap:
    """``x -> linear @ x + translate``."""

    linear: QMatrix
    translate: QVector

    def __post_init__(self):
        object.__setattr__(self, "linear", qmat(self.linear))
        object.__setattr__(self, "translate", qvec(self.translate))
        d = len(self.translate)
        if len(self.linear) != d or any(len(r) != d for r in self.linear):
            raise DimensionMismatch("affine map needs a d x d linear part and length-d translation")

    @classmethod
    def identity(cls, d: int) -> "AffineMap":
        return cls(identity(d), (0,) * d)

    @property
    def dim(self) -> int:
        return len(self.translate)

    def is_invertible(self) -> bool:
        return rank(self.linear) == self.dim

    def __call__(self, x: Sequence) -> QVector:
        return vadd(mat_vec(self.linear, x), self.translate)

    def inverse(self) -> "AffineMap":
        inv = inverse(self.linear)
        return AffineMap(inv, vscale(-1, mat_vec(inv, self.translate)))

    def compose(self, inner: "AffineMap") -> "AffineMap":
        """``self o inner``."""
        return AffineMap(
            mat_mul(self.linear, inner.linear),
            vadd(mat_vec(self.linear, inner.translate), self.translate),
        )

    def to_json(self) -> dict:
        return {"linear": matrix_to_json(self.linear), "translate": vector_to_json(self.translate)}

    @classmethod
    def from_json(cls, data) -> "AffineMap":
        try:
            return cls(qmat(data["linear"]), qvec(data["translate"]))
        except (KeyError, TypeError) as exc:
            raise MalformedInput(f"bad affine map document: {exc}") from exc
