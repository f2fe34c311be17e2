"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class PrismatoidError(Exception):
    """Base class for every error raised by this package."""


class MalformedInput(PrismatoidError, ValueError):
    pass


class DimensionMismatch(PrismatoidError, ValueError):
    pass


# -- exact linear algebra ----------------------------------------------------

class SingularMatrix(PrismatoidError, ArithmeticError):
    pass


class NotPositiveDefinite(PrismatoidError, ArithmeticError):
    """Raised when a symmetric matrix fails the LDL^T positivity test.

    ``diagonal`` holds the pivots computed before (and including) the failure.
    """

    def __init__(self, message, diagonal=()):
        super().__init__(message)
        self.diagonal = tuple(diagonal)


class NotDecomposable(NotPositiveDefinite):
    """Zero pivot with a nonzero remaining column; the matrix is indefinite."""


class NegativeInput(PrismatoidError, ValueError):
    pass


# -- polytopes ---------------------------------------------------------------

class DuplicateVertex(MalformedInput):
    pass


class NotFullDimensional(PrismatoidError):
    def __init__(self, message, affine_dim=None, dim=None):
        super().__init__(message)
        self.affine_dim = affine_dim
        self.dim = dim


class Unbounded(PrismatoidError):
    pass


class EmptyPolytope(PrismatoidError):
    pass


class NotCentrallySymmetric(PrismatoidError):
    pass


# -- two-level systems and normalization -------------------------------------

class NotPerfectPrismatoid(PrismatoidError):
    """A facet functional takes more than two values on the vertex set."""

    def __init__(self, facet_index, values, normal=None):
        self.facet_index = facet_index
        self.values = tuple(values)
        self.normal = normal
        shown = ", ".join(str(v) for v in self.values)
        super().__init__(
            f"facet {facet_index} takes {len(self.values)} distinct values: {shown}"
        )


class DegenerateNormals(PrismatoidError):
    pass


class VerificationFailure(PrismatoidError, AssertionError):
    pass


# -- Delaunay embedding ------------------------------------------------------

class NonIntegerVertices(PrismatoidError, ValueError):
    pass


class NotInLattice(PrismatoidError, ValueError):
    pass


class EmptinessViolation(PrismatoidError):
    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class MalformedCertificate(MalformedInput):
    pass
