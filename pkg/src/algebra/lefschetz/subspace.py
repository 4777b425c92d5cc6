"""
Exact subspaces of Q^n, stored as reduced row-echelon bases
"""
from typing import Iterable, List, Optional

import sympy as sp

from src.algebra.errors import AlgebraError


def column(values: Iterable) -> sp.Matrix:
    return sp.Matrix([sp.Rational(str(v)) for v in values])


class Subspace:
    """Span of exact rational vectors inside Q^ambient"""

    def __init__(self, ambient: int, rows: Optional[sp.Matrix] = None):
        self.ambient = ambient
        if rows is None or rows.rows == 0:
            self.rows = sp.zeros(0, ambient)
            return
        if rows.cols != ambient:
            raise AlgebraError(f"Vectors of length {rows.cols} in an ambient space of dimension {ambient}")
        reduced, pivots = rows.rref()
        self.rows = reduced[: len(pivots), :]

    @classmethod
    def span(cls, ambient: int, vectors: Iterable[sp.Matrix]) -> "Subspace":
        vectors = [sp.Matrix(v) for v in vectors]
        if not vectors:
            return cls(ambient)
        return cls(ambient, sp.Matrix.vstack(*[v.reshape(1, ambient) for v in vectors]))

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient)

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        return cls(ambient, sp.eye(ambient))

    @classmethod
    def kernel(cls, matrix: sp.Matrix) -> "Subspace":
        return cls.span(matrix.cols, matrix.nullspace())

    @classmethod
    def image(cls, matrix: sp.Matrix) -> "Subspace":
        return cls.span(matrix.rows, matrix.columnspace())

    @property
    def dim(self) -> int:
        return self.rows.rows

    def basis(self) -> List[sp.Matrix]:
        return [self.rows[i, :].T for i in range(self.dim)]

    def is_zero(self) -> bool:
        return self.dim == 0

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.ambient, sp.Matrix.vstack(self.rows, other.rows))

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Subspace.zero(self.ambient)
        stacked = sp.Matrix.hstack(self.rows.T, -other.rows.T)
        vectors = [self.rows.T * sol[: self.dim, :] for sol in stacked.nullspace()]
        return Subspace.span(self.ambient, vectors)

    def contains(self, other: "Subspace") -> bool:
        return (self + other).dim == self.dim

    def contains_vector(self, vector: sp.Matrix) -> bool:
        return self.contains(Subspace.span(self.ambient, [vector]))

    def apply(self, matrix: sp.Matrix) -> "Subspace":
        """Image of the subspace under a linear map"""
        return Subspace.span(matrix.rows, [matrix * v for v in self.basis()])

    def preimage(self, matrix: sp.Matrix) -> "Subspace":
        """All v with matrix * v in this subspace"""
        if self.dim == self.ambient:
            return Subspace.full(matrix.cols)
        if self.is_zero():
            return Subspace.kernel(matrix)
        annihilator = sp.Matrix.hstack(*self.rows.nullspace()).T
        return Subspace.kernel(annihilator * matrix)

    def complement_in(self, larger: "Subspace") -> List[sp.Matrix]:
        """Basis vectors of `larger` that extend a basis of self to a basis of `larger`"""
        if not larger.contains(self):
            raise AlgebraError("complement_in needs a containing subspace")
        out: List[sp.Matrix] = []
        current = self
        for v in larger.basis():
            extended = current + Subspace.span(self.ambient, [v])
            if extended.dim > current.dim:
                out.append(v)
                current = extended
        return out

    def _check(self, other: "Subspace") -> None:
        if self.ambient != other.ambient:
            raise AlgebraError(f"Subspaces of Q^{self.ambient} and Q^{other.ambient} cannot be combined")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.rows == other.rows

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim} in Q^{self.ambient})"


def coordinates(vector: sp.Matrix, basis: List[sp.Matrix], modulo: Subspace) -> List[sp.Rational]:
    """Coefficients of `vector` on `basis` modulo a subspace; basis plus modulo must be independent"""
    columns = list(basis) + modulo.basis()
    if not columns:
        if any(x != 0 for x in vector):
            raise AlgebraError("Vector is not in the span of an empty basis")
        return []
    solution, params = sp.Matrix.hstack(*columns).gauss_jordan_solve(vector)
    if params.rows:
        raise AlgebraError("Basis vectors are not independent modulo the subspace")
    return [solution[i, 0] for i in range(len(basis))]
