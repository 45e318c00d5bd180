"""
Euclidean lattices with exact Arakelov degrees
A lattice is Z^r with a positive-definite rational Gram matrix. Saturated
sublattices correspond to subspaces of Q^r, which is how LatticeCategory
computes sums, intersections, images and preimages.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Sequence, Tuple

from ..core.errors import (
    DimensionMismatchError,
    LatticeError,
    NotSaturatedError,
    RankDeficientError,
)
from ..core.exact import ExactDegree, LogRationalDegree, compare_log_rational
from ..core.filtration import SubobjectApi
from ..linalg.fields import QQ
from ..linalg.integer import IntMatrix, complete_basis, row_span_canonical, saturation_rows
from ..linalg.matrix import (
    RationalMatrix,
    congruence,
    determinant,
    inverse,
    is_positive_definite,
    is_positive_semidefinite,
    is_symmetric,
    matmul,
    schur_complement,
    to_matrix,
    transpose,
)
from ..linalg.subspace import LinearMap, Subspace, VectorSpace, matrix_rank


@dataclass(frozen=True)
class EuclideanLattice:
    """Z^r with the metric <x, y> = x^T G y"""

    gram: RationalMatrix

    def __post_init__(self):
        gram = to_matrix(self.gram)
        object.__setattr__(self, "gram", gram)
        if not is_symmetric(gram):
            raise LatticeError("Gram matrix must be symmetric")
        if not is_positive_definite(gram):
            raise LatticeError("Gram matrix must be positive definite")

    @classmethod
    def standard(cls, rank: int) -> "EuclideanLattice":
        return cls(tuple(tuple(Fraction(int(i == j)) for j in range(rank)) for i in range(rank)))

    @classmethod
    def diagonal(cls, entries: Sequence) -> "EuclideanLattice":
        n = len(entries)
        return cls(tuple(tuple(Fraction(entries[i]) if i == j else Fraction(0) for j in range(n)) for i in range(n)))

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def module(self) -> "FreeModule":
        return FreeModule(self.rank)

    def determinant(self) -> Fraction:
        return determinant(self.gram)

    def degree(self) -> ExactDegree:
        return LogRationalDegree(self.determinant())

    def norm(self, vector: Sequence[int]) -> Fraction:
        return sum(
            (self.gram[i][j] * vector[i] * vector[j] for i in range(self.rank) for j in range(self.rank)),
            Fraction(0),
        )

    def dual(self) -> "EuclideanLattice":
        return dual_lattice(self)


@dataclass(frozen=True)
class FreeModule:
    """Z^rank, the underlying object of a lattice"""

    rank: int


@dataclass(frozen=True)
class Sublattice:
    """
    Sublattice of Z^ambient_rank spanned by independent integer vectors

    The generators are kept in Hermite normal form, so equal sublattices are
    equal as values.
    """

    ambient_rank: int
    generators: IntMatrix = ()

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.generators)
        if any(len(row) != self.ambient_rank for row in rows):
            raise DimensionMismatchError(f"generators must have length {self.ambient_rank}")
        if matrix_rank(QQ, rows, self.ambient_rank) != len(rows):
            raise RankDeficientError("sublattice generators are linearly dependent")
        object.__setattr__(self, "generators", row_span_canonical(rows, self.ambient_rank))

    @classmethod
    def span(cls, ambient_rank: int, vectors: Sequence[Sequence[int]]) -> "Sublattice":
        """Sublattice generated by possibly dependent vectors"""
        rows = [tuple(int(x) for x in v) for v in vectors]
        return cls(ambient_rank, row_span_canonical(rows, ambient_rank))

    @classmethod
    def zero(cls, ambient_rank: int) -> "Sublattice":
        return cls(ambient_rank, ())

    @classmethod
    def full(cls, ambient_rank: int) -> "Sublattice":
        return cls(ambient_rank, tuple(tuple(int(i == j) for j in range(ambient_rank)) for i in range(ambient_rank)))

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def basis_columns(self) -> IntMatrix:
        """The r x s basis matrix S with the generators as columns"""
        return tuple(tuple(row[j] for row in self.generators) for j in range(self.ambient_rank))

    def canonical(self) -> "Sublattice":
        return self

    def is_saturated(self) -> bool:
        return saturation_rows(self.generators, self.ambient_rank) == self.generators

    def generic_fibre(self) -> Subspace:
        return Subspace(QQ, self.ambient_rank, self.generators)

    def __repr__(self) -> str:
        return f"Sublattice(Z^{self.ambient_rank}: {[list(g) for g in self.generators]})"


def arakelov_degree(lattice: EuclideanLattice, sub: Sublattice = None) -> ExactDegree:
    """-1/2 log det(S^T G S) for the sublattice with basis S"""
    if sub is None:
        return lattice.degree()
    _check(lattice, sub)
    return LogRationalDegree(determinant(induced_gram(lattice, sub)))


def induced_gram(lattice: EuclideanLattice, sub: Sublattice) -> RationalMatrix:
    _check(lattice, sub)
    return congruence(lattice.gram, sub.basis_columns, sub.rank)


def induced_lattice(lattice: EuclideanLattice, sub: Sublattice) -> Tuple[EuclideanLattice, "IntegerMap"]:
    """sub with the restricted metric, and its inclusion"""
    inclusion = IntegerMap(FreeModule(sub.rank), lattice.module, sub.basis_columns)
    return EuclideanLattice(induced_gram(lattice, sub)), inclusion


def saturate(sub: Sublattice) -> Sublattice:
    """Z^r intersected with the Q-span of sub"""
    return Sublattice(sub.ambient_rank, saturation_rows(sub.generators, sub.ambient_rank))


def quotient_lattice(lattice: EuclideanLattice, sub: Sublattice) -> Tuple[EuclideanLattice, "IntegerMap"]:
    """
    Quotient by a saturated sublattice with the quotient metric

    The basis of sub is completed to a basis of Z^r; in that basis the Gram
    matrix is [[A, B], [B^T, D]] and the quotient Gram is D - B^T A^{-1} B.
    """
    _check(lattice, sub)
    if not sub.is_saturated():
        raise NotSaturatedError(f"{sub!r} is not saturated")
    s = sub.rank
    completion, inverse_completion = complete_basis(sub.generators, lattice.rank)
    gram = congruence(lattice.gram, completion, lattice.rank)
    quotient = EuclideanLattice(schur_complement(gram, s))
    projection = IntegerMap(lattice.module, FreeModule(lattice.rank - s), inverse_completion[s:])
    return quotient, projection


def dual_lattice(lattice: EuclideanLattice) -> EuclideanLattice:
    """Hom(L, Z) in the dual basis, with Gram G^{-1}"""
    if lattice.rank == 0:
        return lattice
    return EuclideanLattice(inverse(lattice.gram))


def is_compatible(phi: Sequence[Sequence[int]], source: EuclideanLattice, target: EuclideanLattice) -> bool:
    """|phi| <= 1: G_source - phi^T G_target phi is positive semidefinite"""
    rows = tuple(tuple(int(x) for x in row) for row in phi)
    if len(rows) != target.rank or any(len(row) != source.rank for row in rows):
        raise DimensionMismatchError(
            f"map from rank {source.rank} to rank {target.rank} needs a {target.rank} x {source.rank} matrix"
        )
    if source.rank == 0:
        return True
    pulled = congruence(target.gram, rows, source.rank) if target.rank else tuple(
        tuple(Fraction(0) for _ in range(source.rank)) for _ in range(source.rank)
    )
    difference = tuple(
        tuple(source.gram[i][j] - pulled[i][j] for j in range(source.rank)) for i in range(source.rank)
    )
    return is_positive_semidefinite(difference)


def exact_slope_compare(d1, r1: int, d2, r2: int) -> int:
    """Sign of -log(d1)/(2 r1) - (-log(d2)/(2 r2))"""
    return compare_log_rational(Fraction(d1), r1, Fraction(d2), r2)


def generic_fibre(sub: Sublattice) -> Subspace:
    return sub.generic_fibre()


def from_generic_fibre(space: Subspace) -> Sublattice:
    """The saturated sublattice Z^r intersected with a Q-subspace"""
    rows = []
    for row in space.basis:
        scale = reduce(lambda a, b: a * b // gcd(a, b), (Fraction(x).denominator for x in row), 1)
        rows.append(tuple(int(Fraction(x) * scale) for x in row))
    return saturate(Sublattice(space.dim, tuple(rows)))


@dataclass(frozen=True)
class IntegerMap:
    """Z-linear map; matrix has target.rank rows and source.rank columns"""

    source: FreeModule
    target: FreeModule
    matrix: IntMatrix

    def __post_init__(self):
        matrix = tuple(tuple(int(x) for x in row) for row in self.matrix)
        if len(matrix) != self.target.rank or any(len(row) != self.source.rank for row in matrix):
            raise DimensionMismatchError(f"matrix shape does not match {self.source.rank} -> {self.target.rank}")
        object.__setattr__(self, "matrix", matrix)

    @classmethod
    def identity(cls, module: FreeModule) -> "IntegerMap":
        return cls(module, module, tuple(tuple(int(i == j) for j in range(module.rank)) for i in range(module.rank)))

    def rational(self) -> LinearMap:
        return LinearMap(VectorSpace(QQ, self.source.rank), VectorSpace(QQ, self.target.rank), self.matrix)

    def apply(self, vector: Sequence[int]) -> Tuple[int, ...]:
        return tuple(sum(a * b for a, b in zip(row, vector)) for row in self.matrix)

    def compose(self, inner: "IntegerMap") -> "IntegerMap":
        if inner.target != self.source:
            raise DimensionMismatchError("composition of non-composable maps")
        if not self.target.rank:
            return IntegerMap(inner.source, self.target, ())
        if not self.source.rank:
            return IntegerMap(inner.source, self.target, tuple((0,) * inner.source.rank for _ in range(self.target.rank)))
        product = matmul(self.matrix, inner.matrix, self.source.rank)
        return IntegerMap(inner.source, self.target, tuple(tuple(int(x) for x in row) for row in product))

    def transpose(self) -> IntMatrix:
        return tuple(tuple(int(x) for x in row) for row in transpose(self.matrix, self.source.rank))


@dataclass(frozen=True)
class LatticeCategory(SubobjectApi):
    """Free Z-modules with saturated sublattices as subobjects"""

    def rank(self, sub: Sublattice) -> int:
        return sub.rank

    def contains(self, big: Sublattice, small: Sublattice) -> bool:
        return big.generic_fibre().contains(small.generic_fibre())

    def equal(self, a: Sublattice, b: Sublattice) -> bool:
        return a.generic_fibre() == b.generic_fibre()

    def intersect(self, a: Sublattice, b: Sublattice) -> Sublattice:
        return from_generic_fibre(a.generic_fibre() & b.generic_fibre())

    def sum(self, a: Sublattice, b: Sublattice) -> Sublattice:
        return from_generic_fibre(a.generic_fibre() + b.generic_fibre())

    def image(self, f: IntegerMap, sub: Sublattice) -> Sublattice:
        return from_generic_fibre(f.rational().image_of(sub.generic_fibre()))

    def preimage(self, f: IntegerMap, sub: Sublattice) -> Sublattice:
        return from_generic_fibre(f.rational().preimage_of(sub.generic_fibre()))

    def zero(self, obj: FreeModule) -> Sublattice:
        return Sublattice.zero(obj.rank)

    def full(self, obj: FreeModule) -> Sublattice:
        return Sublattice.full(obj.rank)

    def source(self, f: IntegerMap) -> FreeModule:
        return f.source

    def target(self, f: IntegerMap) -> FreeModule:
        return f.target

    def compose(self, g: IntegerMap, f: IntegerMap) -> IntegerMap:
        return g.compose(f)

    def direct_sum(self, x: FreeModule, y: FreeModule) -> FreeModule:
        return FreeModule(x.rank + y.rank)

    def sum_embedding(self, u: Sublattice, v: Sublattice, x: FreeModule, y: FreeModule) -> Sublattice:
        rows = [tuple(r) + (0,) * y.rank for r in u.generators]
        rows += [(0,) * x.rank + tuple(r) for r in v.generators]
        return Sublattice(x.rank + y.rank, tuple(rows))

    def graph(self, f: IntegerMap) -> IntegerMap:
        """x -> (x, f(x))"""
        n = f.source.rank
        identity = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        return IntegerMap(f.source, self.direct_sum(f.source, f.target), tuple(identity) + f.matrix)

    def second_projection(self, x: FreeModule, y: FreeModule) -> IntegerMap:
        rows = tuple(tuple(int(j == x.rank + i) for j in range(x.rank + y.rank)) for i in range(y.rank))
        return IntegerMap(self.direct_sum(x, y), y, rows)


def _check(lattice: EuclideanLattice, sub: Sublattice):
    if sub.ambient_rank != lattice.rank:
        raise DimensionMismatchError(f"{sub!r} is not a sublattice of a rank {lattice.rank} lattice")
