"""
Exact subspace algebra over a field
Subspaces are stored in reduced row-echelon form, so equal subspaces have
identical bases; LinearCategory exposes them through SubobjectApi.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dataclass_field
from typing import Iterator, List, Optional, Sequence, Tuple

from ..core.errors import DimensionMismatchError
from ..core.filtration import SubobjectApi
from .fields import Field, PrimeField, Scalar

Row = Tuple[Scalar, ...]
Matrix = Tuple[Row, ...]


def row_reduce(field: Field, rows: Sequence[Sequence[Scalar]], ncols: int) -> Tuple[Matrix, Tuple[int, ...]]:
    """Reduced row-echelon form of rows; returns the non-zero rows and the pivot columns"""
    matrix = [[field.normalize(x) for x in row] for row in rows]
    for row in matrix:
        if len(row) != ncols:
            raise DimensionMismatchError(f"row of length {len(row)} in a {ncols}-column matrix")
    pivots: List[int] = []
    r = 0
    for col in range(ncols):
        if r == len(matrix):
            break
        pivot = next((i for i in range(r, len(matrix)) if matrix[i][col] != 0), None)
        if pivot is None:
            continue
        matrix[r], matrix[pivot] = matrix[pivot], matrix[r]
        inv = field.inv(matrix[r][col])
        matrix[r] = [field.normalize(x * inv) for x in matrix[r]]
        for i in range(len(matrix)):
            if i != r and matrix[i][col] != 0:
                factor = matrix[i][col]
                matrix[i] = [field.normalize(a - factor * b) for a, b in zip(matrix[i], matrix[r])]
        pivots.append(col)
        r += 1
    return tuple(tuple(row) for row in matrix[:r]), tuple(pivots)


def nullspace(field: Field, rows: Sequence[Sequence[Scalar]], ncols: int) -> Matrix:
    """Basis of {x : rows . x = 0}"""
    reduced, pivots = row_reduce(field, rows, ncols)
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        vector = [field.zero] * ncols
        vector[free] = field.one
        for row, col in zip(reduced, pivots):
            vector[col] = field.normalize(-row[free])
        basis.append(tuple(vector))
    return tuple(basis)


def matrix_rank(field: Field, rows: Sequence[Sequence[Scalar]], ncols: int) -> int:
    return len(row_reduce(field, rows, ncols)[1])


@dataclass(frozen=True)
class VectorSpace:
    """The standard space field^dim"""

    field: Field
    dim: int

    def __post_init__(self):
        if self.dim < 0:
            raise DimensionMismatchError(f"negative dimension {self.dim}")

    def unit(self, i: int) -> Row:
        return tuple(self.field.one if j == i else self.field.zero for j in range(self.dim))

    def unit_rows(self) -> Matrix:
        return tuple(self.unit(i) for i in range(self.dim))


@dataclass(frozen=True)
class Subspace:
    """Subspace of field^dim with its canonical echelon basis"""

    field: Field
    dim: int
    basis: Matrix = ()
    pivots: Tuple[int, ...] = dataclass_field(default=(), compare=False, repr=False)

    def __post_init__(self):
        basis, pivots = row_reduce(self.field, self.basis, self.dim)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "pivots", pivots)

    @classmethod
    def span(cls, field: Field, dim: int, vectors: Sequence[Sequence[Scalar]]) -> "Subspace":
        return cls(field, dim, tuple(tuple(v) for v in vectors))

    @classmethod
    def zero(cls, field: Field, dim: int) -> "Subspace":
        return cls(field, dim, ())

    @classmethod
    def full(cls, field: Field, dim: int) -> "Subspace":
        return cls(field, dim, VectorSpace(field, dim).unit_rows())

    @property
    def rank(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return self.rank == self.dim

    def reduce(self, vector: Sequence[Scalar]) -> Row:
        """vector minus its component along the pivots; zero exactly on members"""
        f = self.field
        result = [f.normalize(x) for x in vector]
        for row, col in zip(self.basis, self.pivots):
            factor = result[col]
            if factor != 0:
                result = [f.normalize(a - factor * b) for a, b in zip(result, row)]
        return tuple(result)

    def contains_vector(self, vector: Sequence[Scalar]) -> bool:
        self._check_length(vector)
        return all(x == 0 for x in self.reduce(vector))

    def contains(self, other: "Subspace") -> bool:
        self._check_compatible(other)
        return all(self.contains_vector(v) for v in other.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        return Subspace(self.field, self.dim, self.basis + other.basis)

    def __and__(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        if self.is_zero() or other.is_zero():
            return Subspace.zero(self.field, self.dim)
        inclusion = LinearMap.inclusion(self)
        return inclusion.image_of(inclusion.preimage_of(other))

    def complement_columns(self) -> Tuple[int, ...]:
        return tuple(c for c in range(self.dim) if c not in self.pivots)

    def coordinates(self, vector: Sequence[Scalar]) -> Row:
        """Coordinates of a member vector in the echelon basis"""
        if not self.contains_vector(vector):
            raise DimensionMismatchError("vector is not in the subspace")
        return tuple(self.field.normalize(vector[col]) for col in self.pivots)

    def _check_length(self, vector: Sequence[Scalar]):
        if len(vector) != self.dim:
            raise DimensionMismatchError(f"vector of length {len(vector)} in dimension {self.dim}")

    def _check_compatible(self, other: "Subspace"):
        if other.field != self.field or other.dim != self.dim:
            raise DimensionMismatchError(
                f"subspaces of {self.field.name}^{self.dim} and {other.field.name}^{other.dim}"
            )

    def __repr__(self) -> str:
        rows = ", ".join("[" + " ".join(str(x) for x in row) + "]" for row in self.basis)
        return f"Subspace({self.field.name}^{self.dim}: {rows or '0'})"


@dataclass(frozen=True)
class LinearMap:
    """Linear map source -> target; matrix has target.dim rows and source.dim columns"""

    source: VectorSpace
    target: VectorSpace
    matrix: Matrix

    def __post_init__(self):
        if self.source.field != self.target.field:
            raise DimensionMismatchError("linear map between spaces over different fields")
        f = self.source.field
        matrix = tuple(tuple(f.normalize(x) for x in row) for row in self.matrix)
        if len(matrix) != self.target.dim or any(len(row) != self.source.dim for row in matrix):
            raise DimensionMismatchError(
                f"matrix shape does not match {self.source.dim} -> {self.target.dim}"
            )
        object.__setattr__(self, "matrix", matrix)

    @property
    def field(self) -> Field:
        return self.source.field

    @classmethod
    def identity(cls, space: VectorSpace) -> "LinearMap":
        return cls(space, space, space.unit_rows())

    @classmethod
    def zero(cls, source: VectorSpace, target: VectorSpace) -> "LinearMap":
        f = source.field
        return cls(source, target, tuple((f.zero,) * source.dim for _ in range(target.dim)))

    @classmethod
    def from_columns(cls, source: VectorSpace, target: VectorSpace, columns: Sequence[Sequence[Scalar]]) -> "LinearMap":
        return cls(source, target, tuple(tuple(col[i] for col in columns) for i in range(target.dim)))

    @classmethod
    def inclusion(cls, sub: Subspace) -> "LinearMap":
        """field^rank -> field^dim sending e_i to the i-th echelon basis vector"""
        return cls.from_columns(VectorSpace(sub.field, sub.rank), VectorSpace(sub.field, sub.dim), sub.basis)

    @classmethod
    def quotient_map(cls, sub: Subspace) -> "LinearMap":
        """field^dim -> field^(dim - rank) in the coordinates of the non-pivot columns"""
        source = VectorSpace(sub.field, sub.dim)
        complement = sub.complement_columns()
        target = VectorSpace(sub.field, len(complement))
        columns = []
        for j in range(sub.dim):
            reduced = sub.reduce(source.unit(j))
            columns.append(tuple(reduced[c] for c in complement))
        return cls.from_columns(source, target, columns)

    def apply(self, vector: Sequence[Scalar]) -> Row:
        if len(vector) != self.source.dim:
            raise DimensionMismatchError(f"vector of length {len(vector)} for a map from dimension {self.source.dim}")
        f = self.field
        return tuple(f.normalize(sum(a * b for a, b in zip(row, vector))) for row in self.matrix)

    def compose(self, inner: "LinearMap") -> "LinearMap":
        """self o inner"""
        if inner.target != self.source:
            raise DimensionMismatchError("composition of non-composable linear maps")
        columns = [self.apply(col) for col in inner.columns()]
        return LinearMap.from_columns(inner.source, self.target, columns)

    def columns(self) -> List[Row]:
        return [tuple(row[j] for row in self.matrix) for j in range(self.source.dim)]

    def kernel(self) -> Subspace:
        return Subspace(self.field, self.source.dim, nullspace(self.field, self.matrix, self.source.dim))

    def image(self) -> Subspace:
        return Subspace(self.field, self.target.dim, tuple(self.columns()))

    def image_of(self, sub: Subspace) -> Subspace:
        return Subspace(self.field, self.target.dim, tuple(self.apply(v) for v in sub.basis))

    def preimage_of(self, sub: Subspace) -> Subspace:
        if sub.dim != self.target.dim:
            raise DimensionMismatchError("preimage of a subspace of another space")
        return LinearMap.quotient_map(sub).compose(self).kernel()

    def rank(self) -> int:
        return self.image().rank

    def is_injective(self) -> bool:
        return self.kernel().is_zero()

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.matrix for x in row)

    def restrict(self, sub: Subspace) -> "LinearMap":
        """Composite field^rank(sub) -> source -> target"""
        return self.compose(LinearMap.inclusion(sub))

    def __repr__(self) -> str:
        return f"LinearMap({self.source.dim} -> {self.target.dim}, {[list(r) for r in self.matrix]})"


@dataclass(frozen=True)
class LinearCategory(SubobjectApi):
    """Finite-dimensional vector spaces over `field` as a host for filtrations"""

    field: Field

    def space(self, dim: int) -> VectorSpace:
        return VectorSpace(self.field, dim)

    def rank(self, sub: Subspace) -> int:
        return sub.rank

    def contains(self, big: Subspace, small: Subspace) -> bool:
        return big.contains(small)

    def equal(self, a: Subspace, b: Subspace) -> bool:
        return a == b

    def intersect(self, a: Subspace, b: Subspace) -> Subspace:
        return a & b

    def sum(self, a: Subspace, b: Subspace) -> Subspace:
        return a + b

    def image(self, f: LinearMap, sub: Subspace) -> Subspace:
        return f.image_of(sub)

    def preimage(self, f: LinearMap, sub: Subspace) -> Subspace:
        return f.preimage_of(sub)

    def zero(self, obj: VectorSpace) -> Subspace:
        return Subspace.zero(self.field, obj.dim)

    def full(self, obj: VectorSpace) -> Subspace:
        return Subspace.full(self.field, obj.dim)

    def source(self, f: LinearMap) -> VectorSpace:
        return f.source

    def target(self, f: LinearMap) -> VectorSpace:
        return f.target

    def compose(self, g: LinearMap, f: LinearMap) -> LinearMap:
        return g.compose(f)

    def direct_sum(self, x: VectorSpace, y: VectorSpace) -> VectorSpace:
        return VectorSpace(self.field, x.dim + y.dim)

    def sum_embedding(self, u: Subspace, v: Subspace, x: VectorSpace, y: VectorSpace) -> Subspace:
        zero = self.field.zero
        rows = [tuple(r) + (zero,) * y.dim for r in u.basis]
        rows += [(zero,) * x.dim + tuple(r) for r in v.basis]
        return Subspace(self.field, x.dim + y.dim, tuple(rows))

    def graph(self, f: LinearMap) -> LinearMap:
        """x -> (x, f(x))"""
        total = self.direct_sum(f.source, f.target)
        columns = [f.source.unit(j) + col for j, col in enumerate(f.columns())]
        return LinearMap.from_columns(f.source, total, columns)

    def second_projection(self, x: VectorSpace, y: VectorSpace) -> LinearMap:
        total = self.direct_sum(x, y)
        columns = [(self.field.zero,) * y.dim] * x.dim + [y.unit(j) for j in range(y.dim)]
        return LinearMap.from_columns(total, y, columns)


def gaussian_binomial(p: int, d: int, k: int) -> int:
    """Number of k-dimensional subspaces of F_p^d"""
    if k < 0 or k > d:
        return 0
    numerator = 1
    denominator = 1
    for i in range(k):
        numerator *= p ** (d - i) - 1
        denominator *= p ** (i + 1) - 1
    return numerator // denominator


def count_subspaces(p: int, d: int, rank: Optional[int] = None) -> int:
    if rank is not None:
        return gaussian_binomial(p, d, rank)
    return sum(gaussian_binomial(p, d, k) for k in range(d + 1))


def enumerate_subspaces(field: PrimeField, dim: int, rank: Optional[int] = None) -> Iterator[Subspace]:
    """
    Every subspace of F_p^dim, once, in a fixed order

    Walks echelon pivot patterns by increasing rank; free entries sit right of
    each pivot in non-pivot columns.
    """
    ranks = range(dim + 1) if rank is None else [rank]
    for k in ranks:
        for pivots in itertools.combinations(range(dim), k):
            slots = [(i, j) for i, col in enumerate(pivots) for j in range(col + 1, dim) if j not in pivots]
            for values in itertools.product(range(field.p), repeat=len(slots)):
                rows = [[0] * dim for _ in range(k)]
                for i, col in enumerate(pivots):
                    rows[i][col] = 1
                for (i, j), value in zip(slots, values):
                    rows[i][j] = value
                yield Subspace(field, dim, tuple(tuple(r) for r in rows))
