"""
Dense rational matrices
Lists of rows of Fractions; every routine is exact.
"""

from fractions import Fraction
from typing import List, Sequence, Tuple

from ..core.errors import DimensionMismatchError, LatticeError

RationalMatrix = Tuple[Tuple[Fraction, ...], ...]


def to_matrix(rows: Sequence[Sequence]) -> RationalMatrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def transpose(matrix: Sequence[Sequence], ncols: int = None) -> RationalMatrix:
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    return tuple(tuple(Fraction(row[j]) for row in matrix) for j in range(ncols))


def matmul(a: Sequence[Sequence], b: Sequence[Sequence], inner: int = None) -> RationalMatrix:
    if inner is None:
        inner = len(b)
    if any(len(row) != inner for row in a) or len(b) != inner:
        raise DimensionMismatchError("matrix product of incompatible shapes")
    ncols = len(b[0]) if b else 0
    return tuple(
        tuple(sum((Fraction(row[k]) * b[k][j] for k in range(inner)), Fraction(0)) for j in range(ncols))
        for row in a
    )


def identity(n: int) -> RationalMatrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def is_symmetric(matrix: Sequence[Sequence]) -> bool:
    n = len(matrix)
    return all(len(row) == n for row in matrix) and all(
        matrix[i][j] == matrix[j][i] for i in range(n) for j in range(i)
    )


def determinant(matrix: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination; det of the empty matrix is 1"""
    m = [[Fraction(x) for x in row] for row in matrix]
    n = len(m)
    if any(len(row) != n for row in m):
        raise DimensionMismatchError("determinant of a non-square matrix")
    det = Fraction(1)
    for col in range(n):
        pivot = next((i for i in range(col, n) if m[i][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        for i in range(col + 1, n):
            factor = m[i][col] / m[col][col]
            if factor:
                m[i] = [a - factor * b for a, b in zip(m[i], m[col])]
    return det


def inverse(matrix: Sequence[Sequence]) -> RationalMatrix:
    n = len(matrix)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if m[i][col] != 0), None)
        if pivot is None:
            raise LatticeError("matrix is singular")
        m[col], m[pivot] = m[pivot], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for i in range(n):
            if i != col and m[i][col] != 0:
                factor = m[i][col]
                m[i] = [a - factor * b for a, b in zip(m[i], m[col])]
    return tuple(tuple(row[n:]) for row in m)


def congruence(gram: Sequence[Sequence], basis: Sequence[Sequence], ncols: int = None) -> RationalMatrix:
    """basis^T . gram . basis, with basis vectors as columns"""
    if ncols is None:
        ncols = len(basis[0]) if basis else 0
    bt = transpose(basis, ncols)
    return matmul(matmul(bt, gram, len(gram)), basis, len(basis))


def schur_complement(matrix: Sequence[Sequence], k: int) -> RationalMatrix:
    """D - B^T A^{-1} B for the block split [[A, B], [B^T, D]] with A the leading k x k block"""
    n = len(matrix)
    a = [row[:k] for row in matrix[:k]]
    b = [row[k:] for row in matrix[:k]]
    d = [row[k:] for row in matrix[k:]]
    if k == 0:
        return to_matrix(d)
    correction = matmul(transpose(b, n - k), matmul(inverse(a), b, k), k)
    return tuple(tuple(Fraction(d[i][j]) - correction[i][j] for j in range(n - k)) for i in range(n - k))


def is_positive_semidefinite(matrix: Sequence[Sequence]) -> bool:
    """Exact test by repeated Schur complements on the leading entry"""
    m: List[List[Fraction]] = [[Fraction(x) for x in row] for row in matrix]
    if not is_symmetric(m):
        raise DimensionMismatchError("PSD test needs a symmetric matrix")
    while m:
        pivot = m[0][0]
        if pivot < 0:
            return False
        if pivot == 0:
            if any(x != 0 for x in m[0]):
                return False
            m = [row[1:] for row in m[1:]]
            continue
        m = [
            [m[i][j] - m[i][0] * m[0][j] / pivot for j in range(1, len(m))]
            for i in range(1, len(m))
        ]
    return True


def is_positive_definite(matrix: Sequence[Sequence]) -> bool:
    """All leading principal minors positive"""
    m = [[Fraction(x) for x in row] for row in matrix]
    if not is_symmetric(m):
        return False
    while m:
        pivot = m[0][0]
        if pivot <= 0:
            return False
        m = [
            [m[i][j] - m[i][0] * m[0][j] / pivot for j in range(1, len(m))]
            for i in range(1, len(m))
        ]
    return True
