"""
Integer linear algebra
Row Hermite normal form with its unimodular transform, integer kernels and
the saturation / basis-completion helpers built on them.
"""

from typing import List, Sequence, Tuple

from ..core.errors import DimensionMismatchError, LatticeError
from .matrix import inverse

IntMatrix = Tuple[Tuple[int, ...], ...]


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """(x, y, g) with x*a + y*b == g"""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    return x, y, g


def hermite_normal_form(rows: Sequence[Sequence[int]], ncols: int) -> Tuple[IntMatrix, IntMatrix, Tuple[int, ...]]:
    """
    Row-style HNF: returns (H, U, pivots) with H = U . rows and U unimodular

    Non-zero rows of H come first, pivots are positive and the entries
    above each pivot are reduced into [0, pivot).
    """
    h: List[List[int]] = [[int(x) for x in row] for row in rows]
    m = len(h)
    if any(len(row) != ncols for row in h):
        raise DimensionMismatchError("ragged integer matrix")
    u: List[List[int]] = [[int(i == j) for j in range(m)] for i in range(m)]
    pivots: List[int] = []
    r = 0
    for col in range(ncols):
        if r == m:
            break
        for i in range(r + 1, m):
            b = h[i][col]
            if b == 0:
                continue
            a = h[r][col]
            x, y, g = xgcd(a, b)
            ag, bg = a // g, b // g
            for mat in (h, u):
                top, low = mat[r], mat[i]
                mat[r] = [x * p + y * q for p, q in zip(top, low)]
                mat[i] = [-bg * p + ag * q for p, q in zip(top, low)]
        if h[r][col] == 0:
            continue
        if h[r][col] < 0:
            h[r] = [-v for v in h[r]]
            u[r] = [-v for v in u[r]]
        pivot = h[r][col]
        for i in range(r):
            q = h[i][col] // pivot
            if q:
                h[i] = [p - q * s for p, s in zip(h[i], h[r])]
                u[i] = [p - q * s for p, s in zip(u[i], u[r])]
        pivots.append(col)
        r += 1
    return tuple(map(tuple, h)), tuple(map(tuple, u)), tuple(pivots)


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> IntMatrix:
    """Basis (as rows) of {x in Z^ncols : rows . x = 0}"""
    transposed = [[row[j] for row in rows] for j in range(ncols)]
    h, u, pivots = hermite_normal_form(transposed, len(rows))
    return tuple(u[i] for i in range(len(pivots), ncols))


def integer_inverse(matrix: Sequence[Sequence[int]]) -> IntMatrix:
    inv = inverse(matrix)
    if any(x.denominator != 1 for row in inv for x in row):
        raise LatticeError("matrix is not unimodular")
    return tuple(tuple(int(x) for x in row) for row in inv)


def row_span_canonical(rows: Sequence[Sequence[int]], ncols: int) -> IntMatrix:
    """HNF basis of the Z-span of rows; equal lattices give identical output"""
    h, _, pivots = hermite_normal_form(rows, ncols)
    return h[: len(pivots)]


def saturation_rows(rows: Sequence[Sequence[int]], ncols: int) -> IntMatrix:
    """Basis of Z^ncols intersected with the Q-span of rows"""
    annihilator = integer_kernel(rows, ncols)
    return row_span_canonical(integer_kernel(annihilator, ncols), ncols) if annihilator else _identity(ncols)


def complete_basis(rows: Sequence[Sequence[int]], ncols: int) -> Tuple[IntMatrix, IntMatrix]:
    """
    For rows spanning a saturated sublattice, (V, W) with V unimodular

    The first len(rows) columns of V are the given rows; W = V^{-1}, so
    the last rows of W project Z^ncols onto the quotient by the span.
    """
    columns = [[row[j] for row in rows] for j in range(ncols)]
    h, u, pivots = hermite_normal_form(columns, len(rows))
    s = len(rows)
    if len(pivots) != s:
        raise LatticeError("generators are linearly dependent")
    top = [h[i][:s] for i in range(s)]
    if any(top[i][j] != int(i == j) for i in range(s) for j in range(s)):
        raise LatticeError("sublattice is not saturated")
    return integer_inverse(u), u


def _identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
