"""
Seeded random lattices, sublattices and norm <= 1 maps
"""

import random
from fractions import Fraction
from typing import List, Optional, Tuple

from ..linalg.integer import IntMatrix
from ..linalg.matrix import congruence, determinant
from .lattice import EuclideanLattice, FreeModule, IntegerMap, Sublattice


def random_unimodular(rng: random.Random, rank: int, steps: int = 6) -> IntMatrix:
    """Product of random elementary integer row operations"""
    m: List[List[int]] = [[int(i == j) for j in range(rank)] for i in range(rank)]
    if rank < 2:
        return tuple(tuple(row) for row in m)
    for _ in range(steps):
        i, j = rng.sample(range(rank), 2)
        c = rng.choice((-2, -1, 1, 2))
        m[i] = [a + c * b for a, b in zip(m[i], m[j])]
    rng.shuffle(m)
    return tuple(tuple(row) for row in m)


def random_nonsingular(rng: random.Random, rank: int, spread: int = 3) -> IntMatrix:
    while True:
        m = tuple(tuple(rng.randint(-spread, spread) for _ in range(rank)) for _ in range(rank))
        if determinant(m) != 0:
            return m


def random_lattice(rng: random.Random, rank: int, rational: bool = True) -> EuclideanLattice:
    """
    Gram A^T D A with A integral nonsingular and D a positive diagonal

    D is the identity for integral lattices and has small rational entries otherwise.
    """
    if rank == 0:
        return EuclideanLattice(())
    a = random_nonsingular(rng, rank)
    if rational:
        weights = [Fraction(rng.randint(1, 4), rng.choice((1, 2, 3))) for _ in range(rank)]
    else:
        weights = [Fraction(1)] * rank
    d = tuple(tuple(weights[i] if i == j else Fraction(0) for j in range(rank)) for i in range(rank))
    return EuclideanLattice(congruence(d, a, rank))


def diag2(q) -> EuclideanLattice:
    """Gram diag(q, 1/q), determinant 1"""
    q = Fraction(q)
    return EuclideanLattice.diagonal((q, 1 / q))


def diag2_family(rng: random.Random, count: int) -> List[EuclideanLattice]:
    """diag(q, 1/q) with q != 1, so the destabilizer is Z e_1 when q < 1 and Z e_2 when q > 1"""
    family = []
    while len(family) < count:
        q = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        if q != 1:
            family.append(diag2(q))
    return family


def random_saturated_sublattice(rng: random.Random, rank: int, sub_rank: Optional[int] = None) -> Sublattice:
    """First rows of a random unimodular matrix"""
    if sub_rank is None:
        sub_rank = rng.randint(0, rank)
    return Sublattice(rank, random_unimodular(rng, rank)[:sub_rank])


def change_of_basis(lattice: EuclideanLattice, unimodular: IntMatrix) -> EuclideanLattice:
    """The same lattice in the basis given by the columns of `unimodular`"""
    return EuclideanLattice(congruence(lattice.gram, unimodular, lattice.rank))


def compatible_lattice_map(
    rng: random.Random, source_rank: int, target_rank: int, target: Optional[EuclideanLattice] = None
) -> Tuple[EuclideanLattice, IntegerMap, EuclideanLattice]:
    """
    (L_X, phi, L_Y) with |phi| <= 1

    L_Y is the given target or a random lattice, and G_X = phi^T G_Y phi + E
    for a random positive E.
    """
    if target is None:
        target = random_lattice(rng, target_rank)
    target_rank = target.rank
    phi = tuple(tuple(rng.randint(-1, 1) for _ in range(source_rank)) for _ in range(target_rank))
    extra = random_lattice(rng, source_rank).gram
    if target_rank:
        pulled = congruence(target.gram, phi, source_rank)
    else:
        pulled = tuple(tuple(Fraction(0) for _ in range(source_rank)) for _ in range(source_rank))
    gram = tuple(tuple(pulled[i][j] + extra[i][j] for j in range(source_rank)) for i in range(source_rank))
    source = EuclideanLattice(gram)
    return source, IntegerMap(FreeModule(source_rank), FreeModule(target_rank), phi), target


def compatible_lattice_isomorphism(rng: random.Random, rank: int) -> Tuple[EuclideanLattice, IntegerMap, EuclideanLattice]:
    """A unimodular phi with G_X = phi^T G_Y phi + E"""
    target = random_lattice(rng, rank)
    phi = random_unimodular(rng, rank)
    extra = random_lattice(rng, rank).gram
    pulled = congruence(target.gram, phi, rank)
    gram = tuple(tuple(pulled[i][j] + extra[i][j] for j in range(rank)) for i in range(rank))
    module = FreeModule(rank)
    return EuclideanLattice(gram), IntegerMap(module, module, phi), target
