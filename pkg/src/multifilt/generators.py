"""
Seeded random multi-filtered spaces and linear maps
"""

import random
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from ..core.filtration import StepFiltration, combine, pullback, pushforward_weak
from ..linalg.fields import PrimeField
from ..linalg.subspace import LinearCategory, LinearMap, Subspace, VectorSpace, matrix_rank
from .space import MultiFiltSpace


def random_matrix(rng: random.Random, field: PrimeField, rows: int, cols: int) -> Tuple[Tuple[int, ...], ...]:
    return tuple(tuple(rng.randrange(field.p) for _ in range(cols)) for _ in range(rows))


def random_invertible(rng: random.Random, field: PrimeField, dim: int) -> Tuple[Tuple[int, ...], ...]:
    while True:
        matrix = random_matrix(rng, field, dim, dim)
        if matrix_rank(field, matrix, dim) == dim:
            return matrix


def random_subspace(rng: random.Random, field: PrimeField, dim: int, rank: Optional[int] = None) -> Subspace:
    if rank is None:
        rank = rng.randint(0, dim)
    basis = random_invertible(rng, field, dim)
    return Subspace.span(field, dim, basis[:rank])


def random_weights(rng: random.Random, count: int, spread: int = 4, denominators: Sequence[int] = (1, 1, 2, 3)) -> List[Fraction]:
    """count distinct rationals in [-spread, spread], decreasing"""
    weights = set()
    while len(weights) < count:
        q = rng.choice(denominators)
        weights.add(Fraction(rng.randint(-spread * q, spread * q), q))
    return sorted(weights, reverse=True)


def random_filtration(
    rng: random.Random, field: PrimeField, dim: int, max_steps: Optional[int] = None, exhaustive: bool = True
) -> StepFiltration:
    """Separated, left-continuous, random weighted flag; exhaustive unless asked otherwise"""
    host = LinearCategory(field)
    ambient = VectorSpace(field, dim)
    basis = random_invertible(rng, field, dim)
    steps_available = max(dim, 1)
    count = rng.randint(1, min(steps_available, max_steps or steps_available))
    cuts = sorted(rng.sample(range(1, dim), count - 1)) if dim > 1 and count > 1 else []
    top = dim if exhaustive else rng.randint(cuts[-1] if cuts else 0, dim)
    ranks = cuts + [top]
    weights = random_weights(rng, len(ranks))
    steps = [(w, Subspace.span(field, dim, basis[:r])) for w, r in zip(weights, ranks)]
    return StepFiltration.from_steps(host, ambient, steps)


def random_space(
    rng: random.Random, p: int, dim: int, n: int, alpha: Optional[Sequence[Fraction]] = None
) -> MultiFiltSpace:
    field = PrimeField(p)
    filtrations = tuple(random_filtration(rng, field, dim) for _ in range(n))
    if alpha is None:
        alpha = tuple(Fraction(rng.randint(1, 3), rng.choice((1, 2))) for _ in range(n))
    return MultiFiltSpace(field, dim, filtrations, tuple(alpha))


def random_linear_map(rng: random.Random, field: PrimeField, source_dim: int, target_dim: int) -> LinearMap:
    return LinearMap(
        VectorSpace(field, source_dim), VectorSpace(field, target_dim), random_matrix(rng, field, target_dim, source_dim)
    )


def coarsened_target(rng: random.Random, space: MultiFiltSpace, f: LinearMap) -> MultiFiltSpace:
    """A structure on the target of f with f compatible: G_k = f(F_k) + random filtration"""
    field = space.field
    dim = f.target.dim
    filtrations = []
    for filtration in space.filtrations:
        pushed = pushforward_weak(f, filtration)
        extra = random_filtration(rng, field, dim)
        filtrations.append(combine(pushed, extra, "sum"))
    return MultiFiltSpace(field, dim, tuple(filtrations), space.alpha)


def compatible_map(rng: random.Random, p: int, source_dim: int, target_dim: int, n: int) -> Tuple[MultiFiltSpace, LinearMap, MultiFiltSpace]:
    source = random_space(rng, p, source_dim, n)
    f = random_linear_map(rng, source.field, source_dim, target_dim)
    return source, f, coarsened_target(rng, source, f)


def compatible_isomorphism(rng: random.Random, p: int, dim: int, n: int) -> Tuple[MultiFiltSpace, LinearMap, MultiFiltSpace]:
    source = random_space(rng, p, dim, n)
    space = VectorSpace(source.field, dim)
    f = LinearMap(space, space, random_invertible(rng, source.field, dim))
    return source, f, coarsened_target(rng, source, f)


def refined_source(rng: random.Random, f: LinearMap, target: StepFiltration) -> StepFiltration:
    """A filtration F on the source of f compatible with target: f^{-1}G intersected with a random one"""
    field = f.field
    extra = random_filtration(rng, field, f.source.dim)
    return combine(pullback(f, target), extra, "intersect")
