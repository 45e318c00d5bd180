"""
Arithmetic-structure axioms checked on random multi-filtered spaces

Each check builds the diagram its axiom talks about from a seeded generator
and compares filtrations as functions of the index.
"""

import random
from typing import Any, Callable, Dict, Optional

from ..core.filtration import (
    StepFiltration,
    cartesian_square_commutes,
    gluing_witness,
    pullback,
    pushforward_strong,
)
from ..linalg.fields import PrimeField
from ..linalg.subspace import LinearMap, VectorSpace
from ..utils.logger import Logger
from ..utils.verification import CheckReport
from .generators import random_filtration, random_invertible, random_linear_map, random_space, random_subspace, refined_source
from .space import MultiFiltSpace

logger = Logger.get_logger(__name__)

Describe = Callable[[MultiFiltSpace], Dict[str, Any]]


def check_zero_object(field: PrimeField, rng: random.Random) -> bool:
    """A(0) is a point: every filtration of the zero space is the zero filtration"""
    filtration = random_filtration(rng, field, 0)
    return filtration.same_as(StepFiltration.zero_filtration(filtration.host, filtration.ambient))


def check_pullback_composition(filtration: StepFiltration, rng: random.Random) -> bool:
    """(ji)* = i* j* for inclusions W -> U -> X"""
    field, dim = filtration.ambient.field, filtration.ambient.dim
    outer = random_subspace(rng, field, dim)
    j = LinearMap.inclusion(outer)
    i = LinearMap.inclusion(random_subspace(rng, field, outer.rank))
    return pullback(j.compose(i), filtration).same_as(pullback(i, pullback(j, filtration)))


def check_pushforward_composition(filtration: StepFiltration, rng: random.Random) -> bool:
    """(qp)_* = q_* p_* for quotients X -> X/U -> (X/U)/V"""
    field, dim = filtration.ambient.field, filtration.ambient.dim
    p = LinearMap.quotient_map(random_subspace(rng, field, dim))
    q = LinearMap.quotient_map(random_subspace(rng, field, p.target.dim))
    return pushforward_strong(q.compose(p), filtration).same_as(
        pushforward_strong(q, pushforward_strong(p, filtration))
    )


def check_identity(filtration: StepFiltration) -> bool:
    identity = LinearMap.identity(filtration.ambient)
    return pullback(identity, filtration).same_as(filtration) and pushforward_strong(identity, filtration).same_as(filtration)


def check_isomorphism(filtration: StepFiltration, rng: random.Random) -> bool:
    """f* f_* = id on X and f_* f* = id on Y for an isomorphism f"""
    space = filtration.ambient
    f = LinearMap(space, space, random_invertible(rng, space.field, space.dim))
    other = random_filtration(rng, space.field, space.dim)
    return pullback(f, pushforward_strong(f, filtration)).same_as(filtration) and pushforward_strong(
        f, pullback(f, other)
    ).same_as(other)


def check_cartesian_square(filtration: StepFiltration, rng: random.Random) -> bool:
    """
    v* q_* = p_* u* on X = Y x_W Z

    q: Y -> W a random quotient, v: Z -> W a random subspace, u: X -> Y the
    preimage of Z and p: X -> Z the restriction of q.
    """
    field, dim = filtration.ambient.field, filtration.ambient.dim
    q = LinearMap.quotient_map(random_subspace(rng, field, dim))
    z = random_subspace(rng, field, q.target.dim)
    v = LinearMap.inclusion(z)
    x = q.preimage_of(z)
    u = LinearMap.inclusion(x)
    columns = [z.coordinates(q.apply(col)) for col in u.columns()]
    p = LinearMap.from_columns(VectorSpace(field, x.rank), VectorSpace(field, z.rank), columns)
    if v.compose(p) != q.compose(u):
        return False
    return cartesian_square_commutes(filtration, u, q, v, p)


def check_gluing(filtration: StepFiltration, rng: random.Random) -> bool:
    """graph(f)* (F + G) = F and pr_2* (F + G) = G for compatible f"""
    source = filtration.ambient
    target_dim = rng.randint(0, source.dim + 1)
    f = random_linear_map(rng, source.field, source.dim, target_dim)
    target = random_filtration(rng, source.field, target_dim)
    compatible_source = refined_source(rng, f, target)
    return gluing_witness(f, compatible_source, target).holds


def axiom_suite(
    p: int = 2,
    dim: int = 3,
    n: int = 2,
    trials: int = 100,
    seed: int = 0,
    describe: Optional[Describe] = None,
    report: Optional[CheckReport] = None,
) -> CheckReport:
    """Run every axiom check on `trials` seeded random spaces"""
    report = report or CheckReport("axioms")
    field = PrimeField(p)
    for trial in range(trials):
        trial_seed = seed + trial
        rng = random.Random(trial_seed)
        space = random_space(rng, p, rng.randint(1, dim), n)
        document = describe(space) if describe else None
        report.trials += 1
        report.expect(check_zero_object(field, rng), "zero-object", "zero space carries a non-zero filtration", seed=trial_seed)
        for k, filtration in enumerate(space.filtrations):
            checks = (
                ("pullback-composition", check_pullback_composition(filtration, rng), "(ji)* != i* j*"),
                ("pushforward-composition", check_pushforward_composition(filtration, rng), "(qp)_* != q_* p_*"),
                ("identity", check_identity(filtration), "identity does not act trivially"),
                ("isomorphism", check_isomorphism(filtration, rng), "f* f_* != id for an isomorphism"),
                ("cartesian-square", check_cartesian_square(filtration, rng), "v* q_* != p_* u*"),
                ("gluing", check_gluing(filtration, rng), "gluing witness fails"),
            )
            for name, holds, message in checks:
                report.expect(holds, name, f"filtration {k}: {message}", seed=trial_seed, document=document)
    logger.info(str(report))
    return report
