"""
Destabilizing subspaces of multi-filtered spaces
Brute force over every subspace, search over the sum/intersection closure
of the flag steps, and the `auto` strategy choosing between them.
"""

from typing import Iterable, List, Optional, Tuple

from ..config.engine_config import EngineConfig
from ..core.errors import (
    CertificationError,
    ClosureCapExceeded,
    DestabilizerTieError,
    EnumerationBudgetExceeded,
    ZeroObjectError,
)
from ..core.exact import ExactSlope
from ..core.hn_engine import Certification, DestabilizerResult
from ..linalg.subspace import Subspace, count_subspaces, enumerate_subspaces
from ..utils.logger import Logger
from .space import MultiFiltSpace

logger = Logger.get_logger(__name__)

# n <= 2 flags always admit a common adapted basis
CLOSURE_EXACT_FILTRATIONS = 2


def best_subspace(space: MultiFiltSpace, candidates: Iterable[Subspace]) -> Tuple[Subspace, int]:
    """Maximal slope, then maximal rank; equal slope and rank on distinct subspaces is a tie"""
    best: Optional[Subspace] = None
    best_key: Optional[Tuple[ExactSlope, int]] = None
    tied: List[Subspace] = []
    examined = 0
    for candidate in candidates:
        if candidate.is_zero():
            continue
        examined += 1
        key = (space.degree(candidate) / candidate.rank, candidate.rank)
        if best_key is None or key[0] > best_key[0] or (key[0] == best_key[0] and key[1] > best_key[1]):
            best, best_key, tied = candidate, key, []
        elif key[0] == best_key[0] and key[1] == best_key[1] and candidate != best:
            tied.append(candidate)
    if best is None:
        raise ZeroObjectError("the zero space has no destabilizing subspace")
    if tied:
        raise DestabilizerTieError(
            f"{len(tied) + 1} subspaces of rank {best_key[1]} share the maximal slope {best_key[0]!r}",
            [best] + tied,
        )
    return best, examined


def enumeration_size(space: MultiFiltSpace) -> int:
    return count_subspaces(space.p, space.dim)


def destabilizer_bruteforce(space: MultiFiltSpace, budget: int = 1_000_000) -> DestabilizerResult:
    required = enumeration_size(space)
    if required > budget:
        raise EnumerationBudgetExceeded(
            f"F_{space.p}^{space.dim} has {required} subspaces, budget is {budget}", required, budget
        )
    logger.debug(f"Enumerating {required} subspaces of F_{space.p}^{space.dim}")
    best, examined = best_subspace(space, enumerate_subspaces(space.field, space.dim))
    return DestabilizerResult(best, Certification.PROVED, examined)


def closure_lattice(space: MultiFiltSpace, cap: int = 4096) -> List[Subspace]:
    """Sublattice generated by the flag steps under sum and intersection"""
    elements = [space.zero(), space.full()]
    for step in space.flag_steps():
        if step not in elements:
            elements.append(step)
    seen = set(elements)
    frontier = list(elements)
    while frontier:
        fresh: List[Subspace] = []
        for a in frontier:
            for b in list(elements):
                for c in (a + b, a & b):
                    if c not in seen:
                        seen.add(c)
                        fresh.append(c)
        elements.extend(fresh)
        if len(elements) > cap:
            raise ClosureCapExceeded(f"closure lattice passed {cap} elements")
        frontier = fresh
    logger.debug(f"Closure lattice of {space.n} flags has {len(elements)} elements")
    return elements


def destabilizer_closure(
    space: MultiFiltSpace, cap: int = 4096, budget: int = 1_000_000, verify: bool = True
) -> DestabilizerResult:
    """
    Best subspace in the closure lattice

    Exact for at most two flags. Otherwise the answer is checked against
    brute force when that fits the budget, and marked heuristic when not.
    """
    best, examined = best_subspace(space, closure_lattice(space, cap))
    if space.n <= CLOSURE_EXACT_FILTRATIONS:
        return DestabilizerResult(best, Certification.PROVED, examined)
    if verify and enumeration_size(space) <= budget:
        reference = destabilizer_bruteforce(space, budget).subobject
        if reference != best:
            raise CertificationError(f"closure search found {best!r}, brute force found {reference!r}")
        return DestabilizerResult(best, Certification.PROVED, examined)
    return DestabilizerResult(best, Certification.HEURISTIC, examined)


def destabilizer(space: MultiFiltSpace, config: EngineConfig = None) -> DestabilizerResult:
    """Dispatch on config.destabilizer: auto, bruteforce or closure"""
    config = config or EngineConfig()
    if config.destabilizer == "bruteforce":
        return destabilizer_bruteforce(space, config.budget)
    if config.destabilizer == "closure":
        try:
            return destabilizer_closure(space, config.closure_cap, config.budget)
        except ClosureCapExceeded:
            logger.info("Closure cap exceeded, falling back to brute force")
            return destabilizer_bruteforce(space, config.budget)
    # auto
    if space.n <= CLOSURE_EXACT_FILTRATIONS:
        return destabilizer_closure(space, config.closure_cap, config.budget, verify=False)
    if enumeration_size(space) <= config.budget:
        return destabilizer_bruteforce(space, config.budget)
    return destabilizer_closure(space, config.closure_cap, config.budget, verify=False)
