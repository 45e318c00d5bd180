"""
Destabilizing sublattices by bounded enumeration

Candidates of rank at most r/2 come from primitive vectors of L in the box
|x_i| <= B; candidates of larger rank are annihilators of the same kind of
sublattices of the dual. The search is certified when the box provably
contains every vector a destabilizer of rank 1 or r - 1 could be built from.
An uncertified search at rank 3 also spans planes of short primal vectors.
"""

from fractions import Fraction
from itertools import combinations, product
from math import gcd
from typing import Iterator, List, Optional, Sequence, Tuple

from ..core.errors import DestabilizerTieError, EnumerationBudgetExceeded, ZeroObjectError
from ..core.exact import ExactSlope
from ..core.hn_engine import Certification, DestabilizerResult
from ..linalg.integer import integer_kernel
from ..utils.logger import Logger
from .lattice import EuclideanLattice, Sublattice, arakelov_degree, saturate

logger = Logger.get_logger(__name__)

# rank 1, r - 1 and r exhaust every rank up to 3
CERTIFIED_MAX_RANK = 3

Vector = Tuple[int, ...]


def primitive_vectors(lattice: EuclideanLattice, bound: int) -> List[Tuple[Vector, Fraction]]:
    """Primitive vectors with |x_i| <= bound up to sign, shortest first"""
    points = []
    for x in product(range(-bound, bound + 1), repeat=lattice.rank):
        leading = next((c for c in x if c), 0)
        # zero vector and negatives
        if leading <= 0:
            continue
        if _content(x) != 1:
            continue
        points.append((x, lattice.norm(x)))
    points.sort(key=lambda point: (point[1], point[0]))
    return points


def _content(vector: Sequence[int]) -> int:
    g = 0
    for c in vector:
        g = gcd(g, c)
    return g


def box_covers(lattice: EuclideanLattice, bound: int) -> bool:
    """
    Whether |x_i| <= bound holds for every x with norm(x) <= r * det^(1/r)

    |x_i|^2 <= norm(x) * (G^{-1})_ii, so the test is
    bound^(2r) >= r^r * det * ((G^{-1})_ii)^r, exact in rationals.
    """
    r = lattice.rank
    inverse_gram = lattice.dual().gram
    det = lattice.determinant()
    lhs = Fraction(bound) ** (2 * r)
    return all(lhs >= Fraction(r) ** r * det * inverse_gram[i][i] ** r for i in range(r))


def _low_rank_spans(
    points: List[Tuple[Vector, Fraction]], rank: int, pair_budget: int, det: Fraction, ambient_rank: int
) -> Tuple[Iterator[List[Vector]], bool]:
    """Generating sets of `rank` vectors from the shortest points; the flag says whether the list was cut"""
    if rank == 1:
        # norm^r >= det means slope <= slope(L)
        return ([v] for v, norm in points if norm ** ambient_rank < det), False
    # largest m with C(m, rank) within budget
    m = len(points)
    truncated = False
    while m > rank and _binomial(m, rank) > pair_budget:
        m -= 1
        truncated = True
    shortest = [v for v, _ in points[:m]]
    return (list(vs) for vs in combinations(shortest, rank)), truncated


def _binomial(n: int, k: int) -> int:
    result = 1
    for i in range(k):
        result = result * (n - i) // (i + 1)
    return result


def candidate_sublattices(
    lattice: EuclideanLattice, bound: int, pair_budget: int, extend: bool = False
) -> Tuple[List[Sublattice], bool]:
    """
    Saturated candidates of every rank, and whether any candidate list was truncated

    With extend, primal spans of every rank below r are added as well. Those
    are extra candidates for an uncertified search, so cutting them does not
    count as truncation.
    """
    r = lattice.rank
    primal = primitive_vectors(lattice, bound)
    dual = primitive_vectors(lattice.dual(), bound)
    seen = set()
    candidates: List[Sublattice] = []
    truncated = False

    def add(sub: Sublattice):
        if sub not in seen:
            seen.add(sub)
            candidates.append(sub)

    low = r // 2
    for k in range(1, (r if extend else low + 1)):
        spans, cut = _low_rank_spans(primal, k, pair_budget, lattice.determinant(), r)
        truncated = truncated or (cut and k <= low)
        for vectors in spans:
            sub = Sublattice.span(r, vectors)
            if sub.rank == k:
                add(saturate(sub))
    for k in range(1, (r + 1) // 2):
        spans, cut = _low_rank_spans(dual, k, pair_budget, lattice.dual().determinant(), r)
        truncated = truncated or cut
        for functionals in spans:
            kernel = integer_kernel(functionals, r)
            if len(kernel) == r - k:
                add(saturate(Sublattice(r, kernel)))
    add(Sublattice.full(r))
    return candidates, truncated


def _top_candidates(
    lattice: EuclideanLattice, candidates: Sequence[Sublattice]
) -> Tuple[Sublattice, Tuple[ExactSlope, int], List[Sublattice]]:
    best: Optional[Sublattice] = None
    best_key: Optional[Tuple[ExactSlope, int]] = None
    tied: List[Sublattice] = []
    for candidate in candidates:
        if candidate.rank == 0:
            continue
        key = (arakelov_degree(lattice, candidate) / candidate.rank, candidate.rank)
        if best_key is None or key[0] > best_key[0] or (key[0] == best_key[0] and key[1] > best_key[1]):
            best, best_key, tied = candidate, key, []
        elif key == best_key and candidate != best:
            tied.append(candidate)
    if best is None:
        raise ZeroObjectError("the zero lattice has no destabilizing sublattice")
    return best, best_key, tied


def best_sublattice(lattice: EuclideanLattice, candidates: Sequence[Sublattice]) -> Sublattice:
    """
    Maximal slope, then maximal rank

    Sublattices sharing the maximal slope span one of the same slope and
    larger rank, so tied candidates are replaced by their saturated sum. A tie
    the sum does not break is an error.
    """
    pool = list(candidates)
    while True:
        best, best_key, tied = _top_candidates(lattice, pool)
        if not tied:
            return best
        merged = saturate(Sublattice.span(lattice.rank, [row for sub in [best] + tied for row in sub.generators]))
        if merged in pool:
            raise DestabilizerTieError(
                f"{len(tied) + 1} sublattices of rank {best_key[1]} share the maximal slope {best_key[0]!r}",
                [best] + tied,
            )
        logger.debug(f"{len(tied) + 1} sublattices of rank {best_key[1]} tie; trying their sum of rank {merged.rank}")
        pool.append(merged)


def certified(lattice: EuclideanLattice, bound: int) -> bool:
    r = lattice.rank
    return (
        r <= CERTIFIED_MAX_RANK
        and box_covers(lattice, bound)
        and (r < 3 or box_covers(lattice.dual(), bound))
    )


def certifying_bound(lattice: EuclideanLattice, ceiling: int) -> Optional[int]:
    """Smallest box bound up to ceiling that certifies the search, if any"""
    for bound in range(1, ceiling + 1):
        if certified(lattice, bound):
            return bound
    return None


def destabilizer_enum(
    lattice: EuclideanLattice,
    height_bound: int = 2,
    max_rank: int = 5,
    pair_budget: int = 200_000,
    bound_ceiling: int = 0,
) -> DestabilizerResult:
    """
    Destabilizing sublattice among the enumerated candidates

    Proved when r <= 3, no candidate list was truncated and the box covers
    both the lattice and its dual; heuristic at this bound otherwise. A
    positive bound_ceiling lets the box grow up to that bound when a larger
    box would certify the search.
    """
    r = lattice.rank
    if r > max_rank:
        raise EnumerationBudgetExceeded(f"lattice rank {r} exceeds the enumeration guard {max_rank}", r, max_rank)
    if r == 0:
        raise ZeroObjectError("the zero lattice has no destabilizing sublattice")
    if bound_ceiling > height_bound and not certified(lattice, height_bound):
        height_bound = certifying_bound(lattice, bound_ceiling) or height_bound
    box_certified = certified(lattice, height_bound)
    extend = not box_certified and r <= CERTIFIED_MAX_RANK
    candidates, truncated = candidate_sublattices(lattice, height_bound, pair_budget, extend)
    logger.debug(f"Rank {r} lattice: {len(candidates)} candidate sublattices at bound {height_bound}")
    best = best_sublattice(lattice, candidates)
    proved = not truncated and box_certified
    certification = Certification.PROVED if proved else Certification.HEURISTIC
    if not proved:
        logger.debug(f"Destabilizer of rank {best.rank} is heuristic at bound {height_bound}")
    return DestabilizerResult(best, certification, len(candidates))
