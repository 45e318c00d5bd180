"""
Multi-filtered vector spaces over F_p (or Q, for generic fibres of lattices)
A space F_p^dim with several separated, exhaustive, left-continuous
filtrations and non-negative coefficients alpha; the degree of a subspace is
the alpha-weighted sum of the degrees of the induced filtrations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, List, Sequence, Tuple

from ..core.errors import DimensionMismatchError, FiltrationError, InputValidationError
from ..core.exact import ExactDegree, as_exact, exact_sum, parse_rational
from ..core.filtration import (
    Orientation,
    StepFiltration,
    gluing_witness,
    is_compatible,
    pullback,
    pushforward_strong,
)
from ..core.hn_engine import model_degree
from ..linalg.fields import Field, PrimeField
from ..linalg.subspace import LinearCategory, LinearMap, Subspace, VectorSpace


@dataclass(frozen=True)
class MultiFiltSpace:
    field: Field
    dim: int
    filtrations: Tuple[StepFiltration, ...] = ()
    alpha: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        alpha = tuple(Fraction(a) for a in self.alpha)
        filtrations = tuple(self.filtrations)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "filtrations", filtrations)
        if len(alpha) != len(filtrations):
            raise InputValidationError(f"{len(filtrations)} filtrations but {len(alpha)} coefficients")
        if any(a < 0 for a in alpha):
            raise InputValidationError("coefficients alpha must be non-negative")
        for k, filtration in enumerate(filtrations):
            if filtration.ambient != self.ambient or filtration.host != self.host:
                raise DimensionMismatchError(f"filtration {k} lives on another space")
            if filtration.orientation is not Orientation.LEFT:
                raise FiltrationError(f"filtration {k} is not left-continuous")
            profile = filtration.classify()
            if not (profile.separated and profile.exhaustive):
                raise FiltrationError(f"filtration {k} must be separated and exhaustive")

    @classmethod
    def from_flags(
        cls,
        p: int,
        dim: int,
        flags: Sequence[Tuple[Sequence[Any], Sequence[Sequence[Sequence[int]]]]],
        alpha: Sequence[Any] = None,
    ) -> "MultiFiltSpace":
        """
        Build from (weights, flag) pairs

        flag[i] lists the vectors spanning the i-th step and weights[i] is
        the index at which it appears; weights strictly decrease. A flag that
        stops short of the whole space is completed at index 0, which then
        must lie below every weight.
        """
        field = PrimeField(p)
        host = LinearCategory(field)
        ambient = VectorSpace(field, dim)
        filtrations = []
        for weights, flag in flags:
            if len(weights) != len(flag):
                raise InputValidationError("each flag step needs exactly one weight")
            steps = [
                (parse_rational(w) if isinstance(w, str) else Fraction(w), Subspace.span(field, dim, vectors))
                for w, vectors in zip(weights, flag)
            ]
            for (_, smaller), (_, larger) in zip(steps, steps[1:]):
                if smaller == larger or not larger.contains(smaller):
                    raise InputValidationError("flag steps must be strictly increasing")
            if not steps or not steps[-1][1].is_full():
                if steps and steps[-1][0] <= 0:
                    raise InputValidationError("flag does not reach the whole space above index 0")
                steps.append((Fraction(0), Subspace.full(field, dim)))
            filtrations.append(StepFiltration.from_steps(host, ambient, steps))
        if alpha is None:
            alpha = [1] * len(filtrations)
        return cls(field, dim, tuple(filtrations), tuple(parse_rational(a) if isinstance(a, str) else Fraction(a) for a in alpha))

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def n(self) -> int:
        return len(self.filtrations)

    @property
    def host(self) -> LinearCategory:
        return LinearCategory(self.field)

    @property
    def ambient(self) -> VectorSpace:
        return VectorSpace(self.field, self.dim)

    def full(self) -> Subspace:
        return Subspace.full(self.field, self.dim)

    def zero(self) -> Subspace:
        return Subspace.zero(self.field, self.dim)

    def degree(self, sub: Subspace = None) -> ExactDegree:
        """sum_k alpha_k * deg(F_k induced on sub)"""
        if sub is None:
            return exact_sum(a * model_degree(f) for a, f in zip(self.alpha, self.filtrations))
        self._check_sub(sub)
        inclusion = LinearMap.inclusion(sub)
        return exact_sum(a * model_degree(pullback(inclusion, f)) for a, f in zip(self.alpha, self.filtrations))

    def induced_structure(self, sub: Subspace) -> Tuple["MultiFiltSpace", LinearMap]:
        """sub in its echelon coordinates with the pulled-back filtrations"""
        self._check_sub(sub)
        inclusion = LinearMap.inclusion(sub)
        filtrations = tuple(pullback(inclusion, f) for f in self.filtrations)
        return MultiFiltSpace(self.field, sub.rank, filtrations, self.alpha), inclusion

    def quotient_structure(self, sub: Subspace) -> Tuple["MultiFiltSpace", LinearMap]:
        """X/sub in the non-pivot coordinates with the pushed-forward filtrations"""
        self._check_sub(sub)
        projection = LinearMap.quotient_map(sub)
        filtrations = tuple(pushforward_strong(projection, f) for f in self.filtrations)
        return MultiFiltSpace(self.field, self.dim - sub.rank, filtrations, self.alpha), projection

    def scale_alpha(self, factor: Any) -> "MultiFiltSpace":
        factor = Fraction(factor)
        if factor <= 0:
            raise InputValidationError("alpha can only be scaled by a positive factor")
        return MultiFiltSpace(self.field, self.dim, self.filtrations, tuple(a * factor for a in self.alpha))

    def is_compatible_map(self, f: LinearMap, target: "MultiFiltSpace") -> bool:
        """Pointwise flag containment; the gluing route must agree"""
        pointwise, glued = self.compatibility_routes(f, target)
        if pointwise != glued:
            raise FiltrationError("pointwise and gluing compatibility tests disagree")
        return pointwise

    def compatibility_routes(self, f: LinearMap, target: "MultiFiltSpace") -> Tuple[bool, bool]:
        self._check_map(f, target)
        pointwise = all(is_compatible(f, a, b) for a, b in zip(self.filtrations, target.filtrations))
        glued = all(gluing_witness(f, a, b).holds for a, b in zip(self.filtrations, target.filtrations))
        return pointwise, glued

    def flag_steps(self) -> List[Subspace]:
        """Every value of every filtration, in order of appearance"""
        steps: List[Subspace] = []
        for filtration in self.filtrations:
            for value in filtration.values:
                if value not in steps:
                    steps.append(value)
        return steps

    def jumping_set(self) -> Tuple[ExactDegree, ...]:
        indices: List[ExactDegree] = []
        for filtration in self.filtrations:
            for index in filtration.minimal_jumping_set():
                if not any(index == existing for existing in indices):
                    indices.append(as_exact(index))
        return tuple(indices)

    def _check_sub(self, sub: Subspace):
        if sub.field != self.field or sub.dim != self.dim:
            raise DimensionMismatchError(f"{sub!r} is not a subspace of {self.field.name}^{self.dim}")

    def _check_map(self, f: LinearMap, target: "MultiFiltSpace"):
        if f.source != self.ambient or f.target != target.ambient:
            raise DimensionMismatchError("linear map does not match the spaces")
        if self.alpha != target.alpha:
            raise InputValidationError("compatible maps need matching coefficients alpha")

    def __repr__(self) -> str:
        return f"MultiFiltSpace({self.field.name}^{self.dim}, n={self.n}, alpha={[str(a) for a in self.alpha]})"
