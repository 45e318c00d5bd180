"""
Finite-length real-indexed filtrations over an abstract subobject interface

A StepFiltration is a decreasing chain of subobjects indexed by exact reals,
stored as breakpoints and the values on the intervals between them.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Callable, List, Optional, Sequence, Tuple

from .errors import FiltrationError
from .exact import ExactDegree, as_exact, unit_like
from .polygon import HNMeasure


class SubobjectApi(ABC):
    """
    Subobject lattice of a host category

    Implementations must be hashable value objects (frozen dataclasses):
    filtrations carry their host and compare by value.
    """

    @abstractmethod
    def rank(self, sub: Any) -> int:
        """Rank of a subobject handle"""

    @abstractmethod
    def contains(self, big: Any, small: Any) -> bool:
        """True when small is a subobject of big"""

    def equal(self, a: Any, b: Any) -> bool:
        return self.contains(a, b) and self.contains(b, a)

    @abstractmethod
    def intersect(self, a: Any, b: Any) -> Any:
        """Intersection of two subobjects of the same object"""

    @abstractmethod
    def sum(self, a: Any, b: Any) -> Any:
        """Sum of two subobjects of the same object"""

    @abstractmethod
    def image(self, f: Any, sub: Any) -> Any:
        """Image of a subobject of the source of f"""

    @abstractmethod
    def preimage(self, f: Any, sub: Any) -> Any:
        """Preimage of a subobject of the target of f"""

    @abstractmethod
    def zero(self, obj: Any) -> Any:
        """Zero subobject of obj"""

    @abstractmethod
    def full(self, obj: Any) -> Any:
        """obj as a subobject of itself"""

    @abstractmethod
    def source(self, f: Any) -> Any:
        """Source object of a morphism"""

    @abstractmethod
    def target(self, f: Any) -> Any:
        """Target object of a morphism"""

    def compose(self, g: Any, f: Any) -> Any:
        raise NotImplementedError(f"{type(self).__name__} does not compose morphisms")

    def direct_sum(self, x: Any, y: Any) -> Any:
        raise NotImplementedError(f"{type(self).__name__} has no direct sums")

    def sum_embedding(self, u: Any, v: Any, x: Any, y: Any) -> Any:
        """The subobject u + v of x + y for u in x and v in y"""
        raise NotImplementedError(f"{type(self).__name__} has no direct sums")

    def graph(self, f: Any) -> Any:
        raise NotImplementedError(f"{type(self).__name__} has no graph morphisms")

    def second_projection(self, x: Any, y: Any) -> Any:
        raise NotImplementedError(f"{type(self).__name__} has no projections")


class Orientation(str, Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class FiltrationProfile:
    """Result of StepFiltration.classify"""

    separated: bool
    exhaustive: bool
    minimal_jumping_set: Tuple[ExactDegree, ...]
    orientation: Orientation

    def is_jumping_set(self, indices: Sequence[Any]) -> bool:
        candidates = [as_exact(i) for i in indices]
        return all(any(jump == c for c in candidates) for jump in self.minimal_jumping_set)

    def locally_constant_at(self, index: Any) -> Tuple[bool, bool]:
        """(left locally constant, right locally constant) at index"""
        index = as_exact(index)
        if not any(jump == index for jump in self.minimal_jumping_set):
            return True, True
        return (True, False) if self.orientation is Orientation.LEFT else (False, True)


@dataclass(frozen=True)
class StepFiltration:
    """
    Finite-length filtration of `ambient`

    breakpoints l_1 > ... > l_n and values U_0 <= U_1 <= ... <= U_n. Left
    orientation: F(l) = U_0 above l_1, U_i on (l_{i+1}, l_i], U_n at or below
    l_n. Right orientation uses the half-open intervals [l_{i+1}, l_i).
    """

    host: SubobjectApi
    ambient: Any
    breakpoints: Tuple[ExactDegree, ...]
    values: Tuple[Any, ...]
    orientation: Orientation = Orientation.LEFT

    def __post_init__(self):
        breakpoints = tuple(as_exact(b) for b in self.breakpoints)
        values = tuple(self.values)
        object.__setattr__(self, "breakpoints", breakpoints)
        object.__setattr__(self, "values", values)
        if len(values) != len(breakpoints) + 1:
            raise FiltrationError(
                f"{len(breakpoints)} breakpoints need {len(breakpoints) + 1} values, got {len(values)}"
            )
        for upper, lower in zip(breakpoints, breakpoints[1:]):
            if not upper > lower:
                raise FiltrationError("breakpoints must be strictly decreasing")
        for smaller, larger in zip(values, values[1:]):
            if not self.host.contains(larger, smaller):
                raise FiltrationError("filtration values must increase as the index decreases")

    # -- constructors -------------------------------------------------

    @classmethod
    def trivial(cls, host: SubobjectApi, ambient: Any) -> "StepFiltration":
        """The constant filtration with value the whole object"""
        return cls(host, ambient, (), (host.full(ambient),))

    @classmethod
    def zero_filtration(cls, host: SubobjectApi, ambient: Any) -> "StepFiltration":
        return cls(host, ambient, (), (host.zero(ambient),))

    @classmethod
    def from_steps(
        cls, host: SubobjectApi, ambient: Any, steps: Sequence[Tuple[Any, Any]]
    ) -> "StepFiltration":
        """Separated filtration from (index, value) pairs with decreasing indices"""
        return cls(
            host,
            ambient,
            tuple(index for index, _ in steps),
            (host.zero(ambient),) + tuple(value for _, value in steps),
        )

    # -- evaluation ---------------------------------------------------

    def eval(self, index: Any) -> Any:
        index = as_exact(index)
        if self.orientation is Orientation.LEFT:
            position = sum(1 for b in self.breakpoints if b >= index)
        else:
            position = sum(1 for b in self.breakpoints if b > index)
        return self.values[position]

    __call__ = eval

    def minimal_jumping_set(self) -> Tuple[ExactDegree, ...]:
        return tuple(
            b
            for b, above, below in zip(self.breakpoints, self.values, self.values[1:])
            if not self.host.equal(above, below)
        )

    def canonicalize(self) -> "StepFiltration":
        kept_breakpoints: List[ExactDegree] = []
        kept_values = [self.values[0]]
        for b, above, below in zip(self.breakpoints, self.values, self.values[1:]):
            if not self.host.equal(above, below):
                kept_breakpoints.append(b)
                kept_values.append(below)
        return StepFiltration(self.host, self.ambient, tuple(kept_breakpoints), tuple(kept_values), self.orientation)

    def is_canonical(self) -> bool:
        return len(self.minimal_jumping_set()) == len(self.breakpoints)

    def classify(self) -> FiltrationProfile:
        return FiltrationProfile(
            separated=self.host.equal(self.values[0], self.host.zero(self.ambient)),
            exhaustive=self.host.equal(self.values[-1], self.host.full(self.ambient)),
            minimal_jumping_set=self.minimal_jumping_set(),
            orientation=self.orientation,
        )

    def left_continuize(self) -> "StepFiltration":
        return self._with_orientation(Orientation.LEFT)

    def right_continuize(self) -> "StepFiltration":
        return self._with_orientation(Orientation.RIGHT)

    def _with_orientation(self, orientation: Orientation) -> "StepFiltration":
        if orientation is self.orientation:
            return self
        return StepFiltration(self.host, self.ambient, self.breakpoints, self.values, orientation)

    def same_as(self, other: "StepFiltration") -> bool:
        """Equality of the filtrations as functions of the index"""
        if self.orientation is not other.orientation and (self.breakpoints or other.breakpoints):
            a, b = self.canonicalize(), other.canonicalize()
            if a.breakpoints or b.breakpoints:
                return False
            return self.host.equal(a.values[0], b.values[0])
        a, b = self.canonicalize(), other.canonicalize()
        return (
            a.breakpoints == b.breakpoints
            and len(a.values) == len(b.values)
            and all(self.host.equal(x, y) for x, y in zip(a.values, b.values))
        )

    def map_values(
        self,
        hook: Callable[[Any], Any],
        host: Optional[SubobjectApi] = None,
        ambient: Any = None,
    ) -> "StepFiltration":
        """The filtration induced by a subobject-preserving functor"""
        return StepFiltration(
            host if host is not None else self.host,
            ambient if ambient is not None else self.ambient,
            self.breakpoints,
            tuple(hook(value) for value in self.values),
            self.orientation,
        )

    def ranks(self) -> Tuple[int, ...]:
        return tuple(self.host.rank(value) for value in self.values)


# -- morphisms ------------------------------------------------------------


def pullback(f: Any, filtration: StepFiltration) -> StepFiltration:
    """Inverse image: (f*G)(l) = f^{-1}(G(l))"""
    host = filtration.host
    return StepFiltration(
        host,
        host.source(f),
        filtration.breakpoints,
        tuple(host.preimage(f, value) for value in filtration.values),
        filtration.orientation,
    )


def pushforward_weak(f: Any, filtration: StepFiltration) -> StepFiltration:
    """Weak direct image: (f_b F)(l) = f(F(l))"""
    host = filtration.host
    return StepFiltration(
        host,
        host.target(f),
        filtration.breakpoints,
        tuple(host.image(f, value) for value in filtration.values),
        filtration.orientation,
    )


def pushforward_strong(f: Any, filtration: StepFiltration) -> StepFiltration:
    """Strong direct image, the left continuization of the weak one"""
    weak = pushforward_weak(f, filtration)
    strong = weak.left_continuize()
    if filtration.orientation is Orientation.LEFT:
        # finite length: both are constant on the same half-open intervals
        for index in _sample_points(weak, strong, full=True):
            if not weak.host.equal(weak.eval(index), strong.eval(index)):
                raise FiltrationError(f"strong and weak direct images differ at {index!r}")
    return strong


@dataclass(frozen=True)
class InclusionCertificate:
    index: ExactDegree
    source_image: Any
    target_value: Any
    holds: bool


@dataclass(frozen=True)
class FiltrationMorphismWitness:
    """Pointwise inclusion certificates for f(F(l)) <= G(l)"""

    morphism: Any
    source: StepFiltration
    target: StepFiltration
    certificates: Tuple[InclusionCertificate, ...]

    @property
    def compatible(self) -> bool:
        return all(c.holds for c in self.certificates)

    @property
    def violations(self) -> List[ExactDegree]:
        return [c.index for c in self.certificates if not c.holds]


def compatibility_witness(f: Any, source: StepFiltration, target: StepFiltration) -> FiltrationMorphismWitness:
    host = source.host
    certificates = []
    for index in _sample_points(source, target):
        moved = host.image(f, source.eval(index))
        value = target.eval(index)
        certificates.append(InclusionCertificate(index, moved, value, host.contains(value, moved)))
    return FiltrationMorphismWitness(f, source, target, tuple(certificates))


def is_compatible(f: Any, source: StepFiltration, target: StepFiltration) -> bool:
    return compatibility_witness(f, source, target).compatible


def check_compatibility_equivalence(
    f: Any, source: StepFiltration, target: StepFiltration
) -> Tuple[bool, bool, bool]:
    """The pointwise, pullback and weak-pushforward formulations of compatibility"""
    host = source.host
    points = _sample_points(source, target, full=True)
    pulled = pullback(f, target)
    pushed = pushforward_weak(f, source)
    via_pullback = all(host.contains(pulled.eval(i), source.eval(i)) for i in points)
    via_pushforward = all(host.contains(target.eval(i), pushed.eval(i)) for i in points)
    return is_compatible(f, source, target), via_pullback, via_pushforward


def direct_sum(first: StepFiltration, second: StepFiltration) -> StepFiltration:
    """H(l) = F(l) + G(l) on the direct sum of the ambients"""
    if first.orientation is not Orientation.LEFT or second.orientation is not Orientation.LEFT:
        raise FiltrationError("direct sums are built from left-continuous filtrations")
    host = first.host
    total = host.direct_sum(first.ambient, second.ambient)
    indices = _union_desc(first.breakpoints, second.breakpoints)
    above = _above(indices)
    values = [host.sum_embedding(first.eval(above), second.eval(above), first.ambient, second.ambient)]
    for index in indices:
        values.append(host.sum_embedding(first.eval(index), second.eval(index), first.ambient, second.ambient))
    return StepFiltration(host, total, tuple(indices), tuple(values), Orientation.LEFT)


def combine(first: StepFiltration, second: StepFiltration, operation: str = "sum") -> StepFiltration:
    """Pointwise sum or intersection of two left-continuous filtrations of one object"""
    if first.orientation is not Orientation.LEFT or second.orientation is not Orientation.LEFT:
        raise FiltrationError("pointwise operations take left-continuous filtrations")
    host = first.host
    if operation not in ("sum", "intersect"):
        raise FiltrationError(f"unknown pointwise operation {operation!r}")
    op = host.sum if operation == "sum" else host.intersect
    indices = _union_desc(first.breakpoints, second.breakpoints)
    points = [_above(indices)] + list(indices)
    values = tuple(op(first.eval(i), second.eval(i)) for i in points)
    return StepFiltration(host, first.ambient, tuple(indices), values, Orientation.LEFT).canonicalize()


@dataclass(frozen=True)
class GluingWitness:
    """The glued filtration H with the two roundtrip checks"""

    glued: StepFiltration
    pullback_matches: bool
    pushforward_matches: bool

    @property
    def holds(self) -> bool:
        return self.pullback_matches and self.pushforward_matches


def gluing_witness(f: Any, source: StepFiltration, target: StepFiltration) -> GluingWitness:
    """H = F + G, then graph(f)* H == F and pr_2* H == G"""
    host = source.host
    glued = direct_sum(source, target)
    back = pullback(host.graph(f), glued)
    forward = pushforward_strong(host.second_projection(source.ambient, target.ambient), glued)
    return GluingWitness(glued, back.same_as(source), forward.same_as(target))


def cartesian_square_commutes(filtration: StepFiltration, u: Any, q: Any, v: Any, p: Any) -> bool:
    """
    v* q_* F == p_* u* F for a square X -u-> Y -q-> W, X -p-> Z -v-> W

    u, v admissible monomorphisms; p, q admissible epimorphisms; F lives on Y.
    """
    left = pullback(v, pushforward_strong(q, filtration))
    right = pushforward_strong(p, pullback(u, filtration))
    return left.same_as(right)


def filtration_measure(filtration: StepFiltration) -> HNMeasure:
    """Distributional derivative of t -> -rank(F(t)) / rank(X)"""
    host = filtration.host
    total = host.rank(host.full(filtration.ambient))
    if total == 0:
        return HNMeasure.zero()
    ranks = filtration.ranks()
    return HNMeasure(
        tuple(
            (index, Fraction(below - above, total))
            for index, above, below in zip(filtration.breakpoints, ranks, ranks[1:])
        )
    )


def _union_desc(*index_lists: Sequence[ExactDegree]) -> List[ExactDegree]:
    merged: List[ExactDegree] = []
    for index in (i for indices in index_lists for i in indices):
        if not any(index == existing for existing in merged):
            merged.append(index)
    merged.sort(key=_DescKey)
    return merged


class _DescKey:
    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value

    def __lt__(self, other: "_DescKey") -> bool:
        return self.value > other.value


def _above(indices: Sequence[ExactDegree]) -> ExactDegree:
    return indices[0] + unit_like(indices[0]) if indices else as_exact(1)


def _sample_points(*filtrations: StepFiltration, full: bool = False) -> List[ExactDegree]:
    """
    Indices at which step filtrations are compared

    For left-continuous data the union of the minimal jumping sets and one
    index above them is complete; otherwise midpoints and an index below are
    added so every interval of constancy is sampled.
    """
    indices = _union_desc(*(f.minimal_jumping_set() for f in filtrations))
    points = [_above(indices)] + list(indices)
    if full or any(f.orientation is not Orientation.LEFT for f in filtrations):
        points += [(a + b) * Fraction(1, 2) for a, b in zip(indices, indices[1:])]
        if indices:
            points.append(indices[-1] - unit_like(indices[-1]))
    return points
