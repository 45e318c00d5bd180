"""
Harder-Narasimhan engine
Slopes, semistability, the destabilize / quotient / lift loop, HN filtrations,
polygons and measures, and the slope and functoriality checks built on them.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Callable, List, Optional, Sequence, Tuple

from ..utils.logger import Logger
from ..utils.verification import CheckReport
from .errors import (
    CertificationError,
    FiltrationError,
    HNError,
    HNSequenceError,
    ZeroObjectError,
)
from .exact import (
    NEG_INFINITY,
    POS_INFINITY,
    ExactDegree,
    ExactSlope,
    ExtendedSlope,
    exact_sum,
    slope_of,
)
from .filtration import (
    FiltrationMorphismWitness,
    Orientation,
    StepFiltration,
    SubobjectApi,
    _sample_points,
    compatibility_witness,
    filtration_measure,
)
from .polygon import HNMeasure, HNPolygon, measure_to_polygon

logger = Logger.get_logger(__name__)


class Certification(str, Enum):
    PROVED = "proved"
    HEURISTIC = "heuristic"

    def combine(self, other: "Certification") -> "Certification":
        return Certification.PROVED if self is other is Certification.PROVED else Certification.HEURISTIC


@dataclass(frozen=True)
class DestabilizerResult:
    """Destabilizing subobject with the certification of its search"""

    subobject: Any
    certification: Certification = Certification.PROVED
    examined: int = 0


class HNContext(ABC):
    """
    An object with an arithmetic structure

    Subobjects are handles of `host` inside `ambient`. Hosts supply the degree,
    the destabilizer oracle and the induced and quotient structures.
    """

    @property
    @abstractmethod
    def host(self) -> SubobjectApi:
        """Subobject lattice the handles live in"""

    @property
    @abstractmethod
    def ambient(self) -> Any:
        """Underlying object"""

    @abstractmethod
    def degree(self, sub: Any = None) -> ExactDegree:
        """Degree of sub with the induced structure; the whole object when sub is None"""

    @abstractmethod
    def destabilizer(self) -> DestabilizerResult:
        """Maximal-slope subobject of maximal rank; ties are an error"""

    @abstractmethod
    def quotient(self, sub: Any) -> Tuple["HNContext", Any]:
        """(quotient object with its quotient structure, projection morphism)"""

    @abstractmethod
    def induced(self, sub: Any) -> Tuple["HNContext", Any]:
        """(sub with its induced structure, inclusion morphism)"""

    def is_compatible_morphism(self, f: Any, target: "HNContext") -> bool:
        """Whether f: self -> target respects the structures"""
        raise NotImplementedError(f"{type(self).__name__} has no compatibility test")

    def model_semistability(self) -> Optional[bool]:
        """Semistability read off the structure directly, when the host knows a criterion"""
        return None

    def rank(self, sub: Any = None) -> int:
        return self.host.rank(self.full() if sub is None else sub)

    def is_zero(self) -> bool:
        return self.rank() == 0

    def zero(self) -> Any:
        return self.host.zero(self.ambient)

    def full(self) -> Any:
        return self.host.full(self.ambient)

    def preimage(self, projection: Any, sub: Any) -> Any:
        return self.host.preimage(projection, sub)

    def image(self, f: Any, sub: Any = None) -> Any:
        return self.host.image(f, self.full() if sub is None else sub)

    def sub_slope(self, sub: Any) -> ExactSlope:
        return slope_of(self.degree(sub), self.rank(sub))


@dataclass(frozen=True)
class HNDecomposition:
    """HN sequence 0 = X_0 < X_1 < ... < X_n = X with strictly decreasing subquotient slopes"""

    host: SubobjectApi
    ambient: Any
    chain: Tuple[Any, ...]
    slopes: Tuple[ExactSlope, ...]
    ranks: Tuple[int, ...]
    degree: ExactDegree
    certification: Certification = Certification.PROVED

    @property
    def length(self) -> int:
        return len(self.slopes)

    @property
    def rank(self) -> int:
        return self.ranks[-1]

    @property
    def mu_max(self) -> ExtendedSlope:
        return self.slopes[0] if self.slopes else NEG_INFINITY

    @property
    def mu_min(self) -> ExtendedSlope:
        return self.slopes[-1] if self.slopes else POS_INFINITY

    def normalized_ranks(self) -> Tuple[Fraction, ...]:
        if self.rank == 0:
            return (Fraction(0),)
        return tuple(Fraction(r, self.rank) for r in self.ranks)

    def subquotient_ranks(self) -> Tuple[int, ...]:
        return tuple(b - a for a, b in zip(self.ranks, self.ranks[1:]))

    def filtration(self) -> StepFiltration:
        """X_lambda = X_i for the largest i with slope_i >= lambda"""
        return StepFiltration(self.host, self.ambient, self.slopes, self.chain, Orientation.LEFT)

    def measure(self) -> HNMeasure:
        t = self.normalized_ranks()
        return HNMeasure(tuple((slope, b - a) for slope, a, b in zip(self.slopes, t, t[1:])))

    def polygon(self) -> HNPolygon:
        return measure_to_polygon(self.measure())


# -- slopes ---------------------------------------------------------------


def slope(ctx: HNContext) -> ExactSlope:
    if ctx.is_zero():
        raise ZeroObjectError("slope of the zero object is undefined")
    return slope_of(ctx.degree(), ctx.rank())


def mu_max(ctx: HNContext) -> ExtendedSlope:
    if ctx.is_zero():
        return NEG_INFINITY
    return hn_sequence(ctx).mu_max


def mu_min(ctx: HNContext) -> ExtendedSlope:
    if ctx.is_zero():
        return POS_INFINITY
    return hn_sequence(ctx).mu_min


def model_degree(filtration: StepFiltration, rank: Optional[Callable[[Any], int]] = None) -> ExactDegree:
    """
    Degree of a filtered object: sum of lambda_i * (r_i - r_{i-1}) over the jumps

    The filtration must be separated, exhaustive and left-continuous.
    """
    if filtration.orientation is not Orientation.LEFT:
        raise FiltrationError("model degree needs a left-continuous filtration")
    profile = filtration.classify()
    if not profile.separated:
        raise FiltrationError("model degree needs a separated filtration")
    if not profile.exhaustive:
        raise FiltrationError("model degree needs an exhaustive filtration")
    rank = rank or filtration.host.rank
    canonical = filtration.canonicalize()
    ranks = [rank(value) for value in canonical.values]
    return exact_sum(
        index * (below - above) for index, above, below in zip(canonical.breakpoints, ranks, ranks[1:])
    )


def is_semistable(ctx: HNContext) -> bool:
    if ctx.is_zero():
        raise ZeroObjectError("semistability of the zero object is undefined")
    result = ctx.destabilizer()
    semistable = ctx.sub_slope(result.subobject) == slope(ctx)
    model = ctx.model_semistability()
    if model is not None and model != semistable:
        raise CertificationError(
            f"destabilizer says semistable={semistable}, structure says semistable={model}"
        )
    return semistable


# -- HN sequence ----------------------------------------------------------


def hn_sequence(ctx: HNContext, verify_subquotients: bool = False) -> HNDecomposition:
    """
    Destabilize, pass to the quotient, repeat; lift each step back by preimage

    With verify_subquotients every destabilizer is also checked to be
    semistable under its induced structure.
    """
    host = ctx.host
    chain: List[Any] = [ctx.zero()]
    slopes: List[ExactSlope] = []
    projections: List[Any] = []
    certification = Certification.PROVED
    current = ctx

    while not current.is_zero():
        try:
            result = current.destabilizer()
        except HNError as e:
            raise HNSequenceError(
                f"destabilizer failed after {len(slopes)} steps: {e}", chain, e
            ) from e
        step = result.subobject
        step_rank = current.rank(step)
        if step_rank == 0:
            raise HNSequenceError("destabilizer returned the zero subobject", chain)
        step_slope = slope_of(current.degree(step), step_rank)
        if slopes and not step_slope < slopes[-1]:
            raise HNSequenceError(
                f"subquotient slopes do not decrease: {step_slope!r} after {slopes[-1]!r}", chain
            )
        if verify_subquotients and not is_semistable(current.induced(step)[0]):
            raise HNSequenceError(f"subquotient of slope {step_slope!r} is not semistable", chain)

        lifted = step
        for projection in reversed(projections):
            lifted = host.preimage(projection, lifted)
        chain.append(lifted)
        slopes.append(step_slope)
        certification = certification.combine(result.certification)
        logger.debug(f"HN step {len(slopes)}: rank {host.rank(lifted)}, slope {step_slope!r}")

        current, projection = current.quotient(step)
        projections.append(projection)

    return HNDecomposition(
        host=host,
        ambient=ctx.ambient,
        chain=tuple(chain),
        slopes=tuple(slopes),
        ranks=tuple(host.rank(x) for x in chain),
        degree=ctx.degree(),
        certification=certification,
    )


def hn_filtration(ctx: HNContext) -> StepFiltration:
    return hn_sequence(ctx).filtration()


def hn_polygon(ctx: HNContext) -> HNPolygon:
    return hn_sequence(ctx).polygon()


def hn_measure(ctx: HNContext) -> HNMeasure:
    return hn_sequence(ctx).measure()


def chain_from_filtration(filtration: StepFiltration) -> Tuple[Tuple[Any, ...], Tuple[ExactDegree, ...]]:
    """(values, indices) of a filtration at its minimal jumping set"""
    canonical = filtration.canonicalize()
    return canonical.values, canonical.breakpoints


def same_chain(host: SubobjectApi, a: Sequence[Any], b: Sequence[Any]) -> bool:
    return len(a) == len(b) and all(host.equal(x, y) for x, y in zip(a, b))


# -- checks ---------------------------------------------------------------


def _morphism_kind(host: SubobjectApi, f: Any, source: HNContext, target: HNContext) -> Tuple[bool, bool, bool]:
    """(zero, mono, epi) for f: source -> target"""
    image = host.image(f, source.full())
    zero = host.rank(image) == 0
    mono = host.rank(host.preimage(f, target.zero())) == 0
    epi = host.equal(image, target.full())
    return zero, mono, epi


def verify_slope_bounds(ctx: HNContext, report: Optional[CheckReport] = None) -> CheckReport:
    """mu_min <= mu <= mu_max, rank-weighted slopes sum to the degree, measure and polygon invariants"""
    report = report or CheckReport("slopes")
    if ctx.is_zero():
        hn = hn_sequence(ctx)
        report.expect(hn.measure().is_zero(), "zero-measure", "zero object has a non-zero measure")
        return report
    hn = hn_sequence(ctx)
    mu = slope(ctx)
    report.expect(hn.mu_min <= mu <= hn.mu_max, "slope-bounds", f"{hn.mu_min!r} <= {mu!r} <= {hn.mu_max!r} fails")
    report.expect(
        all(a > b for a, b in zip(hn.slopes, hn.slopes[1:])),
        "strict-decrease",
        f"slopes {hn.slopes!r} do not strictly decrease",
    )
    weighted = exact_sum(s * r for s, r in zip(hn.slopes, hn.subquotient_ranks()))
    report.expect(weighted == hn.degree, "degree-sum", f"{weighted!r} != {hn.degree!r}")
    measure = hn.measure()
    report.expect(measure.total_mass() == 1, "unit-mass", f"mass {measure.total_mass()}")
    report.expect(measure.mean() == mu, "measure-mean", f"mean {measure.mean()!r} != slope {mu!r}")
    polygon = hn.polygon()
    report.expect(polygon.is_concave(), "concave", "polygon is not concave")
    report.expect(polygon.endpoint() == mu, "endpoint", f"endpoint {polygon.endpoint()!r} != slope {mu!r}")
    return report


def verify_sub_quotient_bounds(ctx: HNContext, sub: Any, report: Optional[CheckReport] = None) -> CheckReport:
    """mu_max(sub) <= mu_max(X) and mu_min(X/sub) >= mu_min(X)"""
    report = report or CheckReport("sub-quotient")
    whole_max, whole_min = mu_max(ctx), mu_min(ctx)
    sub_ctx, _ = ctx.induced(sub)
    quotient_ctx, _ = ctx.quotient(sub)
    sub_max = mu_max(sub_ctx)
    quotient_min = mu_min(quotient_ctx)
    report.expect(sub_max <= whole_max, "sub-mu-max", f"{sub_max!r} > {whole_max!r}")
    report.expect(quotient_min >= whole_min, "quotient-mu-min", f"{quotient_min!r} < {whole_min!r}")
    return report


def verify_hn_invariants(ctx: HNContext, report: Optional[CheckReport] = None) -> CheckReport:
    """Semistable subquotients and uniqueness of the chain read back from the HN filtration"""
    report = report or CheckReport("hn-invariants")
    hn = hn_sequence(ctx)
    host = ctx.host
    current = ctx
    projections: List[Any] = []
    for step, expected in zip(hn.chain[1:], hn.slopes):
        piece = step
        for projection in projections:
            piece = host.image(projection, piece)
        sub_ctx, _ = current.induced(piece)
        report.expect(
            sub_ctx.sub_slope(sub_ctx.full()) == expected,
            "subquotient-slope",
            f"subquotient at rank {host.rank(step)} has slope {slope(sub_ctx)!r}, expected {expected!r}",
        )
        report.expect(
            is_semistable(sub_ctx), "semistable-subquotient", f"subquotient at rank {host.rank(step)} is not semistable"
        )
        current, projection = current.quotient(piece)
        projections.append(projection)
    values, indices = chain_from_filtration(hn.filtration())
    report.expect(same_chain(host, values, hn.chain), "uniqueness", "chain read back from the HN filtration differs")
    report.expect(tuple(indices) == hn.slopes, "uniqueness", "jumping set differs from the slopes")
    return report


def verify_hom_slope_gap(f: Any, source: HNContext, target: HNContext, report: Optional[CheckReport] = None) -> CheckReport:
    """
    For a compatible f: source -> target

    non-zero f: mu_min(source) <= mu_max(target); mono: mu_max <= mu_max;
    epi: mu_min <= mu_min; semistable with slope(source) > slope(target): f = 0.
    """
    report = report or CheckReport("hom-slope-gap")
    if not report.expect(source.is_compatible_morphism(f, target), "compatible", "morphism is not compatible"):
        return report
    host = source.host
    zero, mono, epi = _morphism_kind(host, f, source, target)
    if zero:
        return report
    src, tgt = hn_sequence(source), hn_sequence(target)
    report.expect(src.mu_min <= tgt.mu_max, "gap", f"mu_min(X) {src.mu_min!r} > mu_max(Y) {tgt.mu_max!r}")
    if mono:
        report.expect(src.mu_max <= tgt.mu_max, "mono", f"mu_max(X) {src.mu_max!r} > mu_max(Y) {tgt.mu_max!r}")
    if epi:
        report.expect(src.mu_min <= tgt.mu_min, "epi", f"mu_min(X) {src.mu_min!r} > mu_min(Y) {tgt.mu_min!r}")
    if src.length == 1 and tgt.length == 1 and src.slopes[0] > tgt.slopes[0]:
        report.expect(False, "hn2-vanishing", "non-zero morphism from a semistable object of larger slope")
    return report


def induced_hn_morphism(f: Any, source: HNContext, target: HNContext) -> FiltrationMorphismWitness:
    """Pointwise certificates that f carries HN(source)(lambda) into HN(target)(lambda)"""
    return compatibility_witness(f, hn_filtration(source), hn_filtration(target))


def verify_functoriality(f: Any, source: HNContext, target: HNContext, report: Optional[CheckReport] = None) -> CheckReport:
    """HN filtration containment plus factorization of f through Y_lambda for lambda <= mu_min(X)"""
    report = report or CheckReport("functoriality")
    witness = induced_hn_morphism(f, source, target)
    report.expect(witness.compatible, "hn-containment", f"containment fails at {witness.violations!r}")
    if not source.is_zero():
        level = mu_min(source)
        image = source.image(f)
        value = hn_filtration(target).eval(level)
        report.expect(
            source.host.contains(value, image), "factorization", f"f(X) is not inside Y at {level!r}"
        )
    return report


def compare_iso_degrees(f: Any, source: HNContext, target: HNContext, report: Optional[CheckReport] = None) -> CheckReport:
    """For a compatible isomorphism: slope, degree, pointwise HN ranks and polygons increase"""
    report = report or CheckReport("iso-degrees")
    if source.is_zero():
        return report
    report.expect(slope(source) <= slope(target), "slope", f"{slope(source)!r} > {slope(target)!r}")
    report.expect(source.degree() <= target.degree(), "degree", f"{source.degree()!r} > {target.degree()!r}")
    x_filtration, y_filtration = hn_filtration(source), hn_filtration(target)
    host = source.host
    for index in _sample_points(x_filtration, y_filtration, full=True):
        rx, ry = host.rank(x_filtration.eval(index)), host.rank(y_filtration.eval(index))
        report.expect(rx <= ry, "pointwise-rank", f"rank {rx} > {ry} at {index!r}")
    report.expect(
        hn_polygon(source).dominated_by(hn_polygon(target)), "polygon-domination", "P_X is not below P_Y"
    )
    return report


def polygon_transport_check(
    ctx: HNContext,
    hook: Optional[Callable[[Any], Any]] = None,
    model_host: Optional[SubobjectApi] = None,
    model_ambient: Any = None,
    model_factory: Optional[Callable[[StepFiltration], HNContext]] = None,
    report: Optional[CheckReport] = None,
) -> CheckReport:
    """
    Transport the HN filtration along an exact rank-preserving hook

    The transported single-filtration object must have the same polygon and
    measure. With model_factory its HN chain is also recomputed by the engine
    and compared with the transported filtration.
    """
    report = report or CheckReport("polygon-transport")
    hn = hn_sequence(ctx)
    transported = hn.filtration()
    if hook is not None:
        transported = transported.map_values(hook, host=model_host, ambient=model_ambient)
    measure = filtration_measure(transported)
    report.expect(measure == hn.measure(), "measure", f"{measure!r} != {hn.measure()!r}")
    report.expect(
        measure_to_polygon(measure) == hn.polygon(), "polygon", "transported polygon differs"
    )
    if model_factory is not None:
        model_hn = hn_sequence(model_factory(transported))
        values, indices = chain_from_filtration(transported)
        report.expect(
            same_chain(transported.host, model_hn.chain, values) and model_hn.slopes == tuple(indices),
            "idempotence",
            "HN sequence of the transported filtration differs from it",
        )
    return report
