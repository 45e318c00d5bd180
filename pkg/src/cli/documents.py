"""
Input and result documents
Input documents are validated with pydantic and built into engine objects;
results are plain models whose exact values re-parse to the originals.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Annotated, Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, TypeAdapter, field_validator

from ..config.engine_config import EngineConfig
from ..core.errors import ExactArithmeticError, InputValidationError
from ..core.exact import (
    InfiniteSlope,
    LogRationalDegree,
    RationalDegree,
    as_exact,
    parse_rational,
    render_decimal,
)
from ..core.hn_engine import HNContext, HNDecomposition
from ..lattice.context import LatticeContext
from ..lattice.lattice import EuclideanLattice, Sublattice
from ..linalg.subspace import Subspace
from ..multifilt.context import MultiFiltContext
from ..multifilt.space import MultiFiltSpace

INPUT_VERSION = 1
RESULT_VERSION = 1


def _rational_text(value: Any) -> str:
    """Accept "a/b" strings and integers; floats would lose exactness"""
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise ValueError(f"rationals are written as \"a/b\" strings or integers, got {value!r}")
    try:
        return str(parse_rational(value))
    except ExactArithmeticError as e:
        raise ValueError(str(e)) from e


RationalText = Annotated[str, BeforeValidator(_rational_text)]


class FiltrationSpec(BaseModel):
    """Weighted flag: flag[i] spans the step that appears at index weights[i]"""

    model_config = ConfigDict(extra="forbid")

    weights: List[RationalText]
    flag: List[List[List[int]]]

    @field_validator("flag")
    @classmethod
    def _same_length_vectors(cls, flag: List[List[List[int]]]) -> List[List[List[int]]]:
        lengths = {len(v) for step in flag for v in step}
        if len(lengths) > 1:
            raise ValueError("flag vectors have different lengths")
        return flag


class MultiFiltDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    version: Literal[1] = INPUT_VERSION
    kind: Literal["multifilt_fp"]
    p: int = Field(ge=2)
    dim: int = Field(ge=0)
    alpha: List[RationalText]
    filtrations: List[FiltrationSpec]


class LatticeDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    version: Literal[1] = INPUT_VERSION
    kind: Literal["lattice"]
    gram: List[List[RationalText]]


InputDocument = Annotated[Union[MultiFiltDocument, LatticeDocument], Field(discriminator="kind")]
INPUT_ADAPTER: TypeAdapter = TypeAdapter(InputDocument)


def load_document(path: Path) -> Union[MultiFiltDocument, LatticeDocument]:
    """Parse and validate; raises pydantic ValidationError on schema violations"""
    return INPUT_ADAPTER.validate_json(Path(path).read_text(encoding="utf-8"))


def parse_document(data: Dict[str, Any]) -> Union[MultiFiltDocument, LatticeDocument]:
    return INPUT_ADAPTER.validate_python(data)


def build_context(document: Union[MultiFiltDocument, LatticeDocument], config: EngineConfig) -> HNContext:
    """Engine object for a validated document; mathematical problems raise InputValidationError"""
    if isinstance(document, LatticeDocument):
        gram = [[Fraction(x) for x in row] for row in document.gram]
        if any(len(row) != len(gram) for row in gram):
            raise InputValidationError("Gram matrix must be square")
        try:
            return LatticeContext(EuclideanLattice(tuple(map(tuple, gram))), config)
        except InputValidationError:
            raise
        except Exception as e:
            raise InputValidationError(f"invalid lattice: {e}") from e
    for k, filtration in enumerate(document.filtrations):
        for step in filtration.flag:
            if any(len(v) != document.dim for v in step):
                raise InputValidationError(f"filtration {k}: flag vectors must have length {document.dim}")
    if len(document.alpha) != len(document.filtrations):
        raise InputValidationError(
            f"{len(document.filtrations)} filtrations but {len(document.alpha)} coefficients"
        )
    try:
        space = MultiFiltSpace.from_flags(
            document.p,
            document.dim,
            [(f.weights, f.flag) for f in document.filtrations],
            document.alpha,
        )
    except InputValidationError:
        raise
    except Exception as e:
        raise InputValidationError(f"invalid multi-filtered space: {e}") from e
    return MultiFiltContext(space, config)


def describe_space(space: MultiFiltSpace) -> Dict[str, Any]:
    """A replayable input document for a multi-filtered space"""
    filtrations = []
    for filtration in space.filtrations:
        canonical = filtration.canonicalize()
        filtrations.append(
            {
                "weights": [str(index.value) for index in canonical.breakpoints],
                "flag": [[list(row) for row in value.basis] for value in canonical.values[1:]],
            }
        )
    return {
        "version": INPUT_VERSION,
        "kind": "multifilt_fp",
        "p": space.p,
        "dim": space.dim,
        "alpha": [str(a) for a in space.alpha],
        "filtrations": filtrations,
    }


def describe_lattice(lattice: EuclideanLattice) -> Dict[str, Any]:
    return {
        "version": INPUT_VERSION,
        "kind": "lattice",
        "gram": [[str(x) for x in row] for row in lattice.gram],
    }


def describe_context(ctx: HNContext) -> Dict[str, Any]:
    if isinstance(ctx, LatticeContext):
        return describe_lattice(ctx.lattice)
    return describe_space(ctx.space)


# -- results --------------------------------------------------------------


class LogRationalValue(BaseModel):
    """-log(d) / (2 root)"""

    model_config = ConfigDict(extra="forbid")

    neg_half_log_of: str
    root: Optional[int] = None


ExactValue = Union[str, LogRationalValue]


class RenderedValue(BaseModel):
    exact: ExactValue
    decimal: str


class VertexEntry(BaseModel):
    t: str
    P: RenderedValue


class AtomEntry(BaseModel):
    location: RenderedValue
    mass: str


class ResultDocument(BaseModel):
    version: Literal[1] = RESULT_VERSION
    kind: str
    status: Literal["ok", "failed"] = "ok"
    digits: int
    rank: int
    degree: RenderedValue
    chain: List[List[List[str]]]
    ranks: List[int]
    slopes: List[RenderedValue]
    polygon: List[VertexEntry]
    measure: List[AtomEntry]
    certification: str
    error: Optional[str] = None
    timing: Optional[float] = None

    def to_json(self) -> str:
        return json.dumps(self.model_dump(exclude_none=True), indent=2, sort_keys=False) + "\n"


def exact_value(value: Any) -> ExactValue:
    """Exact form: "a/b" for rationals, {"neg_half_log_of": "a/b"} for log-rationals"""
    value = as_exact(value)
    if isinstance(value, InfiniteSlope):
        raise ExactArithmeticError("infinite slopes have no exact serialization")
    if isinstance(value, LogRationalDegree):
        return LogRationalValue(neg_half_log_of=str(value.d), root=value.root if value.root != 1 else None)
    return str(value.value)


def parse_exact_value(value: Union[str, Dict[str, Any], LogRationalValue]):
    """Inverse of exact_value"""
    if isinstance(value, dict):
        value = LogRationalValue.model_validate(value)
    if isinstance(value, LogRationalValue):
        return LogRationalDegree(parse_rational(value.neg_half_log_of), value.root or 1)
    return RationalDegree(parse_rational(value))


def rendered(value: Any, digits: int) -> RenderedValue:
    return RenderedValue(exact=exact_value(value), decimal=render_decimal(value, digits))


def _basis(sub: Any) -> List[List[str]]:
    if isinstance(sub, Sublattice):
        return [[str(x) for x in row] for row in sub.generators]
    if isinstance(sub, Subspace):
        return [[str(x) for x in row] for row in sub.basis]
    raise TypeError(f"no serialization for {type(sub).__name__}")


def result_document(
    kind: str,
    hn: HNDecomposition,
    digits: int,
    status: str = "ok",
    error: Optional[str] = None,
    timing: Optional[float] = None,
) -> ResultDocument:
    polygon = hn.polygon()
    measure = hn.measure()
    return ResultDocument(
        kind=kind,
        status=status,
        digits=digits,
        rank=hn.rank,
        degree=rendered(hn.degree, digits),
        chain=[_basis(step) for step in hn.chain],
        ranks=list(hn.ranks),
        slopes=[rendered(s, digits) for s in hn.slopes],
        polygon=[VertexEntry(t=str(t), P=rendered(h, digits)) for t, h in polygon.vertices],
        measure=[AtomEntry(location=rendered(loc, digits), mass=str(mass)) for loc, mass in measure.atoms],
        certification=hn.certification.value,
        error=error,
        timing=timing,
    )


def failed_document(kind: str, partial_chain: List[Any], error: str, digits: int) -> ResultDocument:
    """Partial output for a run that stopped in the destabilizer"""
    return ResultDocument(
        kind=kind,
        status="failed",
        digits=digits,
        rank=0,
        degree=RenderedValue(exact="0", decimal="0"),
        chain=[_basis(step) for step in partial_chain],
        ranks=[],
        slopes=[],
        polygon=[],
        measure=[],
        certification="heuristic",
        error=error,
    )
