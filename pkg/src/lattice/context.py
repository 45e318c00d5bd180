"""
Euclidean lattices as HN engine objects
"""

from dataclasses import dataclass, field
from typing import Optional, Tuple

from ..config.engine_config import EngineConfig
from ..core.exact import ExactDegree
from ..core.hn_engine import DestabilizerResult, HNContext, polygon_transport_check
from ..linalg.fields import QQ
from ..linalg.subspace import LinearCategory, VectorSpace
from ..multifilt.context import single_filtration_context
from ..utils.verification import CheckReport
from .enumeration import destabilizer_enum
from .lattice import (
    EuclideanLattice,
    FreeModule,
    IntegerMap,
    LatticeCategory,
    Sublattice,
    arakelov_degree,
    generic_fibre,
    induced_lattice,
    is_compatible,
    quotient_lattice,
)

HOST = LatticeCategory()


@dataclass(frozen=True)
class LatticeContext(HNContext):
    lattice: EuclideanLattice
    config: EngineConfig = field(default_factory=EngineConfig)

    @property
    def host(self) -> LatticeCategory:
        return HOST

    @property
    def ambient(self) -> FreeModule:
        return self.lattice.module

    def degree(self, sub: Sublattice = None) -> ExactDegree:
        return arakelov_degree(self.lattice, sub)

    def destabilizer(self) -> DestabilizerResult:
        return destabilizer_enum(
            self.lattice,
            self.config.lattice_height_bound,
            self.config.lattice_max_rank,
            self.config.lattice_pair_budget,
            self.config.lattice_bound_ceiling,
        )

    def quotient(self, sub: Sublattice) -> Tuple["LatticeContext", IntegerMap]:
        lattice, projection = quotient_lattice(self.lattice, sub)
        return LatticeContext(lattice, self.config), projection

    def induced(self, sub: Sublattice) -> Tuple["LatticeContext", IntegerMap]:
        lattice, inclusion = induced_lattice(self.lattice, sub)
        return LatticeContext(lattice, self.config), inclusion

    def is_compatible_morphism(self, f: IntegerMap, target: "LatticeContext") -> bool:
        return is_compatible(f.matrix, self.lattice, target.lattice)

    def model_semistability(self) -> Optional[bool]:
        """Rank one lattices are semistable"""
        if self.lattice.rank == 1:
            return True
        return None


def generic_fibre_check(ctx: LatticeContext, report: Optional[CheckReport] = None) -> CheckReport:
    """The HN filtration moved to Q^r keeps its polygon and is its own HN filtration there"""
    rank = ctx.lattice.rank
    return polygon_transport_check(
        ctx,
        hook=generic_fibre,
        model_host=LinearCategory(QQ),
        model_ambient=VectorSpace(QQ, rank),
        model_factory=lambda filtration: single_filtration_context(filtration, ctx.config),
        report=report or CheckReport("generic-fibre"),
    )
