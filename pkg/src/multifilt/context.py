"""
Multi-filtered spaces as HN engine objects
"""

from dataclasses import dataclass, field
from typing import Optional, Tuple

from ..config.engine_config import EngineConfig
from ..core.exact import ExactDegree
from ..core.hn_engine import DestabilizerResult, HNContext
from ..linalg.subspace import LinearCategory, LinearMap, Subspace, VectorSpace
from .destabilizer import destabilizer
from .space import MultiFiltSpace


@dataclass(frozen=True)
class MultiFiltContext(HNContext):
    space: MultiFiltSpace
    config: EngineConfig = field(default_factory=EngineConfig)

    @property
    def host(self) -> LinearCategory:
        return self.space.host

    @property
    def ambient(self) -> VectorSpace:
        return self.space.ambient

    def degree(self, sub: Subspace = None) -> ExactDegree:
        return self.space.degree(sub)

    def destabilizer(self) -> DestabilizerResult:
        return destabilizer(self.space, self.config)

    def quotient(self, sub: Subspace) -> Tuple["MultiFiltContext", LinearMap]:
        space, projection = self.space.quotient_structure(sub)
        return MultiFiltContext(space, self.config), projection

    def induced(self, sub: Subspace) -> Tuple["MultiFiltContext", LinearMap]:
        space, inclusion = self.space.induced_structure(sub)
        return MultiFiltContext(space, self.config), inclusion

    def is_compatible_morphism(self, f: LinearMap, target: "MultiFiltContext") -> bool:
        return self.space.is_compatible_map(f, target.space)

    def model_semistability(self) -> Optional[bool]:
        """A single filtration with positive weight is semistable iff it jumps once"""
        if self.space.n != 1 or self.space.alpha[0] == 0 or self.is_zero():
            return None
        return len(self.space.filtrations[0].minimal_jumping_set()) == 1


def single_filtration_context(filtration, config: EngineConfig = None) -> MultiFiltContext:
    """The model object: one filtration with coefficient 1"""
    ambient = filtration.ambient
    space = MultiFiltSpace(ambient.field, ambient.dim, (filtration,), (1,))
    return MultiFiltContext(space, config or EngineConfig())
