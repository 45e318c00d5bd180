"""
Random instance specifications for `hn oracle --random`

    multifilt_fp:p=2,dim=3,n=2,count=500,seed=0
    lattice:family=diag2,count=50,seed=0
    lattice:family=random,rank=3,count=20,seed=0
"""

import random
from dataclasses import dataclass, field
from typing import Dict, Iterator, Tuple

from ..config.engine_config import EngineConfig
from ..core.errors import InputValidationError
from ..core.hn_engine import HNContext
from ..lattice.context import LatticeContext
from ..lattice.generators import diag2_family, random_lattice
from ..multifilt.context import MultiFiltContext
from ..multifilt.generators import random_space

DEFAULTS = {
    "multifilt_fp": {"p": "2", "dim": "3", "n": "2", "count": "500", "seed": "0"},
    "lattice": {"family": "diag2", "rank": "2", "count": "50", "seed": "0"},
}
LATTICE_FAMILIES = ("diag2", "random")


@dataclass(frozen=True)
class RandomSpec:
    kind: str
    params: Dict[str, str] = field(default_factory=dict)

    def integer(self, name: str) -> int:
        try:
            return int(self.params[name])
        except ValueError:
            raise InputValidationError(f"--random parameter {name} must be an integer, got {self.params[name]!r}") from None

    @property
    def count(self) -> int:
        return self.integer("count")

    @property
    def seed(self) -> int:
        return self.integer("seed")


def parse_random_spec(text: str) -> RandomSpec:
    """Parse "<kind>:<key>=<value>,..." with per-kind defaults"""
    kind, _, rest = text.partition(":")
    kind = kind.strip()
    if kind not in DEFAULTS:
        raise InputValidationError(f"unknown random kind {kind!r}; expected one of {', '.join(DEFAULTS)}")
    params = dict(DEFAULTS[kind])
    for item in filter(None, (part.strip() for part in rest.split(","))):
        key, sep, value = item.partition("=")
        if not sep or key not in DEFAULTS[kind]:
            raise InputValidationError(f"bad --random parameter {item!r} for {kind}")
        params[key] = value
    spec = RandomSpec(kind, params)
    if kind == "lattice" and params["family"] not in LATTICE_FAMILIES:
        raise InputValidationError(f"unknown lattice family {params['family']!r}")
    for name in params:
        if name != "family":
            spec.integer(name)
    if spec.count < 0:
        raise InputValidationError("count must be non-negative")
    return spec


def random_instances(spec: RandomSpec, config: EngineConfig) -> Iterator[Tuple[int, HNContext]]:
    """(seed, object) pairs; instance i is drawn from random.Random(seed + i)"""
    if spec.kind == "multifilt_fp":
        p, dim, n = spec.integer("p"), spec.integer("dim"), spec.integer("n")
        for i in range(spec.count):
            rng = random.Random(spec.seed + i)
            yield spec.seed + i, MultiFiltContext(random_space(rng, p, dim, n), config)
        return
    family = spec.params["family"]
    for i in range(spec.count):
        rng = random.Random(spec.seed + i)
        if family == "diag2":
            lattice = diag2_family(rng, 1)[0]
        else:
            lattice = random_lattice(rng, spec.integer("rank"))
        yield spec.seed + i, LatticeContext(lattice, config)
