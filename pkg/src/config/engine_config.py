"""
Engine Configuration Management
Handles environment variables and engine limits
"""

import os
import sys
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional

DESTABILIZER_STRATEGIES = ("auto", "bruteforce", "closure")


@dataclass(frozen=True)
class EngineConfig:
    """
    Limits and presentation settings for the HN engine
    """
    # Multi-filtered spaces
    budget: int = 1_000_000
    closure_cap: int = 4096
    destabilizer: str = "auto"
    verify_subquotients: bool = True

    # Lattices
    lattice_height_bound: int = 2
    lattice_max_rank: int = 5
    lattice_pair_budget: int = 200_000
    lattice_bound_ceiling: int = 6

    # Presentation
    digits: int = 12

    # Logging
    log_level: str = "WARNING"
    log_dir: Optional[Path] = None

    @classmethod
    def load_from_env(cls) -> 'EngineConfig':
        """
        Load configuration from environment variables
        """
        log_dir = os.getenv('HN_LOG_DIR')
        return cls(
            budget=int(os.getenv('HN_BUDGET', '1000000')),
            closure_cap=int(os.getenv('HN_CLOSURE_CAP', '4096')),
            destabilizer=os.getenv('HN_DESTABILIZER', 'auto').lower(),
            verify_subquotients=os.getenv('HN_VERIFY_SUBQUOTIENTS', 'true').lower() == 'true',

            lattice_height_bound=int(os.getenv('HN_LATTICE_HEIGHT_BOUND', '2')),
            lattice_max_rank=int(os.getenv('HN_LATTICE_MAX_RANK', '5')),
            lattice_pair_budget=int(os.getenv('HN_LATTICE_PAIR_BUDGET', '200000')),
            lattice_bound_ceiling=int(os.getenv('HN_LATTICE_BOUND_CEILING', '6')),

            digits=int(os.getenv('HN_DIGITS', '12')),

            log_level=os.getenv('HN_LOG_LEVEL', 'WARNING').upper(),
            log_dir=Path(log_dir) if log_dir else None,
        )

    def with_overrides(self, **overrides) -> 'EngineConfig':
        """Copy with command-line values applied; None leaves a field unchanged"""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    def validate_config(self) -> bool:
        """Validate configuration values"""
        problems = self.problems()
        for problem in problems:
            print(f"❌ Invalid configuration: {problem}", file=sys.stderr)
        return not problems

    def problems(self) -> list:
        problems = []
        for name in ('budget', 'closure_cap', 'lattice_max_rank', 'lattice_pair_budget'):
            if getattr(self, name) <= 0:
                problems.append(f"{name} must be positive")
        if self.lattice_height_bound < 1:
            problems.append("lattice_height_bound must be at least 1")
        if self.lattice_bound_ceiling < 0:
            problems.append("lattice_bound_ceiling must be non-negative")
        if self.digits < 0:
            problems.append("digits must be non-negative")
        if self.destabilizer not in DESTABILIZER_STRATEGIES:
            problems.append(f"destabilizer must be one of {', '.join(DESTABILIZER_STRATEGIES)}")
        return problems
