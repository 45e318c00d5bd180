"""
Seeded check suites behind `hn check`
Every trial draws from random.Random(seed + trial), so a violation is
replayed from its seed or from the document attached to it.
"""

import random
from typing import Callable, Dict, List, Optional, Tuple

from ..config.engine_config import EngineConfig
from ..core.errors import HNError
from ..core.hn_engine import (
    Certification,
    HNContext,
    compare_iso_degrees,
    hn_sequence,
    verify_functoriality,
    verify_hn_invariants,
    verify_hom_slope_gap,
    verify_slope_bounds,
    verify_sub_quotient_bounds,
)
from ..lattice.context import LatticeContext, generic_fibre_check
from ..lattice.generators import (
    compatible_lattice_isomorphism,
    compatible_lattice_map,
    random_lattice,
    random_saturated_sublattice,
    random_unimodular,
)
from ..lattice.lattice import EuclideanLattice, IntegerMap, Sublattice, induced_gram
from ..linalg.matrix import congruence, determinant
from ..multifilt.axioms import axiom_suite
from ..multifilt.context import MultiFiltContext
from ..multifilt.generators import compatible_isomorphism, compatible_map, random_space, random_subspace
from ..utils.logger import Logger
from ..utils.verification import CheckReport, Violation
from .documents import describe_context, describe_lattice, describe_space

logger = Logger.get_logger(__name__)

SUITES = ("axioms", "slopes", "functoriality", "all")


def _absorb(report: CheckReport, trial: CheckReport, seed: int, document: Optional[Dict] = None) -> None:
    """Merge a per-trial report, stamping its violations with the seed and document"""
    report.checks += trial.checks
    report.heuristic += trial.heuristic
    for violation in trial.violations:
        report.violations.append(Violation(violation.check, violation.message, seed, document))


def _guarded(report: CheckReport, seed: int, document: Dict, check: Callable[[CheckReport], None]) -> None:
    trial = CheckReport(report.name)
    try:
        check(trial)
    except HNError as e:
        trial.add_violation(Violation("engine-error", f"{type(e).__name__}: {e}"))
    _absorb(report, trial, seed, document)


def all_proved(report: CheckReport, *contexts: HNContext) -> bool:
    """
    Whether every HN sequence is proved; a heuristic one is counted on the report

    Checks that compare slopes across objects only hold for proved sequences.
    """
    if all(hn_sequence(ctx).certification is Certification.PROVED for ctx in contexts):
        return True
    report.heuristic += 1
    logger.debug("Heuristic HN sequence; skipping the slope comparisons")
    return False


def _lattice_contexts(
    drawn: Tuple[EuclideanLattice, IntegerMap, EuclideanLattice], config: EngineConfig
) -> Tuple[LatticeContext, IntegerMap, LatticeContext]:
    source, f, target = drawn
    return LatticeContext(source, config), f, LatticeContext(target, config)


# -- degree additivity ----------------------------------------------------


def check_additivity(ctx: HNContext, sub, report: CheckReport) -> CheckReport:
    """deg(sub) + deg(X/sub) = deg(X)"""
    quotient, _ = ctx.quotient(sub)
    total = ctx.degree(sub) + quotient.degree()
    report.expect(total == ctx.degree(), "additivity", f"{total!r} != {ctx.degree()!r}")
    return report


def check_basis_invariance(lattice: EuclideanLattice, sub: Sublattice, rng: random.Random, report: CheckReport) -> CheckReport:
    """det(U^T S^T G S U) = det(S^T G S) for unimodular U"""
    gram = induced_gram(lattice, sub)
    unimodular = random_unimodular(rng, sub.rank)
    changed = determinant(congruence(gram, unimodular, sub.rank)) if sub.rank else determinant(gram)
    report.expect(changed == determinant(gram), "basis-invariance", f"{changed} != {determinant(gram)}")
    return report


def check_scaling(ctx: MultiFiltContext, rng: random.Random, report: CheckReport) -> CheckReport:
    """Scaling alpha by c > 0 keeps the HN chain and scales the slopes"""
    factor = rng.choice((2, 3))
    scaled = MultiFiltContext(ctx.space.scale_alpha(factor), ctx.config)
    before, after = hn_sequence(ctx), hn_sequence(scaled)
    report.expect(before.chain == after.chain, "scaling-chain", "HN chain changed under scaling")
    report.expect(
        tuple(s * factor for s in before.slopes) == after.slopes, "scaling-slopes", "slopes did not scale"
    )
    return report


# -- suites ---------------------------------------------------------------


def slope_suite(trials: int, seed: int, config: EngineConfig, report: Optional[CheckReport] = None) -> CheckReport:
    """Slope bounds, HN invariants, additivity and sub/quotient bounds on both hosts"""
    report = report or CheckReport("slopes")
    for trial in range(trials):
        trial_seed = seed + trial
        rng = random.Random(trial_seed)
        space = random_space(rng, rng.choice((2, 3)), rng.randint(0, 3), rng.randint(1, 3))
        ctx = MultiFiltContext(space, config)
        sub = random_subspace(rng, space.field, space.dim)
        report.trials += 1

        def multifilt_checks(trial_report: CheckReport):
            verify_slope_bounds(ctx, trial_report)
            verify_hn_invariants(ctx, trial_report)
            verify_sub_quotient_bounds(ctx, sub, trial_report)
            check_additivity(ctx, sub, trial_report)
            check_scaling(ctx, rng, trial_report)

        _guarded(report, trial_seed, describe_space(space), multifilt_checks)

        lattice = random_lattice(rng, rng.randint(1, 3))
        lattice_ctx = LatticeContext(lattice, config)
        sublattice = random_saturated_sublattice(rng, lattice.rank)

        def lattice_checks(trial_report: CheckReport):
            check_additivity(lattice_ctx, sublattice, trial_report)
            check_basis_invariance(lattice, sublattice, rng, trial_report)
            if not all_proved(trial_report, lattice_ctx):
                return
            verify_slope_bounds(lattice_ctx, trial_report)
            verify_hn_invariants(lattice_ctx, trial_report)
            verify_sub_quotient_bounds(lattice_ctx, sublattice, trial_report)
            generic_fibre_check(lattice_ctx, trial_report)

        _guarded(report, trial_seed, describe_lattice(lattice), lattice_checks)
    logger.info(str(report))
    return report


def functoriality_suite(
    trials: int, seed: int, config: EngineConfig, report: Optional[CheckReport] = None
) -> CheckReport:
    """HN filtration containment, hom slope gaps and iso degree comparison"""
    report = report or CheckReport("functoriality")
    for trial in range(trials):
        trial_seed = seed + trial
        rng = random.Random(trial_seed)
        p, n = rng.choice((2, 3)), rng.randint(1, 3)
        source, f, target = compatible_map(rng, p, rng.randint(0, 3), rng.randint(0, 3), n)
        iso_source, iso, iso_target = compatible_isomorphism(rng, p, rng.randint(1, 3), n)
        source_ctx, target_ctx = MultiFiltContext(source, config), MultiFiltContext(target, config)
        iso_source_ctx, iso_target_ctx = MultiFiltContext(iso_source, config), MultiFiltContext(iso_target, config)
        report.trials += 1

        def multifilt_checks(trial_report: CheckReport):
            verify_hom_slope_gap(f, source_ctx, target_ctx, trial_report)
            verify_functoriality(f, source_ctx, target_ctx, trial_report)
            compare_iso_degrees(iso, iso_source_ctx, iso_target_ctx, trial_report)

        _guarded(report, trial_seed, describe_space(source), multifilt_checks)

        pair = _lattice_contexts(compatible_lattice_map(rng, rng.randint(1, 3), rng.randint(1, 3)), config)
        iso_pair = _lattice_contexts(compatible_lattice_isomorphism(rng, rng.randint(1, 3)), config)

        def lattice_checks(trial_report: CheckReport):
            if all_proved(trial_report, pair[0], pair[2]):
                verify_hom_slope_gap(pair[1], pair[0], pair[2], trial_report)
                verify_functoriality(pair[1], pair[0], pair[2], trial_report)
            if all_proved(trial_report, iso_pair[0], iso_pair[2]):
                compare_iso_degrees(iso_pair[1], iso_pair[0], iso_pair[2], trial_report)

        _guarded(report, trial_seed, describe_context(pair[0]), lattice_checks)
    logger.info(str(report))
    return report


def run_suites(name: str, trials: int, seed: int, config: EngineConfig) -> List[CheckReport]:
    """Reports of the named suite, or of every suite for "all" """
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)}")
    reports = []
    if name in ("axioms", "all"):
        reports.append(axiom_suite(trials=trials, seed=seed, describe=describe_space))
    if name in ("slopes", "all"):
        reports.append(slope_suite(trials, seed, config))
    if name in ("functoriality", "all"):
        reports.append(functoriality_suite(trials, seed, config))
    return reports
