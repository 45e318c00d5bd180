"""
The four `hn` subcommands
Each takes parsed arguments and the engine configuration and returns an
exit code; results go to stdout or -o, progress to the logger.
"""

import json
import sys
import time
from argparse import Namespace
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from pydantic import ValidationError

from ..config.engine_config import EngineConfig
from ..core.errors import (
    CertificationError,
    ClosureCapExceeded,
    EnumerationBudgetExceeded,
    HNError,
    HNSequenceError,
    InputValidationError,
    ZeroObjectError,
)
from ..core.hn_engine import (
    HNContext,
    HNDecomposition,
    chain_from_filtration,
    hn_sequence,
    polygon_transport_check,
    same_chain,
)
from ..lattice.context import LatticeContext, generic_fibre_check
from ..lattice.lattice import Sublattice
from ..multifilt.context import MultiFiltContext, single_filtration_context
from ..multifilt.destabilizer import destabilizer_bruteforce, destabilizer_closure
from ..utils.logger import Logger
from ..utils.rendering import PolygonRenderer
from ..utils.verification import CheckReport, Violation
from .documents import build_context, describe_context, failed_document, load_document, result_document
from .generators import parse_random_spec, random_instances
from .suites import run_suites

logger = Logger.get_logger(__name__)

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_VALIDATION = 2
EXIT_MISMATCH = 3
EXIT_BUDGET = 4


def write_output(text: str, output: Optional[Path]) -> None:
    if output is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        PolygonRenderer().save(text, Path(output))


def load_context(path: Path, config: EngineConfig) -> Tuple[str, HNContext]:
    """(kind, object) for an input file; raises ValidationError or InputValidationError"""
    document = load_document(path)
    return document.kind, build_context(document, config)


def _run_engine(args: Namespace, config: EngineConfig) -> Tuple[int, Optional[str], Optional[HNDecomposition]]:
    """(exit code, kind, decomposition); failures are logged and written as partial documents"""
    try:
        kind, ctx = load_context(args.input, config)
    except ValidationError as e:
        logger.error(f"Invalid input document: {e}")
        return EXIT_VALIDATION, None, None
    except InputValidationError as e:
        logger.error(f"Invalid input: {e}")
        return EXIT_VALIDATION, None, None
    except OSError as e:
        logger.error(f"Cannot read input: {e}")
        return EXIT_VALIDATION, None, None

    logger.info(f"Computing HN sequence of a {kind} object of rank {ctx.rank()}")
    try:
        return EXIT_OK, kind, hn_sequence(ctx, verify_subquotients=config.verify_subquotients)
    except HNSequenceError as e:
        logger.error(f"HN sequence failed: {e}")
        write_output(failed_document(kind, e.partial_chain, str(e), config.digits).to_json(), getattr(args, "output", None))
        return EXIT_MISMATCH, kind, None
    except CertificationError as e:
        logger.error(f"Certification failed: {e}")
        write_output(failed_document(kind, [], str(e), config.digits).to_json(), getattr(args, "output", None))
        return EXIT_MISMATCH, kind, None


def cmd_compute(args: Namespace, config: EngineConfig) -> int:
    """HN chain, slopes, polygon, measure and certification as a JSON document"""
    started = time.perf_counter()
    code, kind, hn = _run_engine(args, config)
    if hn is None:
        return code
    timing = round(time.perf_counter() - started, 6) if args.timing else None
    write_output(result_document(kind, hn, config.digits, timing=timing).to_json(), args.output)
    logger.info(f"HN sequence of length {hn.length}, certification {hn.certification.value}")
    return EXIT_OK


def cmd_polygon(args: Namespace, config: EngineConfig) -> int:
    """The HN polygon as CSV (t,P) or fixed-layout SVG"""
    code, _, hn = _run_engine(args, config)
    if hn is None:
        return code
    renderer = PolygonRenderer(config.digits)
    polygon = hn.polygon()
    text = renderer.to_csv(polygon) if args.format == "csv" else renderer.to_svg(polygon)
    write_output(text, args.output)
    return EXIT_OK


def cmd_check(args: Namespace, config: EngineConfig) -> int:
    """Run a seeded suite; any counterexample gives exit code 1"""
    reports = run_suites(args.suite, args.trials, args.seed, config)
    passed = all(report.passed for report in reports)
    document = {
        "suite": args.suite,
        "seed": args.seed,
        "trials": args.trials,
        "status": "pass" if passed else "fail",
        "reports": [report.to_dict() for report in reports],
    }
    write_output(json.dumps(document, indent=2) + "\n", args.output)
    for report in reports:
        logger.info(str(report))
    return EXIT_OK if passed else EXIT_COUNTEREXAMPLE


# -- oracle ---------------------------------------------------------------


def closure_oracle(ctx: MultiFiltContext, report: CheckReport) -> None:
    """Closure search and brute force must return the same destabilizer"""
    space = ctx.space
    if space.dim == 0:
        return
    config = ctx.config
    closure = destabilizer_closure(space, config.closure_cap, config.budget, verify=False).subobject
    brute = destabilizer_bruteforce(space, config.budget).subobject
    report.expect(closure == brute, "closure-vs-bruteforce", f"closure {closure!r} != brute force {brute!r}")


def idempotence_oracle(ctx: HNContext, report: CheckReport) -> None:
    """The HN sequence is read back from the HN filtration, which is its own HN filtration"""
    hn = hn_sequence(ctx)
    values, indices = chain_from_filtration(hn.filtration())
    report.expect(
        same_chain(ctx.host, values, hn.chain) and tuple(indices) == hn.slopes,
        "engine-vs-filtration",
        "HN sequence differs from the chain read back from the HN filtration",
    )
    if isinstance(ctx, LatticeContext):
        generic_fibre_check(ctx, report)
    else:
        polygon_transport_check(
            ctx, model_factory=lambda filtration: single_filtration_context(filtration, ctx.config), report=report
        )


def diag2_oracle(ctx: LatticeContext, report: CheckReport) -> None:
    """diag(q, 1/q) is destabilized by Z e_1 when q < 1 and by Z e_2 when q > 1"""
    gram = ctx.lattice.gram
    q = gram[0][0]
    if ctx.lattice.rank != 2 or gram[0][1] != 0 or gram[1][1] != 1 / q or q == 1:
        return
    expected = Sublattice(2, ((1, 0),) if q < 1 else ((0, 1),))
    found = ctx.destabilizer().subobject
    report.expect(found == expected, "diag2-analytic", f"destabilizer {found!r}, expected {expected!r}")


def _oracle_instance(ctx: HNContext, report: CheckReport) -> None:
    if isinstance(ctx, MultiFiltContext):
        closure_oracle(ctx, report)
    else:
        diag2_oracle(ctx, report)
    idempotence_oracle(ctx, report)


def cmd_oracle(args: Namespace, config: EngineConfig) -> int:
    """Cross-check destabilizer strategies and HN idempotence; budget overruns are reported apart"""
    instances: List[Tuple[Optional[int], HNContext]] = []
    try:
        if args.random:
            spec = parse_random_spec(args.random)
            instances = list(random_instances(spec, config))
        else:
            _, ctx = load_context(args.input, config)
            instances = [(None, ctx)]
    except ValidationError as e:
        logger.error(f"Invalid input document: {e}")
        return EXIT_VALIDATION
    except (InputValidationError, OSError) as e:
        logger.error(f"Invalid input: {e}")
        return EXIT_VALIDATION

    report = CheckReport("oracle")
    budget_exceeded: List[Dict[str, Any]] = []
    for seed, ctx in instances:
        report.trials += 1
        trial = CheckReport("oracle")
        try:
            _oracle_instance(ctx, trial)
        except (EnumerationBudgetExceeded, ClosureCapExceeded) as e:
            logger.warning(f"Budget exceeded (seed {seed}): {e}")
            budget_exceeded.append({"seed": seed, "message": str(e)})
            continue
        except ZeroObjectError:
            continue
        except HNError as e:
            trial.add_violation(Violation("engine-error", f"{type(e).__name__}: {e}"))
        document = describe_context(ctx)
        for violation in trial.violations:
            violation.seed, violation.document = seed, document
        report.checks += trial.checks
        report.violations.extend(trial.violations)

    document = report.to_dict()
    document["budget_exceeded"] = budget_exceeded
    write_output(json.dumps(document, indent=2) + "\n", args.output)
    logger.info(str(report))
    if not report.passed:
        return EXIT_MISMATCH
    if budget_exceeded:
        return EXIT_BUDGET
    return EXIT_OK
