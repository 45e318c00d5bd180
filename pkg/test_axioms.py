"""
Arithmetic-structure axioms on random multi-filtered F_p spaces
"""

import random

from hypothesis import given, strategies as st

from src.cli.documents import describe_space
from src.linalg.fields import PrimeField
from src.multifilt.axioms import (
    axiom_suite,
    check_cartesian_square,
    check_gluing,
    check_identity,
    check_isomorphism,
    check_pullback_composition,
    check_pushforward_composition,
    check_zero_object,
)
from src.multifilt.generators import random_filtration
from src.utils.verification import CheckReport

seeds = st.integers(min_value=0, max_value=10**6)
primes = st.sampled_from((2, 3, 5))


def filtration_for(seed, p, dim):
    rng = random.Random(seed)
    return random_filtration(rng, PrimeField(p), dim), rng


def test_zero_object():
    assert check_zero_object(PrimeField(3), random.Random(0))


@given(seeds, primes, st.integers(min_value=0, max_value=4))
def test_identity(seed, p, dim):
    filtration, _ = filtration_for(seed, p, dim)
    assert check_identity(filtration)


@given(seeds, primes, st.integers(min_value=1, max_value=4))
def test_composition_laws(seed, p, dim):
    filtration, rng = filtration_for(seed, p, dim)
    assert check_pullback_composition(filtration, rng)
    assert check_pushforward_composition(filtration, rng)


@given(seeds, primes, st.integers(min_value=1, max_value=3))
def test_isomorphism(seed, p, dim):
    filtration, rng = filtration_for(seed, p, dim)
    assert check_isomorphism(filtration, rng)


@given(seeds, st.integers(min_value=1, max_value=4))
def test_cartesian_square(seed, dim):
    filtration, rng = filtration_for(seed, 2, dim)
    assert check_cartesian_square(filtration, rng)


@given(seeds, primes, st.integers(min_value=1, max_value=3))
def test_gluing(seed, p, dim):
    filtration, rng = filtration_for(seed, p, dim)
    assert check_gluing(filtration, rng)


class TestSuite:
    def test_passes(self):
        report = axiom_suite(p=2, dim=3, n=2, trials=10, seed=7)
        assert report.passed, [str(v) for v in report.violations]
        assert report.trials == 10
        assert report.checks == 10 * (1 + 2 * 6)

    def test_accumulates_into_a_given_report(self):
        report = CheckReport("all")
        axiom_suite(p=3, dim=2, n=1, trials=3, report=report, describe=describe_space)
        axiom_suite(p=2, dim=2, n=1, trials=2, report=report)
        assert report.trials == 5
        assert report.to_dict()["status"] == "pass"
