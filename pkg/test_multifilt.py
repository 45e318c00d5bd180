"""
Multi-filtered spaces over F_p: degrees, structures and destabilizers
"""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from src.config.engine_config import EngineConfig
from src.core.errors import (
    ClosureCapExceeded,
    DimensionMismatchError,
    EnumerationBudgetExceeded,
    InputValidationError,
)
from src.core.exact import RationalDegree
from src.core.hn_engine import Certification
from src.linalg.fields import PrimeField
from src.linalg.subspace import LinearMap, Subspace, VectorSpace, count_subspaces, enumerate_subspaces
from src.multifilt.destabilizer import (
    closure_lattice,
    destabilizer,
    destabilizer_bruteforce,
    destabilizer_closure,
)
from src.multifilt.generators import random_space
from src.multifilt.space import MultiFiltSpace

F2 = PrimeField(2)
E1 = Subspace.span(F2, 2, [[1, 0]])
E2 = Subspace.span(F2, 2, [[0, 1]])
DIAGONAL = Subspace.span(F2, 2, [[1, 1]])
FULL = Subspace.full(F2, 2)

seeds = st.integers(min_value=0, max_value=10**6)


@pytest.fixture
def jumps_one_zero():
    return MultiFiltSpace.from_flags(2, 2, [([1], [[[1, 0]]])])


@pytest.fixture
def transverse_lines():
    return MultiFiltSpace.from_flags(2, 2, [([1], [[[1, 0]]]), ([1], [[[0, 1]]])], [1, 1])


class TestSubspaceCounts:
    def test_plane_over_f2(self):
        assert count_subspaces(2, 2) == 5
        assert len(list(enumerate_subspaces(F2, 2))) == 5

    def test_gaussian_binomials(self):
        assert count_subspaces(3, 3, 1) == 13
        assert len(set(enumerate_subspaces(PrimeField(3), 3, 1))) == 13


class TestDegree:
    def test_single_flag(self, jumps_one_zero):
        assert jumps_one_zero.degree() == RationalDegree(1)
        assert jumps_one_zero.degree(FULL) == RationalDegree(1)
        assert jumps_one_zero.degree(E1) == RationalDegree(1)
        assert jumps_one_zero.degree(E2) == RationalDegree(0)

    def test_weighted_sum(self, transverse_lines):
        assert transverse_lines.degree() == RationalDegree(2)
        assert transverse_lines.degree(DIAGONAL) == RationalDegree(0)
        assert transverse_lines.degree(E1) == RationalDegree(1)

    def test_alpha_scales(self, transverse_lines):
        scaled = transverse_lines.scale_alpha(3)
        assert scaled.degree(E1) == RationalDegree(3)
        with pytest.raises(InputValidationError):
            transverse_lines.scale_alpha(0)

    def test_foreign_subspace(self, jumps_one_zero):
        with pytest.raises(DimensionMismatchError):
            jumps_one_zero.degree(Subspace.full(F2, 3))


class TestStructures:
    def test_induced_and_quotient_are_additive(self, jumps_one_zero):
        induced, _ = jumps_one_zero.induced_structure(E1)
        quotient, _ = jumps_one_zero.quotient_structure(E1)
        assert induced.dim == 1 and quotient.dim == 1
        assert induced.degree() + quotient.degree() == jumps_one_zero.degree()

    @given(seeds)
    def test_additivity(self, seed):
        rng = random.Random(seed)
        space = random_space(rng, rng.choice((2, 3)), rng.randint(1, 3), rng.randint(1, 3))
        sub = Subspace.span(space.field, space.dim, [[rng.randrange(space.p) for _ in range(space.dim)]])
        induced, _ = space.induced_structure(sub)
        quotient, _ = space.quotient_structure(sub)
        assert induced.degree() + quotient.degree() == space.degree()

    def test_compatibility_routes_agree(self, jumps_one_zero):
        identity = LinearMap.identity(VectorSpace(F2, 2))
        coarser = MultiFiltSpace.from_flags(2, 2, [([2], [[[1, 0]]])])
        assert jumps_one_zero.compatibility_routes(identity, coarser) == (True, True)
        assert coarser.compatibility_routes(identity, jumps_one_zero) == (False, False)
        assert jumps_one_zero.is_compatible_map(identity, coarser)


class TestFromFlags:
    def test_short_flag_completed_at_zero(self, jumps_one_zero):
        filtration = jumps_one_zero.filtrations[0]
        assert filtration.breakpoints == (RationalDegree(1), RationalDegree(0))
        assert filtration.values[-1] == FULL

    def test_weights_given_as_text(self):
        space = MultiFiltSpace.from_flags(2, 2, [(["1/2"], [[[1, 0]]])], ["3/2"])
        assert space.alpha == (Fraction(3, 2),)
        assert space.degree() == RationalDegree(Fraction(3, 4))

    def test_non_increasing_flag(self):
        with pytest.raises(InputValidationError):
            MultiFiltSpace.from_flags(2, 2, [([2, 1], [[[1, 0]], [[1, 0]]])])

    def test_weight_count(self):
        with pytest.raises(InputValidationError):
            MultiFiltSpace.from_flags(2, 2, [([2, 1], [[[1, 0]]])])

    def test_negative_weight_needs_full_flag(self):
        with pytest.raises(InputValidationError):
            MultiFiltSpace.from_flags(2, 2, [([-1], [[[1, 0]]])])

    def test_negative_alpha(self):
        with pytest.raises(InputValidationError):
            MultiFiltSpace.from_flags(2, 2, [([1], [[[1, 0]]])], [-1])


class TestDestabilizers:
    def test_two_weights_on_e1(self):
        space = MultiFiltSpace.from_flags(2, 2, [([2], [[[1, 0]]]), ([1], [[[1, 0]]])])
        for result in (destabilizer_bruteforce(space), destabilizer_closure(space)):
            assert result.subobject == E1
            assert result.certification is Certification.PROVED
        assert space.degree(E1) / E1.rank == RationalDegree(3)

    def test_semistable_returns_everything(self, transverse_lines):
        assert destabilizer(transverse_lines).subobject == FULL

    def test_closure_lattice_contains_flag_steps(self, transverse_lines):
        elements = closure_lattice(transverse_lines)
        assert set(elements) == {Subspace.zero(F2, 2), E1, E2, FULL}

    def test_budget(self):
        space = random_space(random.Random(1), 3, 3, 3)
        with pytest.raises(EnumerationBudgetExceeded) as info:
            destabilizer_bruteforce(space, budget=10)
        assert info.value.required == 28

    def test_closure_cap(self):
        space = random_space(random.Random(2), 2, 3, 3)
        with pytest.raises(ClosureCapExceeded):
            destabilizer_closure(space, cap=1)

    def test_heuristic_beyond_budget(self):
        flags = [([3], [[[1, 0, 0]]]), ([1], [[[0, 1, 0]]]), ([1], [[[0, 0, 1]]])]
        space = MultiFiltSpace.from_flags(2, 3, flags)
        result = destabilizer(space, EngineConfig(budget=1))
        assert result.subobject == Subspace.span(F2, 3, [[1, 0, 0]])
        assert result.certification is Certification.HEURISTIC

    def test_bruteforce_strategy(self, jumps_one_zero):
        result = destabilizer(jumps_one_zero, EngineConfig(destabilizer="bruteforce"))
        assert result.subobject == E1
        assert result.examined == 4

    @settings(max_examples=200)
    @given(seeds, st.sampled_from((2, 3)), st.integers(min_value=1, max_value=3))
    def test_closure_matches_bruteforce_for_two_flags(self, seed, p, dim):
        space = random_space(random.Random(seed), p, dim, 2)
        closure = destabilizer_closure(space, verify=False)
        assert closure.certification is Certification.PROVED
        assert closure.subobject == destabilizer_bruteforce(space).subobject
