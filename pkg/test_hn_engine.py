"""
HN sequences, filtrations, polygons and the slope / functoriality checks
"""

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from src.core.errors import ZeroObjectError
from src.core.exact import NEG_INFINITY, POS_INFINITY, RationalDegree
from src.core.hn_engine import (
    Certification,
    chain_from_filtration,
    compare_iso_degrees,
    induced_hn_morphism,
    hn_filtration,
    hn_measure,
    hn_polygon,
    hn_sequence,
    is_semistable,
    mu_max,
    mu_min,
    polygon_transport_check,
    slope,
    verify_functoriality,
    verify_hn_invariants,
    verify_hom_slope_gap,
    verify_slope_bounds,
    verify_sub_quotient_bounds,
)
from src.linalg.fields import PrimeField
from src.linalg.subspace import LinearMap, Subspace, VectorSpace
from src.multifilt.context import MultiFiltContext, single_filtration_context
from src.multifilt.generators import compatible_isomorphism, compatible_map, random_space, random_subspace
from src.multifilt.space import MultiFiltSpace

F2 = PrimeField(2)
E1 = Subspace.span(F2, 2, [[1, 0]])
E2 = Subspace.span(F2, 2, [[0, 1]])
FULL = Subspace.full(F2, 2)
half = Fraction(1, 2)

seeds = st.integers(min_value=0, max_value=10**6)


def context(flags, alpha=None, dim=2):
    return MultiFiltContext(MultiFiltSpace.from_flags(2, dim, flags, alpha))


@pytest.fixture
def two_weights_on_e1():
    """A: weight 2 on span(e1); B: weight 1 on span(e1)"""
    return context([([2], [[[1, 0]]]), ([1], [[[1, 0]]])])


@pytest.fixture
def jumps_one_zero():
    return context([([1], [[[1, 0]]])])


class TestSlopes:
    def test_single_flag(self, jumps_one_zero):
        assert jumps_one_zero.degree() == RationalDegree(1)
        assert slope(jumps_one_zero) == RationalDegree(half)
        assert not is_semistable(jumps_one_zero)

    def test_transverse_lines_are_semistable(self):
        ctx = context([([1], [[[1, 0]]]), ([1], [[[0, 1]]])])
        assert ctx.degree(Subspace.span(F2, 2, [[1, 1]])) == RationalDegree(0)
        assert is_semistable(ctx)
        assert hn_sequence(ctx).length == 1

    def test_zero_object(self):
        ctx = MultiFiltContext(MultiFiltSpace(F2, 0))
        with pytest.raises(ZeroObjectError):
            slope(ctx)
        with pytest.raises(ZeroObjectError):
            is_semistable(ctx)
        assert mu_max(ctx) == NEG_INFINITY
        assert mu_min(ctx) == POS_INFINITY
        hn = hn_sequence(ctx)
        assert hn.length == 0
        assert hn.measure().is_zero()
        assert hn_polygon(ctx).width == 0


class TestHNSequence:
    def test_two_weight_example(self, two_weights_on_e1):
        hn = hn_sequence(two_weights_on_e1)
        assert hn.chain == (Subspace.zero(F2, 2), E1, FULL)
        assert hn.slopes == (RationalDegree(3), RationalDegree(0))
        assert hn.ranks == (0, 1, 2)
        assert hn.certification is Certification.PROVED
        assert hn.polygon().vertices == (
            (0, RationalDegree(0)),
            (half, RationalDegree(Fraction(3, 2))),
            (1, RationalDegree(Fraction(3, 2))),
        )

    def test_hn_filtration_jumps_at_slopes(self, two_weights_on_e1):
        filtration = hn_filtration(two_weights_on_e1)
        assert filtration.minimal_jumping_set() == (RationalDegree(3), RationalDegree(0))
        assert filtration.eval(3) == E1
        assert filtration.eval(0) == FULL
        values, indices = chain_from_filtration(filtration)
        assert values == hn_sequence(two_weights_on_e1).chain
        assert indices == (RationalDegree(3), RationalDegree(0))

    def test_single_flag_is_its_own_hn_filtration(self, jumps_one_zero):
        hn = hn_sequence(jumps_one_zero)
        assert hn.chain[1:] == (E1, FULL)
        assert hn.slopes == (RationalDegree(1), RationalDegree(0))
        assert hn.mu_max == RationalDegree(1)
        assert hn.mu_min == RationalDegree(0)

    def test_measure(self, jumps_one_zero):
        measure = hn_sequence(jumps_one_zero).measure()
        assert measure.atoms == ((RationalDegree(1), half), (RationalDegree(0), half))


class TestChecks:
    def test_examples_pass(self, two_weights_on_e1, jumps_one_zero):
        for ctx in (two_weights_on_e1, jumps_one_zero):
            assert verify_slope_bounds(ctx).passed
            assert verify_hn_invariants(ctx).passed
            assert verify_sub_quotient_bounds(ctx, E2).passed

    def test_hom_slope_gap_rejects_incompatible(self, jumps_one_zero):
        identity = LinearMap.identity(VectorSpace(F2, 2))
        other = context([([2], [[[0, 1]]])])
        report = verify_hom_slope_gap(identity, jumps_one_zero, other)
        assert not report.passed
        assert report.violations[0].check == "compatible"

    @given(seeds)
    def test_random_spaces(self, seed):
        rng = random.Random(seed)
        space = random_space(rng, rng.choice((2, 3)), rng.randint(0, 3), rng.randint(1, 3))
        ctx = MultiFiltContext(space)
        assert verify_slope_bounds(ctx).passed
        assert verify_hn_invariants(ctx).passed
        sub = random_subspace(rng, space.field, space.dim)
        assert verify_sub_quotient_bounds(ctx, sub).passed

    @given(seeds)
    def test_functoriality(self, seed):
        rng = random.Random(seed)
        source, f, target = compatible_map(rng, 2, rng.randint(0, 3), rng.randint(0, 3), rng.randint(1, 2))
        source_ctx, target_ctx = MultiFiltContext(source), MultiFiltContext(target)
        assert verify_hom_slope_gap(f, source_ctx, target_ctx).passed
        assert verify_functoriality(f, source_ctx, target_ctx).passed

    @given(seeds)
    def test_iso_degrees(self, seed):
        rng = random.Random(seed)
        source, f, target = compatible_isomorphism(rng, 3, rng.randint(1, 3), rng.randint(1, 2))
        assert compare_iso_degrees(f, MultiFiltContext(source), MultiFiltContext(target)).passed

    @given(seeds)
    def test_hn_filtration_is_a_fixed_point(self, seed):
        rng = random.Random(seed)
        ctx = MultiFiltContext(random_space(rng, 2, rng.randint(1, 3), 2))
        report = polygon_transport_check(ctx, model_factory=single_filtration_context)
        assert report.passed, [str(v) for v in report.violations]


def test_induced_hn_morphism(jumps_one_zero):
    identity = LinearMap.identity(VectorSpace(F2, 2))
    coarser = context([([2], [[[1, 0]]])])
    assert induced_hn_morphism(identity, jumps_one_zero, coarser).compatible
    assert not induced_hn_morphism(identity, coarser, jumps_one_zero).compatible
    assert hn_measure(coarser).atoms == ((RationalDegree(2), half), (RationalDegree(0), half))
