"""
Euclidean lattices: Arakelov degrees, quotients and enumerated destabilizers
"""

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from src.config.engine_config import EngineConfig
from src.core.errors import DimensionMismatchError, EnumerationBudgetExceeded, LatticeError, NotSaturatedError
from src.core.exact import LogRationalDegree, RationalDegree
from src.core.hn_engine import Certification, hn_sequence, is_semistable, verify_sub_quotient_bounds
from src.lattice.context import LatticeContext, generic_fibre_check
from src.lattice.enumeration import best_sublattice, box_covers, certified, certifying_bound, destabilizer_enum
from src.lattice.generators import (
    change_of_basis,
    compatible_lattice_map,
    diag2,
    random_lattice,
    random_saturated_sublattice,
    random_unimodular,
)
from src.lattice.lattice import (
    EuclideanLattice,
    FreeModule,
    IntegerMap,
    LatticeCategory,
    Sublattice,
    arakelov_degree,
    exact_slope_compare,
    from_generic_fibre,
    generic_fibre,
    is_compatible,
    quotient_lattice,
    saturate,
)

quarter = Fraction(1, 4)
seeds = st.integers(min_value=0, max_value=10**6)
positive_rationals = st.fractions(min_value=Fraction(1, 50), max_value=50, max_denominator=12)

# two orthogonal vectors of norm 8/3 whose plane has the same slope as either
ORTHOGONAL_PAIR = (
    (Fraction(14, 3), Fraction(34, 3), Fraction(10, 3)),
    (Fraction(34, 3), Fraction(118, 3), Fraction(46, 3)),
    (Fraction(10, 3), Fraction(46, 3), Fraction(22, 3)),
)


@pytest.fixture
def skewed():
    """diag(1/4, 4): determinant 1 with a short first vector"""
    return EuclideanLattice.diagonal((quarter, 4))


def line(rank, index):
    return Sublattice.span(rank, [[int(i == index) for i in range(rank)]])


class TestDegrees:
    def test_skewed_plane(self, skewed):
        assert skewed.degree() == RationalDegree(0)
        assert arakelov_degree(skewed, line(2, 0)) == LogRationalDegree(quarter)
        assert arakelov_degree(skewed, line(2, 1)) == LogRationalDegree(4)
        assert float(arakelov_degree(skewed, line(2, 0))) > 0

    def test_quotient_metric(self, skewed):
        quotient, projection = quotient_lattice(skewed, line(2, 0))
        assert quotient.gram == ((Fraction(4),),)
        assert projection.apply((0, 1)) in ((1,), (-1,))
        assert arakelov_degree(skewed, line(2, 0)) + quotient.degree() == skewed.degree()

    def test_quotient_needs_saturation(self):
        with pytest.raises(NotSaturatedError):
            quotient_lattice(EuclideanLattice.standard(2), Sublattice(2, ((2, 0),)))

    def test_saturation_raises_degree(self):
        doubled = Sublattice(1, ((2,),))
        lattice = EuclideanLattice.standard(1)
        assert not doubled.is_saturated()
        assert saturate(doubled) == Sublattice.full(1)
        assert arakelov_degree(lattice, saturate(doubled)) == arakelov_degree(lattice, doubled) + LogRationalDegree(quarter)

    def test_gram_must_be_positive_definite(self):
        with pytest.raises(LatticeError):
            EuclideanLattice.diagonal((1, 0))
        with pytest.raises(LatticeError):
            EuclideanLattice(((1, 2), (0, 1)))

    def test_dual(self, skewed):
        assert skewed.dual() == EuclideanLattice.diagonal((4, quarter))

    def test_exact_slope_compare(self):
        assert exact_slope_compare(quarter, 1, 1, 2) == 1
        assert exact_slope_compare(4, 1, 2, 1) == -1
        assert exact_slope_compare(4, 2, 2, 1) == 0

    @given(st.lists(st.tuples(positive_rationals, st.integers(min_value=1, max_value=4)), min_size=3, max_size=3))
    def test_exact_slope_compare_is_transitive(self, slopes):
        def compare(x, y):
            return exact_slope_compare(x[0], x[1], y[0], y[1])

        a, b, c = slopes
        assert compare(a, b) == -compare(b, a)
        if compare(a, b) <= 0 and compare(b, c) <= 0:
            assert compare(a, c) <= 0
        if compare(a, b) == 0 and compare(b, c) == 0:
            assert compare(a, c) == 0

    @given(seeds, st.integers(min_value=2, max_value=3))
    def test_additivity(self, seed, rank):
        rng = random.Random(seed)
        lattice = random_lattice(rng, rank)
        sub = random_saturated_sublattice(rng, rank, rng.randint(1, rank - 1))
        quotient, _ = quotient_lattice(lattice, sub)
        assert arakelov_degree(lattice, sub) + quotient.degree() == lattice.degree()

    @given(seeds, st.integers(min_value=1, max_value=3))
    def test_degree_ignores_the_basis(self, seed, rank):
        rng = random.Random(seed)
        lattice = random_lattice(rng, rank)
        assert change_of_basis(lattice, random_unimodular(rng, rank)).degree() == lattice.degree()


class TestCompatibility:
    def test_norm_criterion(self):
        four, one = EuclideanLattice.diagonal((4,)), EuclideanLattice.diagonal((1,))
        assert is_compatible([[1]], four, one)
        assert not is_compatible([[1]], one, four)
        plane = EuclideanLattice.standard(2)
        assert not is_compatible([[2, 0], [0, 2]], plane, plane)

    def test_shape_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            is_compatible([[1, 0]], EuclideanLattice.standard(1), EuclideanLattice.standard(1))

    @given(seeds, st.integers(min_value=1, max_value=3), st.integers(min_value=0, max_value=3))
    def test_generated_maps_are_compatible(self, seed, source_rank, target_rank):
        source, phi, target = compatible_lattice_map(random.Random(seed), source_rank, target_rank)
        assert is_compatible(phi.matrix, source, target)
        assert LatticeContext(source).is_compatible_morphism(phi, LatticeContext(target))


    @given(seeds, st.integers(min_value=1, max_value=3))
    def test_identity_is_compatible(self, seed, rank):
        lattice = random_lattice(random.Random(seed), rank)
        identity = IntegerMap.identity(lattice.module)
        assert is_compatible(identity.matrix, lattice, lattice)

    @given(seeds, st.lists(st.integers(min_value=1, max_value=3), min_size=3, max_size=3))
    def test_composites_are_compatible(self, seed, ranks):
        rng = random.Random(seed)
        middle, psi, target = compatible_lattice_map(rng, ranks[1], ranks[2])
        source, phi, _ = compatible_lattice_map(rng, ranks[0], ranks[1], target=middle)
        assert is_compatible(phi.matrix, source, middle)
        assert is_compatible(psi.compose(phi).matrix, source, target)


class TestCategory:
    def test_sum_and_intersection_are_saturated(self):
        host = LatticeCategory()
        plane = Sublattice.span(3, [[1, 0, 0], [0, 1, 0]])
        other = Sublattice.span(3, [[0, 1, 0], [0, 0, 1]])
        assert host.intersect(plane, other) == line(3, 1)
        assert host.sum(Sublattice(3, ((2, 0, 0),)), line(3, 1)) == plane
        assert host.contains(plane, line(3, 0))
        assert not host.contains(line(3, 0), plane)

    def test_image_and_preimage(self):
        host = LatticeCategory()
        doubling = IntegerMap(FreeModule(2), FreeModule(2), ((2, 0), (0, 2)))
        assert host.image(doubling, line(2, 0)) == line(2, 0)
        assert host.preimage(doubling, line(2, 1)) == line(2, 1)

    def test_generic_fibre_roundtrip(self):
        sub = Sublattice(2, ((2, 4),))
        assert from_generic_fibre(generic_fibre(sub)) == Sublattice.span(2, [[1, 2]])


class TestDestabilizer:
    def test_heuristic_without_a_large_enough_box(self, skewed):
        assert not certified(skewed, 2)
        result = destabilizer_enum(skewed, height_bound=2, bound_ceiling=0)
        assert result.subobject == line(2, 0)
        assert result.certification is Certification.HEURISTIC

    def test_proved_with_a_larger_box(self, skewed):
        assert box_covers(skewed, 3)
        assert certifying_bound(skewed, 6) == 3
        for result in (destabilizer_enum(skewed, height_bound=3), destabilizer_enum(skewed, bound_ceiling=6)):
            assert result.subobject == line(2, 0)
            assert result.certification is Certification.PROVED

    @pytest.mark.parametrize(
        "q, expected", [(Fraction(1, 3), 0), (Fraction(2, 5), 0), (Fraction(3), 1), (Fraction(7, 2), 1)]
    )
    def test_diag2_family(self, q, expected):
        assert destabilizer_enum(diag2(q), bound_ceiling=6).subobject == line(2, expected)

    def test_tied_short_vectors_give_their_plane(self):
        lattice = EuclideanLattice(ORTHOGONAL_PAIR)
        v1, v2 = (1, -1, 2), (2, -1, 1)
        assert lattice.norm(v1) == lattice.norm(v2) == Fraction(8, 3)
        plane = Sublattice.span(3, [v1, v2])
        for ceiling in (0, 6):
            assert destabilizer_enum(lattice, bound_ceiling=ceiling).subobject == plane

    def test_ties_merge_into_their_sum(self):
        plane = EuclideanLattice.standard(2)
        assert best_sublattice(plane, [line(2, 0), line(2, 1)]) == Sublattice.full(2)

    def test_rank_guard(self):
        ctx = LatticeContext(EuclideanLattice.standard(3), EngineConfig(lattice_max_rank=2))
        with pytest.raises(EnumerationBudgetExceeded):
            ctx.destabilizer()


class TestHN:
    @pytest.mark.parametrize("rank", [1, 2, 3])
    def test_standard_lattices_are_semistable(self, rank):
        ctx = LatticeContext(EuclideanLattice.standard(rank))
        assert is_semistable(ctx)
        hn = hn_sequence(ctx)
        assert hn.length == 1
        assert hn.certification is Certification.PROVED

    def test_three_step_diagonal(self):
        ctx = LatticeContext(EuclideanLattice.diagonal((Fraction(1, 2), 1, 2)))
        hn = hn_sequence(ctx)
        assert hn.ranks == (0, 1, 2, 3)
        assert hn.chain[1] == line(3, 0)
        assert hn.chain[2] == Sublattice.span(3, [[1, 0, 0], [0, 1, 0]])
        assert hn.slopes == (LogRationalDegree(Fraction(1, 2)), LogRationalDegree(1), LogRationalDegree(2))
        assert hn.certification is Certification.PROVED

    def test_generic_fibre_keeps_the_polygon(self):
        ctx = LatticeContext(EuclideanLattice.diagonal((Fraction(1, 2), 1, 2)))
        report = generic_fibre_check(ctx)
        assert report.passed, [str(v) for v in report.violations]

    @pytest.mark.slow
    def test_rank_four_is_semistable_but_uncertified(self):
        hn = hn_sequence(LatticeContext(EuclideanLattice.standard(4)))
        assert hn.length == 1
        assert hn.certification is Certification.HEURISTIC

    @given(seeds, st.integers(min_value=1, max_value=2))
    def test_sub_quotient_bounds(self, seed, rank):
        rng = random.Random(seed)
        ctx = LatticeContext(random_lattice(rng, rank))
        if hn_sequence(ctx).certification is not Certification.PROVED:
            return
        report = verify_sub_quotient_bounds(ctx, random_saturated_sublattice(rng, rank))
        assert report.passed, [str(v) for v in report.violations]
