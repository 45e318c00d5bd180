"""
HN polygons, measures and the correspondence between them
"""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from src.core.errors import PolygonError
from src.core.exact import LogRationalDegree, RationalDegree
from src.core.polygon import HNMeasure, HNPolygon, measure_to_polygon, polygon_to_measure

half = Fraction(1, 2)


@st.composite
def probability_measures(draw):
    locations = draw(
        st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=6), min_size=1, max_size=5, unique=True)
    )
    weights = draw(st.lists(st.integers(min_value=1, max_value=5), min_size=len(locations), max_size=len(locations)))
    total = sum(weights)
    return HNMeasure(tuple((q, Fraction(w, total)) for q, w in zip(locations, weights)))


class TestMeasure:
    def test_atoms_sorted_and_merged(self):
        measure = HNMeasure(((0, Fraction(1, 4)), (1, Fraction(1, 4)), (0, Fraction(1, 2))))
        assert measure.atoms == ((RationalDegree(1), Fraction(1, 4)), (RationalDegree(0), Fraction(3, 4)))
        assert measure.total_mass() == 1

    def test_zero_masses_dropped(self):
        assert HNMeasure(((3, 0),)).is_zero()

    def test_negative_mass(self):
        with pytest.raises(PolygonError):
            HNMeasure(((1, -1),))

    def test_mean(self):
        measure = HNMeasure(((1, half), (0, half)))
        assert measure.mean() == RationalDegree(half)

    def test_log_rational_locations(self):
        measure = HNMeasure(((LogRationalDegree(4), half), (LogRationalDegree(Fraction(1, 4)), half)))
        assert measure.locations() == [LogRationalDegree(Fraction(1, 4)), LogRationalDegree(4)]
        assert measure.mean() == LogRationalDegree(1)


class TestPolygon:
    def test_two_step_example(self):
        polygon = measure_to_polygon(HNMeasure(((3, half), (0, half))))
        assert polygon.vertices == (
            (Fraction(0), RationalDegree(0)),
            (half, RationalDegree(Fraction(3, 2))),
            (Fraction(1), RationalDegree(Fraction(3, 2))),
        )
        assert polygon.slopes() == [RationalDegree(3), RationalDegree(0)]

    def test_semistable_is_a_segment(self):
        polygon = measure_to_polygon(HNMeasure.dirac(Fraction(1, 3)))
        assert polygon.vertices == ((0, RationalDegree(0)), (1, RationalDegree(Fraction(1, 3))))

    def test_collinear_vertices_removed(self):
        polygon = HNPolygon(((0, 0), (1, 1), (2, 2)))
        assert polygon.vertices == ((0, RationalDegree(0)), (2, RationalDegree(2)))

    def test_rejects_convex(self):
        with pytest.raises(PolygonError):
            HNPolygon(((0, 0), (1, 0), (2, 1)))

    def test_rejects_bad_start(self):
        with pytest.raises(PolygonError):
            HNPolygon(((0, 1), (1, 2)))

    def test_value_at(self):
        polygon = measure_to_polygon(HNMeasure(((1, half), (0, half))))
        assert polygon.value_at(Fraction(1, 4)) == RationalDegree(Fraction(1, 4))
        assert polygon.value_at(Fraction(3, 4)) == RationalDegree(half)
        with pytest.raises(PolygonError):
            polygon.value_at(2)

    def test_domination(self):
        lower = measure_to_polygon(HNMeasure(((1, half), (0, half))))
        upper = measure_to_polygon(HNMeasure(((2, half), (0, half))))
        assert lower.dominated_by(upper)
        assert not upper.dominated_by(lower)

    def test_mass_above_one(self):
        with pytest.raises(PolygonError):
            measure_to_polygon(HNMeasure(((1, 1), (0, 1))))


@given(probability_measures())
def test_polygon_measure_correspondence(measure):
    polygon = measure_to_polygon(measure)
    assert polygon.is_concave()
    assert polygon.width == 1
    assert polygon.endpoint() == measure.mean()
    assert polygon_to_measure(polygon) == measure
