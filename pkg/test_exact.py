"""
Exact degrees, log-rational comparison and decimal rendering
"""

from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from src.core.errors import ExactArithmeticError, ZeroObjectError
from src.core.exact import (
    NEG_INFINITY,
    POS_INFINITY,
    LogRationalDegree,
    RationalDegree,
    as_exact,
    compare_exact,
    compare_log_rational,
    parse_rational,
    render_decimal,
    slope_of,
)

positive_rationals = st.fractions(min_value=Fraction(1, 50), max_value=50, max_denominator=30)
roots = st.integers(min_value=1, max_value=4)


class TestParseRational:
    def test_fraction_text(self):
        assert parse_rational("1/2") == Fraction(1, 2)
        assert parse_rational("-3/6") == Fraction(-1, 2)
        assert parse_rational(" 7 ") == 7
        assert parse_rational(4) == 4

    @pytest.mark.parametrize("text", ["0.5", "1/0", "a/b", "1e3", "", True])
    def test_rejects(self, text):
        with pytest.raises(ExactArithmeticError):
            parse_rational(text)

    def test_as_exact_converts_floats_exactly(self):
        assert as_exact(0.5) == RationalDegree(Fraction(1, 2))
        with pytest.raises(ExactArithmeticError):
            as_exact(float("nan"))


class TestLogRational:
    def test_quarter_beats_four(self):
        assert LogRationalDegree(Fraction(1, 4)) > LogRationalDegree(4)
        assert compare_log_rational(Fraction(1, 4), 1, Fraction(1), 2) == 1

    def test_reduced_representation(self):
        value = LogRationalDegree(Fraction(4), 2)
        assert (value.d, value.root) == (Fraction(2), 1)
        assert LogRationalDegree(Fraction(1), 5).root == 1

    def test_addition_multiplies_arguments(self):
        assert LogRationalDegree(2) + LogRationalDegree(3) == LogRationalDegree(6)
        assert LogRationalDegree(2) - LogRationalDegree(2) == LogRationalDegree(1)

    def test_division_by_rank(self):
        assert LogRationalDegree(4) / 2 == LogRationalDegree(2)
        assert (LogRationalDegree(Fraction(5, 3)) / 3) * 3 == LogRationalDegree(Fraction(5, 3))

    def test_zero_mixes_with_rationals(self):
        assert RationalDegree(0) + LogRationalDegree(2) == LogRationalDegree(2)
        assert RationalDegree(0) > LogRationalDegree(2)
        assert LogRationalDegree(1) == RationalDegree(0)

    def test_nonzero_mixing_is_an_error(self):
        with pytest.raises(ExactArithmeticError):
            RationalDegree(1) + LogRationalDegree(2)
        with pytest.raises(ExactArithmeticError):
            compare_exact(RationalDegree(1), LogRationalDegree(2))

    def test_invalid_arguments(self):
        with pytest.raises(ExactArithmeticError):
            LogRationalDegree(0)
        with pytest.raises(ExactArithmeticError):
            LogRationalDegree(2, 0)

    @given(positive_rationals, roots, positive_rationals, roots)
    def test_order_matches_floats(self, d1, r1, d2, r2):
        a, b = LogRationalDegree(d1, r1), LogRationalDegree(d2, r2)
        gap = float(a) - float(b)
        assume(abs(gap) > 1e-9)
        assert (a > b) == (gap > 0)

    @given(positive_rationals, positive_rationals)
    def test_additive(self, d1, d2):
        assert LogRationalDegree(d1) + LogRationalDegree(d2) == LogRationalDegree(d1 * d2)


class TestInfinity:
    def test_sentinels_bound_everything(self):
        assert NEG_INFINITY < RationalDegree(-10**9) < POS_INFINITY
        assert NEG_INFINITY < LogRationalDegree(10**9) < POS_INFINITY
        assert NEG_INFINITY < POS_INFINITY

    def test_no_arithmetic(self):
        with pytest.raises(ExactArithmeticError):
            NEG_INFINITY + 1


class TestRendering:
    def test_rationals(self):
        assert render_decimal(Fraction(1, 2), 12) == "0.5"
        assert render_decimal(Fraction(1, 3), 4) == "0.3333"
        assert render_decimal(-2, 3) == "-2"
        assert render_decimal(0, 12) == "0"

    def test_log_rational(self):
        assert render_decimal(LogRationalDegree(Fraction(1, 4)), 6) == "0.693147"
        assert render_decimal(LogRationalDegree(Fraction(1, 4)), 12) == "0.69314718056"

    def test_infinities(self):
        assert render_decimal(POS_INFINITY, 3) == "inf"
        assert render_decimal(NEG_INFINITY, 3) == "-inf"


def test_slope_of_zero_rank():
    with pytest.raises(ZeroObjectError):
        slope_of(RationalDegree(1), 0)
    assert slope_of(RationalDegree(3), 2) == RationalDegree(Fraction(3, 2))
