"""Tests for upper bounds on delta-additive sets."""

from fractions import Fraction

import pytest

from deltaset.bounds import (
    bm_closed_form,
    bm_sharp,
    bound_report,
    ellipsoid_inner_product_bound,
    gram_bound,
    regime,
    root_sum_at_most,
    threshold_bound,
    trivial_bound,
)
from deltaset.errors import DeltaRangeError, ParameterError

F = Fraction
TWO_THIRDS = F(2, 3)
DELTAS = [F(k, 26) for k in range(1, 51)]
DIMENSIONS = range(1, 11)


class TestClosedForm:
    """Test floor(2 (2/(2 - delta))^d)."""

    def test_threshold_in_three_dimensions(self) -> None:
        """Test d = 3, delta = 2/3 gives floor(27/4) = 6."""
        assert bm_closed_form(3, TWO_THIRDS) == 6

    def test_delta_one(self) -> None:
        """Test d = 3, delta = 1 gives 16."""
        assert bm_closed_form(3, F(1)) == 16

    def test_small_delta(self) -> None:
        """Test d = 1, delta = 1/1000 gives 2."""
        assert bm_closed_form(1, F(1, 1000)) == 2

    def test_delta_out_of_range(self) -> None:
        """Test that delta = 2 raises."""
        with pytest.raises(DeltaRangeError):
            bm_closed_form(3, F(2))

    def test_invalid_dimension(self) -> None:
        """Test that d = 0 raises."""
        with pytest.raises(ParameterError):
            bm_closed_form(0, F(1))


class TestRootSum:
    """Test exact comparison of sums of d-th roots."""

    def test_exact_roots(self) -> None:
        """Test 8^(1/3) + 27^(1/3) = 5 decides at equality."""
        assert root_sum_at_most(8, 27, 3, F(5))
        assert not root_sum_at_most(8, 27, 3, F(4999, 1000))

    def test_irrational_sum(self) -> None:
        """Test 2 sqrt(2) against rationals on either side."""
        assert root_sum_at_most(2, 2, 2, F(283, 100))
        assert not root_sum_at_most(2, 2, 2, F(282, 100))

    def test_close_separation(self) -> None:
        """Test a bound within 10^-12 of 2 cbrt(3)."""
        # 2 * 3^(1/3) = 2.884499140614816...
        assert root_sum_at_most(3, 3, 3, F(2884499140615, 10**12))
        assert not root_sum_at_most(3, 3, 3, F(2884499140614, 10**12))


class TestSharpBound:
    """Test the floor/ceiling inequality."""

    def test_threshold_in_three_dimensions(self) -> None:
        """Test d = 3, delta = 2/3, radius 2 gives 6."""
        assert bm_sharp(3, TWO_THIRDS, F(2)) == 6

    def test_one_dimension(self) -> None:
        """Test d = 1, delta = 1, radius 2 gives 4."""
        assert bm_sharp(1, F(1), F(2)) == 4

    def test_larger_radius(self) -> None:
        """Test the radius 3 - delta reading of the same inequality."""
        assert bm_sharp(3, TWO_THIRDS, F(7, 3)) == 10

    def test_zero_radius(self) -> None:
        """Test that radius 0 gives None."""
        assert bm_sharp(3, F(1), F(0)) is None

    def test_radius_below_two_vectors(self) -> None:
        """Test that a radius below 2 - delta gives None."""
        assert bm_sharp(2, F(1), F(9, 10)) is None


class TestBoundAgreement:
    """Test the closed form and sharp bound against each other."""

    @pytest.mark.parametrize("d", DIMENSIONS)
    def test_sharp_within_one(self, d: int) -> None:
        """Test sharp in {closed, closed + 1}, equal when sharp is even."""
        for delta in DELTAS:
            closed = bm_closed_form(d, delta)
            sharp = bm_sharp(d, delta)
            assert sharp is not None
            assert closed <= sharp <= closed + 1
            if sharp % 2 == 0:
                assert sharp == closed

    @pytest.mark.parametrize("d", DIMENSIONS)
    def test_monotone_in_delta(self, d: int) -> None:
        """Test that both bounds are nondecreasing in delta."""
        closed = [bm_closed_form(d, delta) for delta in DELTAS]
        sharp = [bm_sharp(d, delta) for delta in DELTAS]
        assert closed == sorted(closed)
        assert sharp == sorted(sharp)  # type: ignore[type-var]

    def test_monotone_in_dimension(self) -> None:
        """Test that both bounds are nondecreasing in d."""
        for delta in DELTAS:
            closed = [bm_closed_form(d, delta) for d in DIMENSIONS]
            sharp = [bm_sharp(d, delta) for d in DIMENSIONS]
            assert closed == sorted(closed)
            assert sharp == sorted(sharp)  # type: ignore[type-var]


class TestSmallBounds:
    """Test the triangle, ellipsoid and Gram bounds."""

    @pytest.mark.parametrize(
        "delta, expected", [(F(1, 2), 2), (TWO_THIRDS, None), (F(659, 1000), 2), (F(1), None)]
    )
    def test_trivial_bound(self, delta: Fraction, expected: object) -> None:
        """Test 2 below the threshold and None at or above it."""
        assert trivial_bound(delta) == expected

    @pytest.mark.parametrize(
        "d, delta, expected",
        [(3, TWO_THIRDS, F(-1, 3)), (3, F(1), F(1, 2)), (1, F(1), F(-1, 2))],
    )
    def test_ellipsoid(self, d: int, delta: Fraction, expected: Fraction) -> None:
        """Test (d delta^2 - 2)/2."""
        assert ellipsoid_inner_product_bound(d, delta) == expected

    @pytest.mark.parametrize("c, expected", [(F(-1, 3), 4), (F(-1, 2), 3), (F(0), None)])
    def test_gram(self, c: Fraction, expected: object) -> None:
        """Test floor(1 - 1/c) for negative c."""
        assert gram_bound(c) == expected

    def test_gram_pipeline_matches_three_dimensions(self) -> None:
        """Test that the ellipsoid-then-Gram bound gives 4 = threshold_bound(3)."""
        assert gram_bound(ellipsoid_inner_product_bound(3, TWO_THIRDS)) == 4
        assert threshold_bound(3) == 4

    @pytest.mark.parametrize("d, expected", [(1, 2), (2, 2), (3, 4), (4, 4), (7, 7)])
    def test_threshold_bound(self, d: int, expected: int) -> None:
        """Test the largest set at exactly 2/3 per dimension."""
        assert threshold_bound(d) == expected

    def test_regimes(self) -> None:
        """Test bounded, linear and exponential growth."""
        assert regime(F(1, 2)) == "bounded"
        assert regime(TWO_THIRDS) == "linear"
        assert regime(F(1)) == "exponential"


class TestBoundReport:
    """Test the combined report."""

    def test_threshold_in_three_dimensions(self) -> None:
        """Test every field for d = 3, delta = 2/3."""
        report = bound_report(3, TWO_THIRDS)
        assert report.closed_form == 6
        assert report.sharp == 6
        assert report.radius_used == 2
        assert report.agreement
        assert report.trivial is None
        assert report.ellipsoid == F(-1, 3)
        assert report.gram == 4
        assert report.threshold == 4
        assert report.regime == "linear"

    def test_below_threshold(self) -> None:
        """Test that the threshold field is empty away from 2/3."""
        report = bound_report(2, F(1, 2))
        assert report.trivial == 2
        assert report.threshold is None
        assert report.regime == "bounded"

    def test_tiny_radius(self) -> None:
        """Test that a radius admitting no pair disagrees."""
        report = bound_report(2, F(1), radius=F(1, 2))
        assert report.sharp is None
        assert not report.agreement
