import math
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from diagonal_forge.core import (
    Cmp,
    DigitStream,
    IntervalKind,
    IntervalQ,
    NestedReal,
    QuadraticSurd,
    TailConvention,
    closed,
    compare,
    floor_point,
    format_point,
    format_rational,
    open_iv,
    parse_digit_stream,
    parse_interval,
    parse_rational,
    rational_between,
    to_digits,
)
from diagonal_forge.errors import (
    DomainError,
    ParseError,
    NestingError,
    UnsupportedComparisonError,
)

rationals = st.fractions(
    min_value=-100, max_value=100, max_denominator=10**6
)


class TestCompare:
    def test_identity(self):
        assert compare(F(1, 3), F(1, 3)) is Cmp.EQ

    def test_sqrt2_vs_three_halves(self):
        assert compare(QuadraticSurd(0, 1, 2), F(3, 2)) is Cmp.LT

    def test_cross_multiplication(self):
        assert compare(F(2, 3), F(1, 2)) is Cmp.GT

    def test_same_radicand(self):
        a = QuadraticSurd(1, F(1, 2), 2)   # 1 + sqrt(2)/2
        b = QuadraticSurd(0, 1, 2)          # sqrt(2)
        assert compare(a, b) is Cmp.GT      # 1 > sqrt(2)/2

    def test_mixed_radicands_error(self):
        with pytest.raises(UnsupportedComparisonError):
            compare(QuadraticSurd(0, 1, 2), QuadraticSurd(0, 1, 3))

    def test_mixed_radicand_one_rational_side_ok(self):
        # q == 0 collapses to a rational, so the radicand does not matter
        assert compare(QuadraticSurd(F(1, 2), 0, 2), QuadraticSurd(0, 1, 3)) is Cmp.LT

    @given(st.tuples(rationals, rationals, rationals))
    def test_total_order_on_random_triples(self, triple):
        x, y, z = triple
        cxy, cyz, cxz = compare(x, y), compare(y, z), compare(x, z)
        # antisymmetry
        assert compare(y, x).value == -cxy.value
        # transitivity
        if cxy is Cmp.LT and cyz is Cmp.LT:
            assert cxz is Cmp.LT
        if cxy is Cmp.GT and cyz is Cmp.GT:
            assert cxz is Cmp.GT
        if cxy is Cmp.EQ and cyz is Cmp.EQ:
            assert cxz is Cmp.EQ

    def test_consistent_with_exact_arithmetic(self):
        assert compare(F(10**30, 3), F(10**30 + 1, 3)) is Cmp.LT


class TestSurd:
    def test_canonicalization_squarefree(self):
        s = QuadraticSurd(0, 1, 8)  # sqrt(8) = 2*sqrt(2)
        assert s.d == 2 and s.q == 2

    def test_rational_fold(self):
        assert QuadraticSurd(F(1, 2), 3, 1).as_fraction() == F(7, 2)
        assert QuadraticSurd(F(1, 2), 3, 0).as_fraction() == F(1, 2)

    def test_sign_opposite_parts(self):
        # 3/2 - sqrt(2) > 0, 7/5 - sqrt(2) < 0
        assert QuadraticSurd(F(3, 2), -1, 2).sign() == 1
        assert QuadraticSurd(F(7, 5), -1, 2).sign() == -1
        assert QuadraticSurd(-F(3, 2), 1, 2).sign() == -1

    def test_floor(self):
        assert floor_point(QuadraticSurd(0, 1, 2)) == 1
        assert floor_point(QuadraticSurd(0, -1, 2)) == -2
        assert floor_point(QuadraticSurd(3, 2, 2)) == 5  # 3 + 2.828...
        assert floor_point(F(-7, 2)) == -4

    def test_rational_between_with_surd(self):
        x = QuadraticSurd(0, F(1, 2), 2)  # 0.707...
        y = F(71, 100)
        r = rational_between(x, y)
        assert compare(x, r) is Cmp.LT and compare(r, y) is Cmp.LT


class TestTextForms:
    def test_rational_round_trip(self):
        for text in ["1/3", "-7/5", "4", "0", "-12"]:
            assert format_rational(parse_rational(text)) == text

    def test_rational_canonicalizes(self):
        assert format_rational(parse_rational("2/4")) == "1/2"

    def test_bad_rational(self):
        for bad in ["", "a", "1/0", "1.5", "1/-2"]:
            with pytest.raises(ParseError):
                parse_rational(bad)

    def test_interval_round_trip(self):
        for text in ["[0,1]", "(1/3,1/2)", "[0,1)", "(0,1]"]:
            assert str(parse_interval(text)) == text

    def test_stream_round_trip(self):
        s = parse_digit_stream("0.0111(base 2)")
        assert s.base == 2 and s.digits == (0, 1, 1, 1)
        assert str(s) == "0.0111(base 2)"


class TestInterval:
    def test_membership_kinds(self):
        assert closed(0, 1).contains(F(0))
        assert not open_iv(0, 1).contains(F(0))
        assert open_iv(0, 1).contains(F(1, 2))
        half = IntervalQ(0, 1, IntervalKind.HALF_OPEN_RIGHT)
        assert half.contains(F(0)) and not half.contains(F(1))

    def test_surd_membership(self):
        assert open_iv(1, 2).contains(QuadraticSurd(0, 1, 2))
        assert not open_iv(0, 1).contains(QuadraticSurd(0, 1, 2))

    def test_surd_endpoint(self):
        iv = IntervalQ(QuadraticSurd(0, 1, 2), 2, IntervalKind.OPEN)
        assert iv.contains(F(3, 2))
        assert not iv.contains(F(7, 5))

    def test_subset_kind_aware(self):
        assert closed(F(1, 4), F(3, 4)).is_subset_of(open_iv(0, 1))
        assert not closed(0, 1).is_subset_of(open_iv(0, 1))
        assert open_iv(0, 1).is_subset_of(closed(0, 1))

    def test_degenerate(self):
        assert closed(F(1, 2), F(1, 2)).contains(F(1, 2))
        with pytest.raises(DomainError):
            open_iv(F(1, 2), F(1, 2))
        with pytest.raises(DomainError):
            closed(1, 0)


class TestToDigits:
    def test_half_no_trailing_zeros(self):
        s = to_digits(F(1, 2), 2, 4, TailConvention.NO_TRAILING_ZEROS)
        assert s.digits == (0, 1, 1, 1)

    def test_half_no_trailing_max(self):
        s = to_digits(F(1, 2), 2, 4, TailConvention.NO_TRAILING_MAX)
        assert s.digits == (1, 0, 0, 0)

    def test_third_decimal(self):
        assert to_digits(F(1, 3), 10, 3).digits == (3, 3, 3)

    def test_endpoints(self):
        assert to_digits(F(0), 2, 3).digits == (0, 0, 0)
        assert to_digits(F(1), 2, 3).digits == (1, 1, 1)

    def test_domain(self):
        with pytest.raises(DomainError):
            to_digits(F(2), 2, 3)
        with pytest.raises(DomainError):
            to_digits(F(-1, 2), 2, 3)

    @given(st.fractions(min_value=0, max_value=1, max_denominator=5000),
           st.integers(min_value=2, max_value=10),
           st.integers(min_value=1, max_value=24))
    def test_round_trip_within_base_pow_minus_n(self, x, base, n):
        for conv in TailConvention:
            s = to_digits(x, base, n, conv)
            diff = x - s.prefix_value()
            assert 0 <= diff <= F(1, base**n)

    def test_dual_representation_exhaustive_dyadics(self):
        # the two conventions agree up to the last nonzero digit, which drops
        # by one and is followed by (base-1)s
        n = 12
        for j in range(1, 11):
            for k in range(1, 2**j):
                x = F(k, 2**j)
                hi = to_digits(x, 2, n, TailConvention.NO_TRAILING_MAX).digits
                lo = to_digits(x, 2, n, TailConvention.NO_TRAILING_ZEROS).digits
                if x == 1:
                    continue
                pos = max(i for i, d in enumerate(hi) if d != 0)
                assert lo[:pos] == hi[:pos]
                assert lo[pos] == hi[pos] - 1
                assert all(d == 1 for d in lo[pos + 1:])


class TestNestedReal:
    def test_refine(self):
        r = NestedReal([closed(0, 1), closed(0, F(1, 3))])
        assert r.refine(2) == closed(0, F(1, 3))
        assert r.refine(1) == closed(0, 1)
        with pytest.raises(IndexError):
            r.refine(3)
        with pytest.raises(IndexError):
            r.refine(0)

    def test_nesting_enforced(self):
        with pytest.raises(NestingError):
            NestedReal([closed(0, 1), closed(2, 3)])
        with pytest.raises(NestingError):
            NestedReal([closed(0, F(1, 2)), closed(F(1, 4), 1)])

    def test_width_schedule_checked(self):
        NestedReal(
            [closed(0, 1), closed(0, F(1, 3)), closed(0, F(1, 9))],
            width_schedule=lambda n: F(1, 3 ** (n - 1)),
        )
        with pytest.raises(DomainError):
            NestedReal(
                [closed(0, 1), closed(0, F(1, 2))],
                width_schedule=lambda n: F(1, 3 ** (n - 1)),
            )

    def test_only_closed_intervals(self):
        with pytest.raises(DomainError):
            NestedReal([open_iv(0, 1)])
