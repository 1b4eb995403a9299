import random
from fractions import Fraction as F

import pytest

from diagonal_forge.constructors import cantor1874, trisect, verify_certificate
from diagonal_forge.core import (
    DigitStream,
    NestedReal,
    QuadraticSurd,
    TailConvention,
    closed,
    format_point,
    format_rational,
    open_iv,
)
from diagonal_forge.enumerations import (
    digit_grid,
    from_values,
    rationals_enumeration,
)
from diagonal_forge.errors import ParseError
from diagonal_forge.wire import (
    approx,
    certificate_from_json,
    certificate_to_json,
    enumeration_from_json,
    enumeration_to_json,
    interval_from_json,
    interval_to_json,
    parse_point,
    result_from_json,
    result_to_json,
    stream_from_json,
    stream_to_json,
)


class TestPoints:
    def test_rational_round_trip(self):
        rng = random.Random(11)
        for _ in range(10_000):
            x = F(rng.randrange(-10**9, 10**9), rng.randrange(1, 10**9))
            assert parse_point(format_rational(x)) == x

    @pytest.mark.parametrize("x", [
        QuadraticSurd(F(0), F(1), 2),
        QuadraticSurd(F(1, 3), F(-2, 5), 7),
        QuadraticSurd(F(-1, 2), F(1), 3),
        QuadraticSurd(F(2), F(0), 2),
    ])
    def test_surd_round_trip(self, x):
        back = parse_point(format_point(x))
        if isinstance(back, QuadraticSurd):
            assert back == x
        else:
            # purely rational surds canonicalize to Fraction text
            assert x.is_rational and back == x.as_fraction()

    def test_approx_is_short_decimal(self):
        assert approx(F(1, 3)).startswith("0.333333333333")
        assert approx(QuadraticSurd(F(0), F(1), 2)).startswith("1.41421356")

    def test_garbage_rejected(self):
        with pytest.raises(ParseError):
            parse_point("sqrt(two)")


class TestIntervalsStreams:
    def test_interval_round_trip(self):
        for iv in (closed(F(1, 3), F(1, 2)), open_iv(F(0), F(1))):
            assert interval_from_json(interval_to_json(iv)) == iv

    def test_interval_bad_payload(self):
        with pytest.raises(ParseError):
            interval_from_json({"lo": "0", "kind": "closed"})

    def test_stream_round_trip(self):
        s = DigitStream(10, (3, 1, 4, 1, 5), TailConvention.UNNORMALIZED)
        assert stream_from_json(stream_to_json(s)) == s

    def test_stream_default_convention(self):
        data = {"base": 2, "digits": [1, 0, 1]}
        assert stream_from_json(data).tail_convention is TailConvention.UNNORMALIZED


class TestResultsAndCertificates:
    def test_nested_result_round_trip(self):
        result, cert = cantor1874(rationals_enumeration(), closed(F(0), F(1)), 6)
        data = result_to_json(result)
        back = result_from_json(data)
        assert isinstance(back, NestedReal)
        assert len(back) == len(result)
        assert all(back.refine(k) == result.refine(k)
                   for k in range(1, len(result) + 1))

    def test_certificate_survives_the_wire(self):
        e = rationals_enumeration()
        result, cert = trisect(e, 10)
        data = certificate_to_json(cert)
        back = certificate_from_json(data)
        assert verify_certificate(result_from_json(result_to_json(result)), back, e)

    def test_tampered_wire_certificate_fails(self):
        e = rationals_enumeration()
        result, cert = trisect(e, 6)
        data = certificate_to_json(cert)
        data["enclosure"]["lo"] = "0"
        assert not verify_certificate(result, certificate_from_json(data), e)


class TestEnumerations:
    def test_builtin_round_trip(self):
        e = enumeration_from_json(enumeration_to_json(rationals_enumeration()))
        assert e.value(5) == rationals_enumeration().value(5)

    def test_value_list_round_trip(self):
        e = from_values([F(1, 2), QuadraticSurd(F(0), F(1, 2), 2)])
        back = enumeration_from_json(enumeration_to_json(e))
        assert back.capacity == 2
        assert back.value(2) == e.value(2)

    def test_digit_grid_round_trip(self):
        grid = digit_grid([DigitStream(2, (0, 1)), DigitStream(2, (1, 1))])
        back = enumeration_from_json(enumeration_to_json(grid))
        assert back.stream(2).digits == (1, 1)

    def test_unknown_kind_rejected(self):
        with pytest.raises(ParseError):
            enumeration_from_json({"kind": "integers"})
