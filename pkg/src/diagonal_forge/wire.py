"""Canonical JSON wire forms for every value crossing the CLI or HTTP API.

Exact values travel as canonical text ("p/q", "a+(q)*sqrt(d)", interval and
stream texts); decimal renderings appear only in display-only "approx"
fields and are never parsed back.
"""

from __future__ import annotations

import decimal
import re
from fractions import Fraction
from typing import Optional

from .core import (
    DigitStream,
    IntervalKind,
    IntervalQ,
    NestedReal,
    Point,
    QuadraticSurd,
    TailConvention,
    format_point,
    format_rational,
    parse_rational,
)
from .constructors import (
    CauchyReal,
    ExclusionCertificate,
    ExclusionReason,
    Round,
)
from .enumerations import (
    Enumeration,
    digit_grid,
    dyadics_enumeration,
    from_values,
    rationals_enumeration,
    surds_enumeration,
)
from .errors import ParseError


# ---------------------------------------------------------------------------
# display approximations (12 significant digits, never parsed back)
# ---------------------------------------------------------------------------

_CTX = decimal.Context(prec=12)


def approx(x: Point) -> str:
    if isinstance(x, QuadraticSurd):
        if x.is_rational:
            x = x.as_fraction()
        else:
            p = _to_decimal(x.p)
            q = _to_decimal(x.q)
            root = _CTX.sqrt(decimal.Decimal(x.d))
            return str(_CTX.add(p, _CTX.multiply(q, root)))
    return str(_to_decimal(Fraction(x)))


def _to_decimal(f: Fraction) -> decimal.Decimal:
    return _CTX.divide(decimal.Decimal(f.numerator), decimal.Decimal(f.denominator))


# ---------------------------------------------------------------------------
# points
# ---------------------------------------------------------------------------

_SURD_RE = re.compile(
    r"\A(?:(?P<head>-?\d+(?:/\d+)?)(?P<sign>[+-])|(?P<lead>-)?)"
    r"(?:\((?P<coeff>\d+(?:/\d+)?)\)\*)?sqrt\((?P<d>\d+)\)\Z"
)


def parse_point(text: str) -> Point:
    """Inverse of format_point: rational "p/q" or surd "p+(q)*sqrt(d)"."""
    text = text.strip()
    m = _SURD_RE.match(text)
    if m is None:
        return parse_rational(text)
    head = parse_rational(m.group("head")) if m.group("head") else Fraction(0)
    coeff = parse_rational(m.group("coeff")) if m.group("coeff") else Fraction(1)
    if m.group("sign") == "-" or m.group("lead") == "-":
        coeff = -coeff
    return QuadraticSurd(head, coeff, int(m.group("d")))


def point_to_json(x: Point) -> dict:
    return {"value": format_point(x), "approx": approx(x)}


# ---------------------------------------------------------------------------
# intervals, streams, chains
# ---------------------------------------------------------------------------

def interval_to_json(iv: IntervalQ) -> dict:
    return {
        "text": str(iv),
        "lo": format_point(iv.lo),
        "hi": format_point(iv.hi),
        "kind": iv.kind.value,
        "approx": {"lo": approx(iv.lo), "hi": approx(iv.hi)},
    }


def interval_from_json(data: dict) -> IntervalQ:
    try:
        return IntervalQ(
            parse_point(data["lo"]), parse_point(data["hi"]),
            IntervalKind(data["kind"]),
        )
    except (KeyError, ValueError, TypeError) as exc:
        raise ParseError("bad interval payload: %s" % exc)


def stream_to_json(s: DigitStream) -> dict:
    return {
        "text": str(s),
        "base": s.base,
        "digits": list(s.digits),
        "convention": s.tail_convention.value,
        "approx": approx(s.prefix_value()),
    }


def stream_from_json(data: dict) -> DigitStream:
    try:
        return DigitStream(
            int(data["base"]),
            tuple(int(d) for d in data["digits"]),
            TailConvention(data.get("convention", "unnormalized")),
        )
    except (KeyError, ValueError, TypeError) as exc:
        raise ParseError("bad stream payload: %s" % exc)


def nested_to_json(r: NestedReal) -> dict:
    return {"chain": [interval_to_json(r.refine(k)) for k in range(1, len(r) + 1)]}


def nested_from_json(data: dict) -> NestedReal:
    return NestedReal([interval_from_json(iv) for iv in data["chain"]])


def cauchy_to_json(c: CauchyReal) -> dict:
    return {
        "terms": [format_rational(t) for t in c.terms],
        "approx": [approx(t) for t in c.terms],
    }


def cauchy_from_json(data: dict) -> CauchyReal:
    return CauchyReal([parse_rational(t) for t in data["terms"]])


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------

def round_to_json(r: Round) -> dict:
    out = {"reason": r.reason.value}
    if r.index is not None:
        out["index"] = r.index
    if r.point is not None:
        out["point"] = format_point(r.point)
    if r.witness is not None:
        out["witness"] = interval_to_json(r.witness)
    if r.digit_position is not None:
        out["digit_position"] = r.digit_position
    if r.term_index is not None:
        out["term_index"] = r.term_index
    return out


def round_from_json(data: dict) -> Round:
    try:
        return Round(
            reason=ExclusionReason(data["reason"]),
            index=data.get("index"),
            point=parse_point(data["point"]) if "point" in data else None,
            witness=(
                interval_from_json(data["witness"]) if "witness" in data else None
            ),
            digit_position=data.get("digit_position"),
            term_index=data.get("term_index"),
        )
    except (KeyError, ValueError, TypeError) as exc:
        raise ParseError("bad round payload: %s" % exc)


def certificate_to_json(cert: ExclusionCertificate) -> dict:
    out = {
        "rounds": [round_to_json(r) for r in cert.rounds],
        "early_termination": cert.early_termination,
    }
    if cert.enclosure is not None:
        out["enclosure"] = interval_to_json(cert.enclosure)
    if cert.claimed_depth is not None:
        out["claimed_depth"] = cert.claimed_depth
    if cert.witness_point is not None:
        out["witness_point"] = format_point(cert.witness_point)
    if cert.meta:
        out["meta"] = cert.meta
    return out


def certificate_from_json(data: dict) -> ExclusionCertificate:
    return ExclusionCertificate(
        rounds=tuple(round_from_json(r) for r in data.get("rounds", [])),
        enclosure=(
            interval_from_json(data["enclosure"]) if "enclosure" in data else None
        ),
        claimed_depth=data.get("claimed_depth"),
        early_termination=bool(data.get("early_termination", False)),
        witness_point=(
            parse_point(data["witness_point"]) if "witness_point" in data else None
        ),
        meta=data.get("meta", {}),
    )


def enumeration_to_json(e: Enumeration) -> dict:
    out = {"kind": e.kind.value}
    if e.capacity is not None:
        entries = []
        for k in range(1, e.capacity + 1):
            el = e.element(k)
            entries.append(
                {"stream": stream_to_json(el)}
                if isinstance(el, DigitStream)
                else {"point": format_point(el)}
            )
        out["entries"] = entries
    return out


def enumeration_from_json(data: dict) -> Enumeration:
    kind = data.get("kind")
    builders = {
        "rationals_01": rationals_enumeration,
        "dyadics_both_reps": dyadics_enumeration,
        "surds_bounded": surds_enumeration,
    }
    if kind in builders:
        return builders[kind]()
    entries = data.get("entries")
    if entries is None:
        raise ParseError("unknown enumeration kind %r" % kind)
    if all("stream" in item for item in entries) and entries:
        return digit_grid([stream_from_json(item["stream"]) for item in entries])
    try:
        return from_values([parse_point(item["point"]) for item in entries])
    except KeyError as exc:
        raise ParseError("bad enumeration payload: %s" % exc)


def result_to_json(result) -> dict:
    if isinstance(result, NestedReal):
        return {"type": "nested", **nested_to_json(result)}
    if isinstance(result, DigitStream):
        return {"type": "stream", **stream_to_json(result)}
    if isinstance(result, CauchyReal):
        return {"type": "cauchy", **cauchy_to_json(result)}
    raise ParseError("unknown result type %r" % type(result).__name__)


def result_from_json(data: dict):
    t = data.get("type")
    if t == "nested":
        return nested_from_json(data)
    if t == "stream":
        return stream_from_json(data)
    if t == "cauchy":
        return cauchy_from_json(data)
    raise ParseError("unknown result type %r" % t)
