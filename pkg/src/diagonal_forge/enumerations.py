"""Indexed sequences of reals in [0,1]: the adversary input to every escape.

Built-in kinds are 1-indexed and immutable.  ``rationals_01`` and
``dyadics_both_reps`` additionally support an analytic "first element inside
an open interval" query; without it, constructions that scan for interval
hits would need astronomically many sequential accesses (the denominators of
the hits grow geometrically with depth).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .core import (
    DigitStream,
    IntervalQ,
    Point,
    QuadraticSurd,
    TailConvention,
    compare,
    Cmp,
    parse_rational,
    to_digits,
)
from .errors import ConfigurationError, DomainError, ParseError

Element = Union[Fraction, QuadraticSurd, DigitStream]


class EnumKind(enum.Enum):
    RATIONALS_01 = "rationals_01"
    DYADICS_BOTH_REPS = "dyadics_both_reps"
    SURDS_BOUNDED = "surds_bounded"
    FILE_LIST = "file_list"
    DIGIT_GRID = "digit_grid"


# ---------------------------------------------------------------------------
# rationals in [0,1], ordered by denominator then numerator
# ---------------------------------------------------------------------------


class _RationalOrder:
    """Lazy cache of 0, 1, 1/2, 1/3, 2/3, 1/4, 3/4, ... by (q, p)."""

    def __init__(self):
        self._items: List[Fraction] = [Fraction(0), Fraction(1)]
        self._next_q = 2

    def get(self, k: int) -> Fraction:
        while len(self._items) < k:
            q = self._next_q
            self._next_q += 1
            for p in range(1, q):
                if math.gcd(p, q) == 1:
                    self._items.append(Fraction(p, q))
        return self._items[k - 1]


_RATIONAL_CACHE = _RationalOrder()


def rationals_01(k: int) -> Fraction:
    """k-th rational in [0,1]: ascending denominator, then numerator."""
    if k < 1:
        raise DomainError("enumeration index must be >= 1, got %d" % k)
    return _RATIONAL_CACHE.get(k)


def rational_order_key(x: Fraction) -> Tuple[int, int]:
    """Position of x within the rationals_01 order, as a comparable key."""
    return (x.denominator, x.numerator)


def simplest_in_open(a: Fraction, b: Fraction) -> Fraction:
    """The unique fraction of minimal denominator (then numerator) in (a, b)."""
    if not a < b:
        raise DomainError("simplest_in_open needs a < b")
    n = math.floor(a) + 1
    if n < b:
        return Fraction(n)
    m = math.floor(a)
    a2, b2 = a - m, b - m
    if a2 == 0:
        q = math.floor(1 / b2) + 1
        return m + Fraction(1, q)
    return m + 1 / simplest_in_open(1 / b2, 1 / a2)


# ---------------------------------------------------------------------------
# dyadics in (0,1), each listed twice (both binary representations)
# ---------------------------------------------------------------------------


def _dyadic_by_rank(i: int) -> Fraction:
    """i-th dyadic in (0,1) under (denominator 2^j, then numerator) order."""
    j = 1
    seen = 0
    while i > seen + (1 << (j - 1)):
        seen += 1 << (j - 1)
        j += 1
    offset = i - seen - 1
    return Fraction(2 * offset + 1, 1 << j)


def dyadics_both_reps(k: int, prefix_len: int) -> DigitStream:
    """k-th entry: dyadics by (2^j, numerator), terminating form first."""
    if k < 1:
        raise DomainError("enumeration index must be >= 1, got %d" % k)
    value = _dyadic_by_rank((k + 1) // 2)
    conv = (
        TailConvention.NO_TRAILING_MAX
        if k % 2 == 1
        else TailConvention.NO_TRAILING_ZEROS
    )
    return to_digits(value, 2, prefix_len, conv)


def dyadic_value(k: int) -> Fraction:
    """Exact value behind the k-th dyadics_both_reps entry."""
    return _dyadic_by_rank((k + 1) // 2)


# ---------------------------------------------------------------------------
# bounded quadratic surds in [0,1]
# ---------------------------------------------------------------------------


class _SurdOrder:
    """p/q + (r/s)*sqrt(d), d in {2,3,5}, r != 0, by ascending coefficient cap.

    Level m lists the canonical values with max(|p|, q, |r|, s, d) == m that
    lie in [0,1] and were not produced by an earlier level, in a fixed
    deterministic tuple order.
    """

    def __init__(self):
        self._items: List[QuadraticSurd] = []
        self._seen = set()
        self._next_level = 2

    def _emit_level(self, m: int):
        for d in (2, 3, 5):
            if d > m:
                continue
            for q in range(1, m + 1):
                for s in range(1, m + 1):
                    for p in range(-m, m + 1):
                        for r in range(-m, m + 1):
                            if r == 0:
                                continue
                            if max(abs(p), q, abs(r), s, d) != m:
                                continue
                            value = QuadraticSurd(Fraction(p, q), Fraction(r, s), d)
                            key = (value.p, value.q, value.d)
                            if key in self._seen:
                                continue
                            if value.sign() < 0:
                                continue
                            if (value - Fraction(1)).sign() > 0:
                                continue
                            self._seen.add(key)
                            self._items.append(value)

    def get(self, k: int) -> QuadraticSurd:
        while len(self._items) < k:
            self._emit_level(self._next_level)
            self._next_level += 1
        return self._items[k - 1]


_SURD_CACHE = _SurdOrder()


def surds_bounded(k: int) -> QuadraticSurd:
    """k-th bounded quadratic surd in [0,1]."""
    if k < 1:
        raise DomainError("enumeration index must be >= 1, got %d" % k)
    return _SURD_CACHE.get(k)


# ---------------------------------------------------------------------------
# the Enumeration wrapper
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InteriorHit:
    """Result of a fast interval scan: the first element inside an interval."""

    value: Fraction
    order_key: Tuple[int, int]
    index: Optional[int] = None  # global index when cheaply known


class Enumeration:
    """Indexed source k -> element, 1-indexed, immutable after construction.

    ``value(k)`` is the exact point value of the k-th element (digit-stream
    entries are backed by their pinned rational).  ``first_interior`` is the
    analytic scan hook; kinds without one return NotImplemented-style None
    via ``supports_fast_scan``.
    """

    def __init__(self, kind: EnumKind, *, capacity: Optional[int] = None,
                 elements: Optional[Sequence[Element]] = None,
                 values: Optional[Sequence[Point]] = None,
                 prefix_len: int = 64):
        self.kind = kind
        self.capacity = capacity
        self._elements = list(elements) if elements is not None else None
        self._values = list(values) if values is not None else None
        self.prefix_len = prefix_len

    # -- accessors ---------------------------------------------------------

    def _check_index(self, k: int):
        if k < 1:
            raise DomainError("enumeration index must be >= 1, got %d" % k)
        if self.capacity is not None and k > self.capacity:
            raise DomainError(
                "index %d beyond capacity %d" % (k, self.capacity)
            )

    def element(self, k: int) -> Element:
        self._check_index(k)
        if self.kind is EnumKind.RATIONALS_01:
            return rationals_01(k)
        if self.kind is EnumKind.DYADICS_BOTH_REPS:
            return dyadics_both_reps(k, self.prefix_len)
        if self.kind is EnumKind.SURDS_BOUNDED:
            return surds_bounded(k)
        return self._elements[k - 1]

    def value(self, k: int) -> Point:
        """Exact value of the k-th element."""
        self._check_index(k)
        if self.kind is EnumKind.RATIONALS_01:
            return rationals_01(k)
        if self.kind is EnumKind.DYADICS_BOTH_REPS:
            return dyadic_value(k)
        if self.kind is EnumKind.SURDS_BOUNDED:
            return surds_bounded(k)
        if self._values is not None:
            return self._values[k - 1]
        el = self._elements[k - 1]
        if isinstance(el, DigitStream):
            return el.prefix_value()
        return el

    def stream(self, k: int) -> DigitStream:
        """k-th element as a digit stream; only digit-bearing kinds qualify."""
        el = self.element(k)
        if not isinstance(el, DigitStream):
            raise ConfigurationError(
                "%s enumeration does not provide digit streams" % self.kind.value
            )
        return el

    @property
    def is_digit_kind(self) -> bool:
        return self.kind in (EnumKind.DYADICS_BOTH_REPS, EnumKind.DIGIT_GRID) or (
            self.kind is EnumKind.FILE_LIST
            and self._elements is not None
            and all(isinstance(e, DigitStream) for e in self._elements)
        )

    # -- fast interval scans ----------------------------------------------

    @property
    def supports_fast_scan(self) -> bool:
        return self.kind in (EnumKind.RATIONALS_01, EnumKind.DYADICS_BOTH_REPS)

    def first_interior(self, iv: IntervalQ) -> Optional[InteriorHit]:
        """First element (in index order) strictly usable from ``iv``.

        Endpoint membership respects the interval's kind exactly.  Requires a
        fast-scan kind and rational endpoints.
        """
        if self.kind is EnumKind.RATIONALS_01:
            return self._first_rational(iv)
        if self.kind is EnumKind.DYADICS_BOTH_REPS:
            return self._first_dyadic(iv)
        raise ConfigurationError(
            "%s enumeration has no fast interval scan" % self.kind.value
        )

    def _first_rational(self, iv: IntervalQ) -> Optional[InteriorHit]:
        for endpoint, idx in ((Fraction(0), 1), (Fraction(1), 2)):
            if iv.contains(endpoint):
                return InteriorHit(endpoint, rational_order_key(endpoint), idx)
        a = max(Fraction(iv.lo), Fraction(0))
        b = min(Fraction(iv.hi), Fraction(1))
        if not a < b:
            return None
        x = simplest_in_open(a, b)
        if not iv.contains(x):  # iv may be narrower than (a, b) at the edges
            return None
        return InteriorHit(x, rational_order_key(x))

    def _first_dyadic(self, iv: IntervalQ) -> Optional[InteriorHit]:
        a = max(Fraction(iv.lo), Fraction(0))
        b = min(Fraction(iv.hi), Fraction(1))
        if not a < b:
            return None
        j = 1
        while True:
            scale = 1 << j
            n = math.floor(a * scale) + 1
            while Fraction(n, scale) < b:
                x = Fraction(n, scale)
                if n % 2 == 1 and iv.contains(x):
                    return InteriorHit(x, (j, n))
                n += 1
            # even numerators reduce to a smaller j already checked, so the
            # first hit is always an odd numerator; dyadics are dense, hence
            # this terminates for every nonempty open interval
            j += 1

    # -- iteration helper --------------------------------------------------

    def indices(self, limit: Optional[int] = None):
        """1-based indices up to capacity (or ``limit`` for infinite kinds)."""
        stop = self.capacity if self.capacity is not None else limit
        if stop is None:
            raise DomainError("infinite enumeration needs an explicit limit")
        if self.capacity is not None and limit is not None:
            stop = min(stop, limit)
        return range(1, stop + 1)


def rationals_enumeration() -> Enumeration:
    return Enumeration(EnumKind.RATIONALS_01)


def dyadics_enumeration(prefix_len: int = 64) -> Enumeration:
    return Enumeration(EnumKind.DYADICS_BOTH_REPS, prefix_len=prefix_len)


def surds_enumeration() -> Enumeration:
    return Enumeration(EnumKind.SURDS_BOUNDED)


def digit_grid(streams: Sequence[DigitStream]) -> Enumeration:
    """Wrap a list of digit streams as a finite diagonalization matrix."""
    streams = list(streams)
    return Enumeration(
        EnumKind.DIGIT_GRID, capacity=len(streams), elements=streams
    )


def from_values(values: Sequence[Point]) -> Enumeration:
    """Finite enumeration over explicit exact values (file-list semantics)."""
    values = [v if isinstance(v, QuadraticSurd) else Fraction(v) for v in values]
    for v in values:
        _check_unit_range(v, line=None)
    return Enumeration(EnumKind.FILE_LIST, capacity=len(values), elements=values)


def _check_unit_range(v: Point, line):
    lo = compare(v, Fraction(0))
    hi = compare(v, Fraction(1))
    if lo is Cmp.LT or hi is Cmp.GT:
        where = "" if line is None else " at line %d" % line
        raise DomainError("value outside [0,1]%s" % where, witness=v)


def load_file(path, base: int = 10) -> Enumeration:
    """Parse a one-value-per-line file of "p/q" rationals or digit strings."""
    elements: List[Element] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            elements.append(parse_list_entry(line, base, lineno))
    return Enumeration(
        EnumKind.FILE_LIST, capacity=len(elements), elements=elements
    )


def parse_list_entry(text: str, base: int, lineno: Optional[int] = None) -> Element:
    where = "" if lineno is None else " at line %d" % lineno
    text = text.strip()
    if text.startswith("0.") and "/" not in text:
        body = text[2:]
        if not body.isdigit():
            raise ParseError("malformed digit string%s: %r" % (where, text), line=lineno)
        try:
            digits = tuple(int(ch) for ch in body)
            return DigitStream(base, digits, TailConvention.UNNORMALIZED)
        except DomainError as exc:
            raise ParseError("%s%s" % (exc, where), line=lineno)
    try:
        value = parse_rational(text)
    except ParseError:
        raise ParseError("malformed line%s: %r" % (where, text), line=lineno)
    if not 0 <= value <= 1:
        raise DomainError("value outside [0,1]%s: %s" % (where, text), witness=value)
    return value
