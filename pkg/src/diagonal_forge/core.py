"""Exact scalars, intervals, digit streams and nested-interval reals.

Everything downstream builds on these four types.  There is deliberately no
floating point anywhere: scalars are arbitrary-precision rationals (backed by
``fractions.Fraction``) or quadratic surds p + q*sqrt(d) with exact sign
tests, and every interval/membership question is decided by integer
arithmetic.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence, Tuple, Union

from .errors import (
    DomainError,
    InsufficientDigitsError,
    NestingError,
    ParseError,
    UnsupportedComparisonError,
)

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class Cmp(enum.Enum):
    LT = -1
    EQ = 0
    GT = 1


# ---------------------------------------------------------------------------
# canonical text forms
# ---------------------------------------------------------------------------

_RATIONAL_RE = re.compile(r"\A(-?\d+)(?:/(\d+))?\Z")


def parse_rational(text: str) -> Fraction:
    """Parse the canonical "p/q" form (q omitted when 1)."""
    m = _RATIONAL_RE.match(text.strip())
    if m is None:
        raise ParseError("not a rational in p/q form: %r" % (text,))
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ParseError("zero denominator: %r" % (text,))
    return Fraction(num, den)


def format_rational(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


# ---------------------------------------------------------------------------
# quadratic surds
# ---------------------------------------------------------------------------


def _squarefree_split(d: int) -> Tuple[int, int]:
    """Return (s, d') with d == s*s*d' and d' square-free."""
    s = 1
    f = 2
    rest = d
    while f * f <= rest:
        while rest % (f * f) == 0:
            rest //= f * f
            s *= f
        f += 1
    return s, rest


def _floor_sqrt_rational(x: Fraction) -> int:
    """floor(sqrt(x)) for x >= 0, exact."""
    if x < 0:
        raise DomainError("sqrt of negative rational")
    return math.isqrt(x.numerator * x.denominator) // x.denominator


@dataclass(frozen=True)
class QuadraticSurd:
    """Value p + q*sqrt(d) with p, q rational and d a square-free integer.

    Canonical: q == 0 iff the value is rational (then d == 0).  Comparisons
    against rationals, and against surds over the same radicand, are exact;
    mixed radicands with both irrational parts raise.
    """

    p: Fraction
    q: Fraction
    d: int

    def __init__(self, p, q=0, d=0):
        p = Fraction(p)
        q = Fraction(q)
        d = int(d)
        if d < 0:
            raise DomainError("negative radicand %d" % d)
        if q != 0 and d >= 2:
            s, d = _squarefree_split(d)
            q *= s
        if q == 0 or d in (0, 1):
            # value is rational: fold sqrt(0)=0, sqrt(1)=1 into p
            if q != 0 and d == 1:
                p += q
            q = ZERO
            d = 0
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "d", d)

    @property
    def is_rational(self) -> bool:
        return self.q == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise DomainError("surd %s is irrational" % (self,))
        return self.p

    def sign(self) -> int:
        """Exact sign of p + q*sqrt(d)."""
        p, q, d = self.p, self.q, self.d
        if q == 0:
            return (p > 0) - (p < 0)
        if p == 0:
            return 1 if q > 0 else -1
        if p > 0 and q > 0:
            return 1
        if p < 0 and q < 0:
            return -1
        # opposite signs: compare p*p against q*q*d on the dominant side
        lhs = p * p
        rhs = q * q * d
        if p > 0:  # q < 0: positive iff p > -q*sqrt(d) iff p*p > q*q*d
            return (lhs > rhs) - (lhs < rhs)
        return (rhs > lhs) - (rhs < lhs)

    def __neg__(self) -> "QuadraticSurd":
        return QuadraticSurd(-self.p, -self.q, self.d)

    def __sub__(self, other):
        return point_sub(self, other)

    def __rsub__(self, other):
        return point_sub(other, self)

    def __add__(self, other):
        if isinstance(other, QuadraticSurd):
            return point_sub(self, -other)
        return QuadraticSurd(self.p + Fraction(other), self.q, self.d)

    __radd__ = __add__

    def __str__(self) -> str:
        if self.is_rational:
            return format_rational(self.p)
        q = self.q
        head = "" if self.p == 0 else format_rational(self.p)
        sign = "-" if q < 0 else ("+" if head else "")
        mag = abs(q)
        coeff = "" if mag == 1 else "(%s)*" % format_rational(mag)
        return "%s%s%ssqrt(%d)" % (head, sign, coeff, self.d)


Point = Union[Fraction, QuadraticSurd]


def as_point(x) -> Point:
    if isinstance(x, QuadraticSurd):
        return x.p if x.is_rational else x
    return Fraction(x)


def point_sub(x: Point, y: Point) -> Point:
    """x - y, staying exact; raises for two irrational surds over different d."""
    xs = isinstance(x, QuadraticSurd) and not x.is_rational
    ys = isinstance(y, QuadraticSurd) and not y.is_rational
    if xs and ys:
        if x.d != y.d:
            raise UnsupportedComparisonError(
                "cannot combine sqrt(%d) with sqrt(%d)" % (x.d, y.d)
            )
        return as_point(QuadraticSurd(x.p - y.p, x.q - y.q, x.d))
    if xs:
        return QuadraticSurd(x.p - _as_fraction(y), x.q, x.d)
    if ys:
        return QuadraticSurd(_as_fraction(x) - y.p, -y.q, y.d)
    return _as_fraction(x) - _as_fraction(y)


def _as_fraction(x: Point) -> Fraction:
    if isinstance(x, QuadraticSurd):
        return x.as_fraction()
    return Fraction(x)


def compare(x: Point, y: Point) -> Cmp:
    """Exact trichotomy for rationals and quadratic surds."""
    if not isinstance(x, QuadraticSurd) and not isinstance(y, QuadraticSurd):
        # rational fast path: skip the surd-aware difference
        if x < y:
            return Cmp.LT
        if x > y:
            return Cmp.GT
        return Cmp.EQ
    diff = point_sub(as_point(x), as_point(y))
    if isinstance(diff, QuadraticSurd):
        s = diff.sign()
    else:
        s = (diff > 0) - (diff < 0)
    return Cmp(s)


def lt(x: Point, y: Point) -> bool:
    return compare(x, y) is Cmp.LT


def le(x: Point, y: Point) -> bool:
    return compare(x, y) is not Cmp.GT


def eq(x: Point, y: Point) -> bool:
    return compare(x, y) is Cmp.EQ


def sign_of(x: Point) -> int:
    if isinstance(x, QuadraticSurd):
        return x.sign()
    return (x > 0) - (x < 0)


def abs_point(x: Point) -> Point:
    return x if sign_of(x) >= 0 else -x


def floor_point(x: Point) -> int:
    """floor(x), exact for rationals and surds."""
    if not isinstance(x, QuadraticSurd):
        return math.floor(Fraction(x))
    if x.is_rational:
        return math.floor(x.p)
    # floor(p) + floor-ish of q*sqrt(d), then correct by exact comparison
    root_part = x.q * x.q * Fraction(x.d)
    mag = _floor_sqrt_rational(root_part)
    est = math.floor(x.p) + (mag if x.q > 0 else -(mag + 1))
    while point_sub(x, Fraction(est + 1)).sign() >= 0:
        est += 1
    while point_sub(x, Fraction(est)).sign() < 0:
        est -= 1
    return est


def rational_between(x: Point, y: Point) -> Fraction:
    """Some rational strictly between x and y (requires x < y), exact."""
    if compare(x, y) is not Cmp.LT:
        raise DomainError("rational_between needs x < y")
    k = 0
    while True:
        scale = 1 << k
        if isinstance(x, QuadraticSurd):
            n = floor_point(QuadraticSurd(x.p * scale, x.q * scale, x.d)) + 1
        else:
            n = math.floor(Fraction(x) * scale) + 1
        cand = Fraction(n, scale)
        if lt(cand, y):
            if lt(x, cand):
                return cand
        k += 1


def format_point(x: Point) -> str:
    if isinstance(x, QuadraticSurd):
        return str(x)
    return format_rational(Fraction(x))


# ---------------------------------------------------------------------------
# intervals
# ---------------------------------------------------------------------------


class IntervalKind(enum.Enum):
    OPEN = "open"
    CLOSED = "closed"
    HALF_OPEN_LEFT = "half_open_left"    # (lo, hi]
    HALF_OPEN_RIGHT = "half_open_right"  # [lo, hi)

    @property
    def left_closed(self) -> bool:
        return self in (IntervalKind.CLOSED, IntervalKind.HALF_OPEN_RIGHT)

    @property
    def right_closed(self) -> bool:
        return self in (IntervalKind.CLOSED, IntervalKind.HALF_OPEN_LEFT)


@dataclass(frozen=True)
class IntervalQ:
    """Interval with exact endpoints (rational or quadratic surd)."""

    lo: Point
    hi: Point
    kind: IntervalKind = IntervalKind.CLOSED

    def __post_init__(self):
        object.__setattr__(self, "lo", as_point(self.lo))
        object.__setattr__(self, "hi", as_point(self.hi))
        c = compare(self.lo, self.hi)
        if c is Cmp.GT:
            raise DomainError("interval with lo > hi: %s" % (self,))
        if c is Cmp.EQ and self.kind is not IntervalKind.CLOSED:
            raise DomainError("degenerate non-closed interval: %s" % (self,))

    def contains(self, x: Point) -> bool:
        cl = compare(x, self.lo)
        if cl is Cmp.LT or (cl is Cmp.EQ and not self.kind.left_closed):
            return False
        ch = compare(x, self.hi)
        if ch is Cmp.GT or (ch is Cmp.EQ and not self.kind.right_closed):
            return False
        return True

    def width(self) -> Point:
        return point_sub(self.hi, self.lo)

    def midpoint(self) -> Fraction:
        return (_as_fraction(self.lo) + _as_fraction(self.hi)) / 2

    def is_subset_of(self, other: "IntervalQ") -> bool:
        """self subseteq other, kind-aware and exact."""
        cl = compare(self.lo, other.lo)
        if cl is Cmp.LT:
            return False
        if cl is Cmp.EQ and self.kind.left_closed and not other.kind.left_closed:
            return False
        ch = compare(self.hi, other.hi)
        if ch is Cmp.GT:
            return False
        if ch is Cmp.EQ and self.kind.right_closed and not other.kind.right_closed:
            return False
        return True

    def interior(self) -> "IntervalQ":
        return IntervalQ(self.lo, self.hi, IntervalKind.OPEN)

    def closure(self) -> "IntervalQ":
        return IntervalQ(self.lo, self.hi, IntervalKind.CLOSED)

    def __str__(self) -> str:
        left = "[" if self.kind.left_closed else "("
        right = "]" if self.kind.right_closed else ")"
        return "%s%s,%s%s" % (left, format_point(self.lo), format_point(self.hi), right)


def closed(lo, hi) -> IntervalQ:
    return IntervalQ(lo, hi, IntervalKind.CLOSED)


def open_iv(lo, hi) -> IntervalQ:
    return IntervalQ(lo, hi, IntervalKind.OPEN)


_INTERVAL_RE = re.compile(r"\A([\[(])\s*([^,]+)\s*,\s*([^\])]+)\s*([\])])\Z")


def parse_interval(text: str) -> IntervalQ:
    """Parse "[lo,hi]" / "(lo,hi)" / half-open mixes, rational endpoints."""
    m = _INTERVAL_RE.match(text.strip())
    if m is None:
        raise ParseError("not an interval: %r" % (text,))
    lo = parse_rational(m.group(2))
    hi = parse_rational(m.group(3))
    left_closed = m.group(1) == "["
    right_closed = m.group(4) == "]"
    if left_closed and right_closed:
        kind = IntervalKind.CLOSED
    elif left_closed:
        kind = IntervalKind.HALF_OPEN_RIGHT
    elif right_closed:
        kind = IntervalKind.HALF_OPEN_LEFT
    else:
        kind = IntervalKind.OPEN
    return IntervalQ(lo, hi, kind)


# ---------------------------------------------------------------------------
# digit streams
# ---------------------------------------------------------------------------


class TailConvention(enum.Enum):
    NO_TRAILING_ZEROS = "no_trailing_zeros"
    NO_TRAILING_MAX = "no_trailing_max"
    UNNORMALIZED = "unnormalized"


@dataclass(frozen=True)
class DigitStream:
    """Finite prefix of a base-b expansion, plus a tail normalization."""

    base: int
    digits: Tuple[int, ...]
    tail_convention: TailConvention = TailConvention.UNNORMALIZED

    def __post_init__(self):
        if self.base < 2:
            raise DomainError("base must be >= 2, got %d" % self.base)
        digits = tuple(int(d) for d in self.digits)
        for d in digits:
            if not 0 <= d < self.base:
                raise DomainError("digit %d out of range for base %d" % (d, self.base))
        object.__setattr__(self, "digits", digits)

    def __len__(self) -> int:
        return len(self.digits)

    def digit(self, n: int) -> int:
        """1-indexed digit access."""
        if not 1 <= n <= len(self.digits):
            raise InsufficientDigitsError(
                "stream has %d digits, position %d requested" % (len(self.digits), n),
                position=n,
            )
        return self.digits[n - 1]

    def prefix_value(self) -> Fraction:
        """Sum digits[i] * base**(-i) over the stored prefix, exact."""
        acc = 0
        for d in self.digits:
            acc = acc * self.base + d
        return Fraction(acc, self.base ** len(self.digits))

    def __str__(self) -> str:
        if self.base > 10:
            body = ".".join(str(d) for d in self.digits)
        else:
            body = "".join(str(d) for d in self.digits)
        return "0.%s(base %d)" % (body, self.base)


_STREAM_RE = re.compile(r"\A0\.(\d+)(?:\s*\(base\s*(\d+)\))?\Z")


def parse_digit_stream(
    text: str, base: Optional[int] = None,
    convention: TailConvention = TailConvention.UNNORMALIZED,
) -> DigitStream:
    """Parse "0.d1d2...dn(base b)"; bases 2..10 (single-character digits)."""
    m = _STREAM_RE.match(text.strip())
    if m is None:
        raise ParseError("not a digit stream: %r" % (text,))
    declared = int(m.group(2)) if m.group(2) else None
    if declared is not None and base is not None and declared != base:
        raise ParseError("stream declares base %d, expected %d" % (declared, base))
    b = declared if declared is not None else (base if base is not None else 10)
    if not 2 <= b <= 10:
        raise ParseError("text form supports bases 2..10, got %d" % b)
    return DigitStream(b, tuple(int(ch) for ch in m.group(1)), convention)


def to_digits(
    x: Fraction, base: int, n: int,
    convention: TailConvention = TailConvention.NO_TRAILING_ZEROS,
) -> DigitStream:
    """First n digits of the base-b expansion of x in [0, 1].

    For values with a terminating expansion the convention picks which of the
    two expansions is produced: no_trailing_max keeps the terminating form,
    no_trailing_zeros rewrites the last nonzero digit down and pads with
    (base-1)s.  0 and 1 each have a single expansion.
    """
    x = Fraction(x)
    if base < 2:
        raise DomainError("base must be >= 2")
    if x < 0 or x > 1:
        raise DomainError("to_digits needs 0 <= x <= 1, got %s" % format_rational(x))
    if x == 1:
        return DigitStream(base, (base - 1,) * n, convention)
    digits = []
    r = x
    for _ in range(n):
        r *= base
        d = math.floor(r)
        r -= d
        digits.append(d)
    if convention is TailConvention.NO_TRAILING_ZEROS and r == 0 and x != 0:
        j = max(i for i, d in enumerate(digits) if d != 0)
        digits[j] -= 1
        for i in range(j + 1, n):
            digits[i] = base - 1
    return DigitStream(base, tuple(digits), convention)


# ---------------------------------------------------------------------------
# nested-interval reals
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NestedReal:
    """Finite chain of nested closed intervals certifying a real number.

    The chain is verified link by link on construction; the optional width
    schedule is checked exactly against each interval.
    """

    chain: Tuple[IntervalQ, ...]
    width_schedule: Optional[Callable[[int], Fraction]] = None

    def __init__(self, chain: Sequence[IntervalQ], width_schedule=None):
        chain = tuple(chain)
        if not chain:
            raise DomainError("empty chain")
        for i, iv in enumerate(chain):
            if iv.kind is not IntervalKind.CLOSED:
                raise DomainError("chain interval %d is not closed: %s" % (i + 1, iv))
        for i in range(len(chain) - 1):
            if not chain[i + 1].is_subset_of(chain[i]):
                raise NestingError(
                    "link %d: %s is not contained in %s"
                    % (i + 1, chain[i + 1], chain[i]),
                    link=i + 1,
                )
        if width_schedule is not None:
            for i, iv in enumerate(chain):
                bound = Fraction(width_schedule(i + 1))
                w = iv.width()
                if isinstance(w, QuadraticSurd) or w > bound:
                    raise DomainError(
                        "interval %d wider than schedule: |%s| > %s"
                        % (i + 1, iv, format_rational(bound))
                    )
        object.__setattr__(self, "chain", chain)
        object.__setattr__(self, "width_schedule", width_schedule)

    def __len__(self) -> int:
        return len(self.chain)

    def refine(self, k: int) -> IntervalQ:
        """k-th enclosure, 1-indexed."""
        if not 1 <= k <= len(self.chain):
            raise IndexError("refine(%d) on a chain of length %d" % (k, len(self.chain)))
        return self.chain[k - 1]

    def final(self) -> IntervalQ:
        return self.chain[-1]
