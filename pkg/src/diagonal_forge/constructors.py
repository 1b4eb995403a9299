"""Escape constructions over enumerated reals, with checkable certificates.

Each constructor consumes an adversary enumeration and a depth and emits a
nested-interval real (or digit stream) together with an exclusion
certificate.  The certificate is audited by :func:`verify_certificate`,
which re-derives every exclusion from scratch using only exact comparisons
and shares no logic with the constructors themselves.
"""

from __future__ import annotations

import enum
import functools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .core import (
    Cmp,
    DigitStream,
    IntervalKind,
    IntervalQ,
    NestedReal,
    Point,
    QuadraticSurd,
    TailConvention,
    abs_point,
    closed,
    compare,
    eq,
    format_point,
    lt,
    open_iv,
    point_sub,
    rational_between,
)
from .enumerations import Enumeration, EnumKind
from .errors import (
    ConfigurationError,
    DensityViolationError,
    DomainError,
    ModulusViolationError,
    OracleViolationError,
    UnsupportedComparisonError,
)


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------


class ExclusionReason(enum.Enum):
    OUTSIDE_INTERVAL = "outside_interval"   # point not in the recorded interval
    ENDPOINT = "endpoint"                   # point is an endpoint; enclosure sits strictly inside
    REPEAT = "repeat"                       # value already handled at an earlier index
    DIGIT_MISMATCH = "digit_mismatch"       # output digit differs at the recorded position
    SUBSET_OF_PIECE = "subset_of_piece"     # enclosure contained in the recorded open piece
    SEPARATION = "separation"               # rational separation bound (Cauchy escape)
    VACUOUS = "vacuous"                     # nothing to exclude at this round


@dataclass(frozen=True)
class Round:
    """One exclusion event.  Fields beyond ``reason`` are reason-specific."""

    reason: ExclusionReason
    index: Optional[int] = None             # enumeration index, when known
    point: Optional[Point] = None           # the excluded value
    witness: Optional[IntervalQ] = None     # interval backing the exclusion
    digit_position: Optional[int] = None    # for digit mismatches
    term_index: Optional[int] = None        # for Cauchy separation records
    order_key: Optional[Tuple[int, int]] = None  # position in enumeration order


@dataclass(frozen=True)
class ExclusionCertificate:
    """Per-round exclusion records plus the final certified enclosure.

    ``claimed_depth`` is the number of leading enumeration indices the
    producer asserts are excluded from the enclosure; the auditor re-checks
    them directly.
    """

    rounds: Tuple[Round, ...]
    enclosure: Optional[IntervalQ] = None
    claimed_depth: Optional[int] = None
    early_termination: bool = False
    witness_point: Optional[Point] = None   # e.g. a perfect-set member in the enclosure
    meta: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class AuditReport:
    ok: bool
    failure: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok


def _fail(msg: str) -> AuditReport:
    return AuditReport(False, msg)


DEFAULT_AUDIT_DEPTH = 256


def audit_certificate(
    result, cert: ExclusionCertificate, adversary, depth: Optional[int] = None,
) -> AuditReport:
    """Re-derive every exclusion from scratch; first failure wins.

    ``adversary`` is the Enumeration the run consumed (or the list of
    CauchyReal inputs for the Cauchy-sequence escape).  ``depth`` caps the
    direct index sweep against the enclosure; by default the producer's
    claim is honored up to DEFAULT_AUDIT_DEPTH indices.
    """
    if isinstance(result, CauchyReal):
        return _audit_cauchy(result, cert, adversary)
    if isinstance(result, DigitStream):
        return _audit_digits(result, cert, adversary)
    return _audit_nested(result, cert, adversary, depth)


def verify_certificate(
    result, cert: ExclusionCertificate, adversary, depth: Optional[int] = None,
) -> bool:
    return audit_certificate(result, cert, adversary, depth).ok


def _audit_nested(result, cert, e, depth: Optional[int] = None) -> AuditReport:
    enclosure = cert.enclosure
    if result is not None:
        chain = result.chain
        for i in range(len(chain) - 1):
            if not chain[i + 1].is_subset_of(chain[i]):
                return _fail("nesting broken at link %d" % (i + 1))
        if enclosure is not None and not enclosure.is_subset_of(chain[-1]):
            return _fail("enclosure escapes the chain")
    for r in cert.rounds:
        rep = _audit_round(r, enclosure, e)
        if rep is not None:
            return rep
    if cert.claimed_depth and e is not None and enclosure is not None:
        sweep = min(cert.claimed_depth, depth or DEFAULT_AUDIT_DEPTH)
        if depth is not None and cert.claimed_depth < depth:
            return _fail(
                "claimed depth %d below the requested sweep %d"
                % (cert.claimed_depth, depth)
            )
        for k in range(1, sweep + 1):
            if enclosure.contains(e.value(k)):
                return _fail(
                    "element %d (%s) lies in the enclosure %s"
                    % (k, format_point(e.value(k)), enclosure)
                )
    return AuditReport(True)


def _audit_round(r: Round, enclosure, e) -> Optional[AuditReport]:
    where = "round %s" % (r.index if r.index is not None else "?")
    if r.reason in (
        ExclusionReason.OUTSIDE_INTERVAL,
        ExclusionReason.ENDPOINT,
        ExclusionReason.REPEAT,
    ):
        if r.witness is not None and r.point is not None:
            if r.witness.contains(r.point):
                return _fail(
                    "%s: %s lies in its witness interval %s"
                    % (where, format_point(r.point), r.witness)
                )
            if enclosure is not None and not enclosure.is_subset_of(r.witness):
                return _fail("%s: witness does not contain the enclosure" % where)
        if enclosure is not None and r.point is not None:
            if enclosure.contains(r.point):
                return _fail(
                    "%s: excluded point %s lies in the enclosure"
                    % (where, format_point(r.point))
                )
    elif r.reason is ExclusionReason.SUBSET_OF_PIECE:
        if enclosure is None or r.witness is None:
            return _fail("%s: piece record without enclosure" % where)
        if not enclosure.is_subset_of(r.witness):
            return _fail("%s: enclosure not inside the recorded piece" % where)
    elif r.reason is ExclusionReason.DIGIT_MISMATCH:
        return _fail("%s: digit record on a non-digit result" % where)
    return None


def _audit_digits(result: DigitStream, cert, e) -> AuditReport:
    for r in cert.rounds:
        if r.reason is ExclusionReason.VACUOUS:
            continue
        if r.reason is not ExclusionReason.DIGIT_MISMATCH:
            return _fail("unexpected %s record on a digit result" % r.reason.value)
        n = r.digit_position
        k = r.index
        if n is None or k is None:
            return _fail("digit record missing positions")
        row = e.stream(k)
        if result.digit(n) == row.digit(n):
            return _fail(
                "round %d: output digit %d equals row digit at position %d"
                % (k, result.digit(n), n)
            )
    return AuditReport(True)


def _audit_cauchy(result: "CauchyReal", cert, inputs) -> AuditReport:
    floor_factor = Fraction(3, 28)
    bvals = result.terms
    for r in cert.rounds:
        if r.reason is not ExclusionReason.SEPARATION:
            return _fail("unexpected %s record on a Cauchy result" % r.reason.value)
        k, n = r.index, r.term_index
        if k is None or n is None or not 1 <= n <= len(bvals):
            return _fail("separation record with bad indices")
        a_kn = inputs[k - 1].term(n)
        sep = abs(bvals[n - 1] - a_kn)
        if not sep > floor_factor * Fraction(1, 8**k):
            return _fail(
                "round k=%d, n=%d: separation %s below the floor"
                % (k, n, format_point(sep))
            )
    return AuditReport(True)


# ---------------------------------------------------------------------------
# shared helpers
# ---------------------------------------------------------------------------


def distance(x: Point, y: Point) -> Point:
    return abs_point(point_sub(x, y))


def _rational_floor_of(x: Point) -> Fraction:
    """A positive rational lower bound of a positive exact value."""
    if not isinstance(x, QuadraticSurd):
        return Fraction(x)
    if x.is_rational:
        return x.as_fraction()
    return rational_between(Fraction(0), x)


def _shrunk_enclosure(iv: IntervalQ) -> IntervalQ:
    """Closed interval strictly inside the interior of ``iv``.

    For rational endpoints: midpoint +- width/4.  For surd endpoints a
    rational sandwich is used instead.
    """
    if isinstance(iv.lo, QuadraticSurd) or isinstance(iv.hi, QuadraticSurd):
        mid = rational_between(iv.lo, iv.hi)
        lo = rational_between(iv.lo, mid)
        hi = rational_between(mid, iv.hi)
        return closed(lo, hi)
    quarter = (Fraction(iv.hi) - Fraction(iv.lo)) / 4
    mid = iv.midpoint()
    return closed(mid - quarter, mid + quarter)


def eta(result: NestedReal) -> Fraction:
    """The reported point: midpoint of the final enclosure."""
    return result.final().midpoint()


# ---------------------------------------------------------------------------
# nested-interval escape over the enumeration's own elements
# ---------------------------------------------------------------------------


def cantor1874(
    e: Enumeration, bounds: IntervalQ, N: int, scan_budget: int = 20000,
) -> Tuple[NestedReal, ExclusionCertificate]:
    """Nested-interval escape: interval endpoints are enumeration elements.

    Scans for the next two elements strictly inside the current open
    interval; the closed interval they bound becomes the next chain link.
    Ends early (flagged) when no further pair exists within the
    enumeration's capacity or the scan budget.
    """
    if compare(bounds.lo, bounds.hi) is not Cmp.LT:
        raise DomainError("degenerate bounds %s" % bounds)
    chain: List[IntervalQ] = [bounds.closure()]
    rounds: List[Round] = []
    current = open_iv(bounds.lo, bounds.hi)
    pending: Optional[Tuple[Optional[int], Point]] = None
    early = False
    claimed: Optional[int] = None

    if e.supports_fast_scan:
        max_key = None
        for _ in range(N):
            h1 = e.first_interior(current)
            h2 = _second_interior(e, current, h1) if h1 else None
            if h1 is None or h2 is None:
                pending = (h1.index, h1.value) if h1 else None
                early = True
                break
            a, b = (h1.value, h2.value) if h1.value < h2.value else (h2.value, h1.value)
            witness = open_iv(a, b)
            for h in (h1, h2):
                rounds.append(Round(
                    ExclusionReason.ENDPOINT, index=h.index, point=h.value,
                    witness=witness, order_key=h.order_key,
                ))
            pair_key = max(h1.order_key, h2.order_key)
            max_key = pair_key if max_key is None else max(max_key, pair_key)
            chain.append(closed(a, b))
            current = witness
        claimed = _fast_claim(e.kind, max_key)
    else:
        limit = e.capacity if e.capacity is not None else scan_budget
        seen = set()
        scanned = 0
        for k in range(1, limit + 1):
            if len(chain) - 1 == N:
                break
            v = e.value(k)
            scanned = k
            try:
                inside = current.contains(v)
            except UnsupportedComparisonError as exc:
                raise UnsupportedComparisonError(
                    "membership of element %d is undecidable: %s" % (k, exc)
                )
            if v in seen:
                # the earlier occurrence already handles this value; it may
                # still sit inside the current interval (pending), so no
                # witness interval is recorded
                rounds.append(Round(ExclusionReason.REPEAT, index=k, point=v))
                continue
            seen.add(v)
            if not inside:
                rounds.append(Round(
                    ExclusionReason.OUTSIDE_INTERVAL, index=k, point=v,
                    witness=current,
                ))
                continue
            if pending is None:
                pending = (k, v)
                continue
            pk, pv = pending
            a, b = (pv, v) if lt(pv, v) else (v, pv)
            witness = open_iv(a, b)
            rounds.append(Round(
                ExclusionReason.ENDPOINT, index=pk, point=pv, witness=witness,
            ))
            rounds.append(Round(
                ExclusionReason.ENDPOINT, index=k, point=v, witness=witness,
            ))
            chain.append(closed(a, b))
            current = witness
            pending = None
        # every scanned index is excluded: skipped, endpoint, repeat, or
        # (for a pending element) handled by the shrink below
        early = len(chain) - 1 < N
        claimed = scanned

    if pending is not None:
        pk, pv = pending
        mid = current.midpoint() if not isinstance(current.lo, QuadraticSurd) \
            and not isinstance(current.hi, QuadraticSurd) \
            else rational_between(current.lo, current.hi)
        left = closed(current.lo, mid)
        right = closed(mid, current.hi)
        half = right if open_iv(left.lo, left.hi).contains(pv) else left
        chain.append(half)
        current = open_iv(half.lo, half.hi)
        rounds.append(Round(
            ExclusionReason.OUTSIDE_INTERVAL, index=pk, point=pv, witness=current,
        ))

    enclosure = _shrunk_enclosure(current)
    chain.append(enclosure)
    cert = ExclusionCertificate(
        rounds=tuple(rounds),
        enclosure=enclosure,
        claimed_depth=claimed,
        early_termination=early,
    )
    return NestedReal(chain), cert


def _fast_claim(kind: EnumKind, max_key) -> int:
    """Lower bound on the indices certainly excluded after a fast-scan run.

    Every element indexed before the last consumed one is excluded, so any
    lower bound on that element's index works.  Rational order keys (q, p)
    have at least q - 1 predecessors; dyadic keys (j, n) have all of the
    shallower levels, 2*(2^(j-1) - 1) entries, before them.
    """
    if max_key is None:
        return 0
    if kind is EnumKind.RATIONALS_01:
        return max(2, max_key[0] - 1)
    return max(2, 2 * (2 ** (max_key[0] - 1) - 1))


def _second_interior(e, current, h1):
    """Next element after ``h1`` inside ``current``: best of the two splits."""
    candidates = []
    if lt(current.lo, h1.value):
        hit = e.first_interior(open_iv(current.lo, h1.value))
        if hit:
            candidates.append(hit)
    if lt(h1.value, current.hi):
        hit = e.first_interior(open_iv(h1.value, current.hi))
        if hit:
            candidates.append(hit)
    if not candidates:
        return None
    return min(candidates, key=lambda h: h.order_key)


# ---------------------------------------------------------------------------
# trisection escape
# ---------------------------------------------------------------------------


def trisect(e: Enumeration, N: int) -> Tuple[NestedReal, ExclusionCertificate]:
    """Thirds-splitting escape on [0,1]: leftmost third avoiding element n."""
    chain = [closed(0, 1)]
    rounds: List[Round] = []
    for n in range(1, N + 1):
        cur = chain[-1]
        lo, hi = Fraction(cur.lo), Fraction(cur.hi)
        step = (hi - lo) / 3
        thirds = [
            closed(lo, lo + step),
            closed(lo + step, lo + 2 * step),
            closed(lo + 2 * step, hi),
        ]
        v = e.value(n)
        try:
            chosen = next(t for t in thirds if not t.contains(v))
        except UnsupportedComparisonError:
            raise UnsupportedComparisonError(
                "element %d is not comparable against rational endpoints" % n
            )
        chain.append(chosen)
        rounds.append(Round(
            ExclusionReason.OUTSIDE_INTERVAL, index=n, point=v, witness=chosen,
        ))
    result = NestedReal(chain, width_schedule=lambda n: Fraction(1, 3 ** (n - 1)))
    cert = ExclusionCertificate(
        rounds=tuple(rounds), enclosure=chain[-1], claimed_depth=N,
    )
    return result, cert


# ---------------------------------------------------------------------------
# digit diagonalization
# ---------------------------------------------------------------------------


def diagonal(
    e: Enumeration, base: int, N: int,
) -> Tuple[DigitStream, ExclusionCertificate]:
    """Digit-by-digit escape: output digit n differs from row n at position n.

    Base 2 flips the diagonal bit and requires a both-representations or
    digit-grid adversary so that stream distinctness implies real
    distinctness; larger bases pick 5 (or 4 when the diagonal digit is 5),
    avoiding 0 and base-1 so the output has a unique expansion.
    """
    if base < 2:
        raise DomainError("base must be >= 2")
    if base == 2 and e.kind not in (EnumKind.DYADICS_BOTH_REPS, EnumKind.DIGIT_GRID):
        raise ConfigurationError(
            "base-2 diagonalization needs a dyadics_both_reps or digit_grid "
            "adversary (dual binary representations)"
        )
    out: List[int] = []
    rounds: List[Round] = []
    for n in range(1, N + 1):
        row = e.stream(n)
        if row.base != base:
            raise ConfigurationError(
                "row %d is base %d, expected %d" % (n, row.base, base)
            )
        d = row.digit(n)
        if base == 2:
            out.append(1 - d)
        else:
            out.append(5 if d != 5 else 4)
        rounds.append(Round(
            ExclusionReason.DIGIT_MISMATCH, index=n, digit_position=n,
        ))
    stream = DigitStream(base, tuple(out), TailConvention.UNNORMALIZED)
    cert = ExclusionCertificate(rounds=tuple(rounds), claimed_depth=N)
    return stream, cert


# ---------------------------------------------------------------------------
# perfect-set escape
# ---------------------------------------------------------------------------


class PerfectKind(enum.Enum):
    UNIT_INTERVAL = "unit_interval"
    CANTOR_MIDDLE_THIRDS = "cantor_middle_thirds"


class PerfectSetOracle:
    """Concrete perfect set: exact membership plus sampling inside intervals."""

    def __init__(self, kind: PerfectKind):
        self.kind = kind

    def member(self, x: Point) -> bool:
        if isinstance(x, QuadraticSurd) and not x.is_rational:
            if self.kind is PerfectKind.UNIT_INTERVAL:
                return x.sign() >= 0 and (x - Fraction(1)).sign() <= 0
            raise DomainError("middle-thirds membership is decided for rationals only")
        x = Fraction(x) if not isinstance(x, QuadraticSurd) else x.as_fraction()
        if not 0 <= x <= 1:
            return False
        if self.kind is PerfectKind.UNIT_INTERVAL:
            return True
        return _in_cantor(x)

    def sample(self, iv: IntervalQ) -> Optional[Fraction]:
        """A point of the set strictly inside the open interior of ``iv``."""
        lo, hi = iv.lo, iv.hi
        if self.kind is PerfectKind.UNIT_INTERVAL:
            a = lo if compare(lo, Fraction(0)) is Cmp.GT else Fraction(0)
            b = hi if compare(hi, Fraction(1)) is Cmp.LT else Fraction(1)
            if compare(a, b) is not Cmp.LT:
                return None
            return rational_between(a, b)
        return _cantor_sample(open_iv(lo, hi) if compare(lo, hi) is Cmp.LT else None)


def _in_cantor(x: Fraction) -> bool:
    """Ternary-digit test: some expansion of x avoids the digit 1."""
    if not 0 <= x <= 1:
        return False
    seen = set()
    r = x
    while True:
        if r in (0, 1):
            return True
        if r in seen:
            return True  # looped without hitting the forbidden band
        seen.add(r)
        t = 3 * r
        if t < 1:
            r = t
        elif t > 2:
            r = t - 2
        elif t == 1 or t == 2:
            return True  # 0 then all 2s / 2 then all 0s
        else:
            return False  # forced middle-third digit


def _cantor_sample(iv: Optional[IntervalQ], max_depth: int = 4096) -> Optional[Fraction]:
    """Left endpoint of a construction-stage interval strictly inside iv.

    Breadth-first over the stage intervals [u, u + 3^-k]: interior stages
    return immediately, so the frontier only ever holds the few stages
    straddling the interval's endpoints.
    """
    if iv is None:
        return None
    frontier = deque([(Fraction(0), 0)])
    while frontier:
        u, k = frontier.popleft()
        width = Fraction(1, 3**k)
        lo, hi = u, u + width
        if not (lt(iv.lo, hi) and lt(lo, iv.hi)):  # no open overlap
            continue
        if lt(iv.lo, lo) and lt(hi, iv.hi):
            return lo  # fully inside: the left endpoint is a set member
        if k >= max_depth:
            return None  # interval too thin around a set point, or disjoint
        child = width / 3
        frontier.append((u, k + 1))
        frontier.append((u + 2 * child, k + 1))
    return None


def unit_interval_oracle() -> PerfectSetOracle:
    return PerfectSetOracle(PerfectKind.UNIT_INTERVAL)


def cantor_oracle() -> PerfectSetOracle:
    return PerfectSetOracle(PerfectKind.CANTOR_MIDDLE_THIRDS)


def perfect_escape(
    P: PerfectSetOracle, e: Enumeration, N: int,
) -> Tuple[NestedReal, ExclusionCertificate]:
    """Ball-shrinking escape inside a perfect set.

    Ball n is centered at a set member, has its closure inside ball n-1,
    and its closure excludes element n.  The final center is a set member
    in the enclosure.
    """
    current = open_iv(0, 1)
    chain: List[IntervalQ] = []
    rounds: List[Round] = []
    center: Optional[Fraction] = None
    for n in range(1, N + 1):
        w = e.value(n)
        center = _sample_avoiding(P, current, w)
        r_edge = min(
            _rational_floor_of(distance(center, current.lo)),
            _rational_floor_of(distance(center, current.hi)),
        )
        r_omega = _rational_floor_of(distance(center, w))
        radius = min(r_edge / 2, r_omega / 2, Fraction(1, 2**n))
        ball = closed(center - radius, center + radius)
        chain.append(ball)
        rounds.append(Round(
            ExclusionReason.OUTSIDE_INTERVAL, index=n, point=w, witness=ball,
        ))
        current = open_iv(ball.lo, ball.hi)
    if not chain:
        raise DomainError("perfect_escape needs N >= 1")
    cert = ExclusionCertificate(
        rounds=tuple(rounds),
        enclosure=chain[-1],
        claimed_depth=N,
        witness_point=center,
    )
    return NestedReal(chain), cert


def _sample_avoiding(P: PerfectSetOracle, iv: IntervalQ, w: Point) -> Fraction:
    c = P.sample(iv)
    if c is None:
        raise OracleViolationError("perfect set empty on %s" % iv, witness=iv)
    if not eq(c, w):
        return c
    # resample on whichever side of w is populated
    for sub in (
        open_iv(w, iv.hi) if compare(w, iv.hi) is Cmp.LT else None,
        open_iv(iv.lo, w) if compare(iv.lo, w) is Cmp.LT else None,
    ):
        if sub is None:
            continue
        c = P.sample(sub)
        if c is not None:
            return c
    raise OracleViolationError(
        "perfect set reduced to a single point on %s" % iv, witness=iv
    )


# ---------------------------------------------------------------------------
# dense-open-set escape
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DenseOpenSet:
    """Finite union of open intervals, promised dense in the ambient interval.

    Overlapping pieces are merged on construction; touching open pieces stay
    separate (their union deliberately omits the shared endpoint).
    """

    pieces: Tuple[IntervalQ, ...]
    dense: bool = True

    def __init__(self, pieces: Sequence[IntervalQ], dense: bool = True):
        merged = _merge_open(pieces)
        object.__setattr__(self, "pieces", tuple(merged))
        object.__setattr__(self, "dense", dense)


def _merge_open(pieces: Sequence[IntervalQ]) -> List[IntervalQ]:
    pieces = list(pieces)
    for p in pieces:
        if p.kind is not IntervalKind.OPEN:
            raise DomainError("dense-set piece must be open: %s" % p)

    def cmp_lo(a, b):
        return compare(a.lo, b.lo).value

    pieces.sort(key=functools.cmp_to_key(cmp_lo))
    out: List[IntervalQ] = []
    for p in pieces:
        if out and compare(p.lo, out[-1].hi) is Cmp.LT:  # strict overlap
            if compare(p.hi, out[-1].hi) is Cmp.GT:
                out[-1] = open_iv(out[-1].lo, p.hi)
        else:
            out.append(p)
    return out


def complement_of_point(x: Point, ambient: IntervalQ = None) -> DenseOpenSet:
    """(0,1) minus a single point, as one or two open pieces."""
    ambient = ambient or open_iv(0, 1)
    pieces = []
    if compare(ambient.lo, x) is Cmp.LT and compare(x, ambient.hi) is Cmp.LT:
        pieces = [open_iv(ambient.lo, x), open_iv(x, ambient.hi)]
    else:
        pieces = [open_iv(ambient.lo, ambient.hi)]
    return DenseOpenSet(pieces)


def _intersect_open(a: IntervalQ, b: IntervalQ) -> Optional[IntervalQ]:
    lo = a.lo if compare(a.lo, b.lo) is Cmp.GT else b.lo
    hi = a.hi if compare(a.hi, b.hi) is Cmp.LT else b.hi
    if compare(lo, hi) is Cmp.LT:
        return open_iv(lo, hi)
    return None


def baire_point(
    G: Sequence[DenseOpenSet], B: IntervalQ, N: int,
) -> Tuple[NestedReal, ExclusionCertificate]:
    """Ball-shrinking into the intersection of finitely many dense open sets.

    Each ball closure sits inside the previous ball and inside a piece of
    the next dense set; radii at least halve, giving a geometric width
    schedule.
    """
    if B.kind is not IntervalKind.OPEN:
        raise DomainError("B must be an open interval")
    if len(G) < N:
        raise DomainError("need at least N dense sets")
    current = B
    chain: List[IntervalQ] = []
    rounds: List[Round] = []
    eps_prev: Optional[Fraction] = None
    first_width: Optional[Fraction] = None
    for n in range(1, N + 1):
        hit = None
        for piece in G[n - 1].pieces:
            inter = _intersect_open(piece, current)
            if inter is not None:
                hit = (piece, inter)
                break
        if hit is None:
            raise DensityViolationError(
                "dense set %d misses the current ball %s" % (n, current), index=n,
            )
        piece, inter = hit
        x = rational_between(inter.lo, inter.hi)
        margin = min(
            _rational_floor_of(distance(x, inter.lo)),
            _rational_floor_of(distance(x, inter.hi)),
        )
        epsilon = margin / 2
        if eps_prev is not None:
            epsilon = min(epsilon, eps_prev / 2)
        ball = closed(x - epsilon, x + epsilon)
        chain.append(ball)
        rounds.append(Round(
            ExclusionReason.SUBSET_OF_PIECE, index=n, witness=piece,
        ))
        current = open_iv(ball.lo, ball.hi)
        eps_prev = epsilon
        if first_width is None:
            first_width = 2 * epsilon
    if not chain:
        raise DomainError("baire_point needs N >= 1")
    w1 = first_width
    result = NestedReal(chain, width_schedule=lambda n: w1 * Fraction(1, 2 ** (n - 1)))
    cert = ExclusionCertificate(
        rounds=tuple(rounds), enclosure=chain[-1], claimed_depth=None,
    )
    return result, cert


# ---------------------------------------------------------------------------
# Cauchy-sequence escape
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CauchyReal:
    """Finite prefix of a rational Cauchy sequence with a declared modulus.

    The modulus promise is |a(m) - a(n)| <= 2^-(3*min(m,n)+2) on all stored
    pairs; :meth:`check_modulus` verifies it exactly.
    """

    terms: Tuple[Fraction, ...]

    def __init__(self, terms: Sequence[Fraction]):
        object.__setattr__(self, "terms", tuple(Fraction(t) for t in terms))

    def __len__(self) -> int:
        return len(self.terms)

    def term(self, n: int) -> Fraction:
        if not 1 <= n <= len(self.terms):
            raise DomainError("term %d of a %d-term prefix" % (n, len(self.terms)))
        return self.terms[n - 1]

    def check_modulus(self, label: str = "input"):
        for m in range(1, len(self.terms) + 1):
            bound = Fraction(1, 2 ** (3 * m + 2))
            for n in range(m + 1, len(self.terms) + 1):
                if abs(self.terms[m - 1] - self.terms[n - 1]) > bound:
                    raise ModulusViolationError(
                        "%s violates its modulus at (m,n)=(%d,%d)" % (label, m, n),
                        pair=(m, n),
                    )


def wenner_escape(
    reals: Sequence[CauchyReal], N: int,
) -> Tuple[CauchyReal, ExclusionCertificate]:
    """Cauchy-sequence escape via the 2^-3k bound ladder.

    Picks strictly increasing anchor indices N_k at which sequence k's
    stored tail oscillates below 2^-(3k+2), then steps b by +-3*2^-(3k+2)
    away from the anchored term: the step stays below 2^-3k while the
    separation from sequence k never falls to (3/28)*2^-3k.
    """
    if len(reals) < N:
        raise DomainError("need at least %d input sequences" % N)
    for i, cr in enumerate(reals, start=1):
        cr.check_modulus("input %d" % i)
    anchors: List[int] = []
    b: List[Fraction] = []
    prev_anchor = 0
    for k in range(1, N + 1):
        cr = reals[k - 1]
        level = Fraction(1, 2 ** (3 * k + 2))
        anchor_idx = None
        for cand in range(prev_anchor + 1, len(cr) + 1):
            ok = all(
                abs(cr.term(m) - cr.term(n)) < level
                for m in range(cand, len(cr) + 1)
                for n in range(m + 1, len(cr) + 1)
            )
            if ok:
                anchor_idx = cand
                break
        if anchor_idx is None:
            raise DomainError(
                "no usable anchor index for input %d above %d" % (k, prev_anchor)
            )
        anchors.append(anchor_idx)
        prev_anchor = anchor_idx
        anchor = cr.term(anchor_idx)
        if k == 1:
            b.append(anchor + Fraction(1, 16))
        else:
            offset = 3 * level
            if b[-1] >= anchor:
                b.append(b[-1] + offset)
            else:
                b.append(b[-1] - offset)
    rounds: List[Round] = []
    for k in range(1, N + 1):
        cr = reals[k - 1]
        for n in range(max(anchors[k - 1], k), min(len(cr), N) + 1):
            rounds.append(Round(
                ExclusionReason.SEPARATION, index=k, term_index=n,
            ))
    result = CauchyReal(b)
    cert = ExclusionCertificate(
        rounds=tuple(rounds),
        claimed_depth=N,
        meta={"anchors": list(anchors)},
    )
    return result, cert
