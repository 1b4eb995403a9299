"""Covers and measure: greedy finite subcovers, nested-set witnesses,
measure-zero covers with exact length accounting, and a desk-scale
mass-concentration locator.

All interval endpoints and lengths are exact rationals (or quadratic
surds); every inequality checked here is an exact comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .core import (
    Cmp,
    IntervalKind,
    IntervalQ,
    Point,
    closed,
    compare,
    lt,
    open_iv,
)
from .enumerations import Enumeration
from .errors import DomainError, NestingError, NotACoverError


@dataclass(frozen=True)
class Cover:
    """A closed target interval and an ordered list of open pieces.

    Piece order is semantically load-bearing (the greedy scan prefers
    earlier indices); no sorting or merging happens here.
    """

    target: IntervalQ
    pieces: Tuple[IntervalQ, ...]

    def __init__(self, target: IntervalQ, pieces: Sequence[IntervalQ]):
        if target.kind is not IntervalKind.CLOSED:
            raise DomainError("cover target must be a closed interval")
        pieces = tuple(pieces)
        for p in pieces:
            if p.kind is not IntervalKind.OPEN:
                raise DomainError("cover pieces must be open intervals: %s" % p)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "pieces", pieces)


@dataclass(frozen=True)
class LengthLedger:
    """Per-piece lengths and their exact total."""

    terms: Tuple[Tuple[int, Fraction], ...]
    total: Fraction

    def __init__(self, terms: Sequence[Tuple[int, Fraction]]):
        terms = tuple((j, Fraction(w)) for j, w in terms)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "total", sum((w for _, w in terms), Fraction(0)))


def heine_borel_subcover(c: Cover) -> List[int]:
    """Greedy finite subcover: 1-based indices, first-eligible-index rule.

    The frontier starts at target.lo; each step picks the first piece
    containing the frontier and advances the frontier to that piece's right
    endpoint, stopping once it passes target.hi.
    """
    frontier: Point = c.target.lo
    chosen: List[int] = []
    while True:
        pick = None
        for j, piece in enumerate(c.pieces, start=1):
            if piece.contains(frontier):
                pick = j
                break
        if pick is None:
            raise NotACoverError(
                "no piece contains the frontier point", witness=frontier
            )
        chosen.append(pick)
        frontier = c.pieces[pick - 1].hi
        if compare(frontier, c.target.hi) is Cmp.GT:
            return chosen


def check_subcover(c: Cover, indices: Sequence[int]) -> bool:
    """Independent audit of a claimed greedy subcover.

    Checks the exact endpoint chain (each piece contains the previous
    frontier, the last one passes target.hi) and that each index is the
    minimum eligible at its step.
    """
    frontier: Point = c.target.lo
    for step, j in enumerate(indices):
        if not 1 <= j <= len(c.pieces):
            return False
        piece = c.pieces[j - 1]
        if not piece.contains(frontier):
            return False
        for earlier in range(1, j):
            if c.pieces[earlier - 1].contains(frontier):
                return False  # not the first eligible index
        frontier = piece.hi
        done = compare(frontier, c.target.hi) is Cmp.GT
        if done != (step == len(indices) - 1):
            return False  # stopped early or ran long
    return compare(frontier, c.target.hi) is Cmp.GT


def nested_witness(chain: Sequence[IntervalQ]) -> Point:
    """A point in every interval of a verified nested chain.

    Returns the maximum of the left endpoints, which for a nested chain is
    the last interval's left endpoint.
    """
    if not chain:
        raise DomainError("empty chain has no witness")
    for iv in chain:
        if iv.kind is not IntervalKind.CLOSED:
            raise DomainError("nested chains use closed intervals: %s" % iv)
    for i in range(len(chain) - 1):
        if not chain[i + 1].is_subset_of(chain[i]):
            raise NestingError(
                "chain breaks at link %d: %s is not inside %s"
                % (i + 1, chain[i + 1], chain[i]),
                link=i + 1,
            )
    best = chain[0].lo
    for iv in chain[1:]:
        if compare(iv.lo, best) is Cmp.GT:
            best = iv.lo
    return best


def measure_zero_cover(
    e: Enumeration, epsilon: Fraction, N: int,
) -> Tuple[Cover, LengthLedger]:
    """Cover the first N listed points by intervals of total length below epsilon.

    Piece j is the open interval of width epsilon/2^(j+1) centered at the
    j-th element; the ledger total is exactly epsilon*(1 - 2^-N)/2.
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise DomainError("epsilon must be positive")
    pieces = []
    terms = []
    for j in range(1, N + 1):
        x = e.value(j)
        r = epsilon / 2 ** (j + 2)
        pieces.append(open_iv(x - r, x + r))
        terms.append((j, epsilon / 2 ** (j + 1)))
    return Cover(closed(0, 1), pieces), LengthLedger(terms)


def cover_length_lower_bound(c: Cover) -> Tuple[List[int], Fraction]:
    """Exact total length of a greedy subcover chain; exceeds |target|.

    The chain extracted by the greedy scan telescopes past both target
    endpoints, so the summed piece lengths strictly exceed the target's
    length; a non-cover propagates its witness error.
    """
    indices = heine_borel_subcover(c)
    bound = Fraction(0)
    for j in indices:
        piece = c.pieces[j - 1]
        bound += Fraction(piece.hi) - Fraction(piece.lo)
    return indices, bound


@dataclass(frozen=True)
class BWResult:
    """Bisection locator output; ``warning`` flags depth beyond what M terms
    can resolve (2^depth > M), where majority counts stop being meaningful."""

    interval: IntervalQ
    warning: bool


def bw_locate(
    seq: Sequence[Fraction], M: int, depth: int, bounds: IntervalQ = None,
) -> BWResult:
    """Repeated bisection toward mass concentration of the first M terms.

    Keeps the closed half holding at least half of the counted terms
    (tie -> left).  This is accumulation-point heuristics, not a
    convergence proof: the finite shadow of the subsequence theorem.
    """
    bounds = bounds if bounds is not None else closed(0, 1)
    if M < 1 or M > len(seq):
        raise DomainError("M must address stored terms, got %d of %d" % (M, len(seq)))
    terms = [Fraction(t) for t in seq[:M]]
    for t in terms:
        if not bounds.contains(t):
            raise DomainError("term %s outside declared bounds %s" % (t, bounds))
    cur = bounds
    for _ in range(depth):
        mid = cur.midpoint()
        left = closed(cur.lo, mid)
        right = closed(mid, cur.hi)
        in_left = sum(1 for t in terms if left.contains(t))
        in_right = sum(1 for t in terms if right.contains(t))
        cur = left if in_left >= in_right else right
        terms = [t for t in terms if cur.contains(t)]
    return BWResult(cur, warning=2**depth > M)
