"""Turn-validated interval and digit games with certified Bob strategies.

Alice tries to steer play toward the target list; strategy Bob answers so
that every completed round excludes one listed element, exactly.  Each
game keeps a canonical move log so sessions can be replayed verbatim.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Tuple, Union

from .core import (
    Cmp,
    DigitStream,
    IntervalQ,
    NestedReal,
    TailConvention,
    closed,
    compare,
    format_rational,
    open_iv,
    parse_rational,
    rational_between,
)
from .constructors import (
    ExclusionCertificate,
    ExclusionReason,
    Round,
    _shrunk_enclosure,
)
from .enumerations import Enumeration, EnumKind
from .errors import (
    ConfigurationError,
    DomainError,
    IllegalMoveError,
    TurnError,
)


class GameStatus(enum.Enum):
    AWAITING_ALICE = "awaiting_alice"
    AWAITING_BOB = "awaiting_bob"
    CLOSED = "closed"


class GameKind(enum.Enum):
    INTERVAL = "interval"
    DIAGONAL = "diagonal"


def _capacity_reached(e: Enumeration, n: int) -> bool:
    return e.capacity is not None and n > e.capacity


@dataclass
class IntervalGameState:
    """Alternating rational picks a_1 < a_2 < ... < b_2 < b_1 inside (0,1)."""

    target: Enumeration
    bob_mode: str = "strategy"
    a: List[Fraction] = field(default_factory=list)
    b: List[Fraction] = field(default_factory=list)
    status: GameStatus = GameStatus.AWAITING_ALICE
    vacuous: List[int] = field(default_factory=list)
    moves: List[Tuple[str, str]] = field(default_factory=list)

    kind = GameKind.INTERVAL

    @property
    def round(self) -> int:
        """1-based round currently in play (or next to start)."""
        return len(self.a) + (0 if self.status is GameStatus.AWAITING_BOB else 1)

    def allowed_alice(self) -> IntervalQ:
        lo = self.a[-1] if self.a else Fraction(0)
        hi = self.b[-1] if self.b else Fraction(1)
        return open_iv(lo, hi)

    def allowed_bob(self) -> IntervalQ:
        lo = self.a[-1]
        hi = self.b[-1] if self.b else Fraction(1)
        return open_iv(lo, hi)

    def close(self):
        self.status = GameStatus.CLOSED


@dataclass
class DiagonalGameState:
    """Alternating digit picks; the derived digits z_n = (a_n + b_n) mod 10."""

    target: Enumeration
    bob_mode: str = "strategy"
    a_digits: List[int] = field(default_factory=list)
    b_digits: List[int] = field(default_factory=list)
    z_digits: List[int] = field(default_factory=list)
    status: GameStatus = GameStatus.AWAITING_ALICE
    vacuous: List[int] = field(default_factory=list)
    moves: List[Tuple[str, str]] = field(default_factory=list)

    kind = GameKind.DIAGONAL

    @property
    def round(self) -> int:
        return len(self.z_digits) + 1

    def close(self):
        self.status = GameStatus.CLOSED


GameState = Union[IntervalGameState, DiagonalGameState]


def new_game(
    kind: GameKind, S: Enumeration, bob: str = "strategy", alice: str = "human",
) -> GameState:
    """Initialized game awaiting Alice; kind and enumeration must agree."""
    if bob not in ("strategy", "human"):
        raise ConfigurationError("bob must be 'strategy' or 'human'")
    if kind is GameKind.INTERVAL:
        if S.kind is EnumKind.DIGIT_GRID:
            raise ConfigurationError(
                "interval game needs point values, not a digit grid"
            )
        return IntervalGameState(target=S, bob_mode=bob)
    if kind is GameKind.DIAGONAL:
        if not S.is_digit_kind:
            raise ConfigurationError(
                "diagonal game needs a digit-stream enumeration"
            )
        return DiagonalGameState(target=S, bob_mode=bob)
    raise ConfigurationError("unknown game kind %r" % kind)


# ---------------------------------------------------------------------------
# moves
# ---------------------------------------------------------------------------


def alice_move(g: GameState, value) -> GameState:
    if g.status is not GameStatus.AWAITING_ALICE:
        raise TurnError("not Alice's turn (status %s)" % g.status.value)
    if g.kind is GameKind.INTERVAL:
        value = Fraction(value)
        allowed = g.allowed_alice()
        if not allowed.contains(value):
            raise IllegalMoveError(
                "a_%d = %s violates a_%d in %s"
                % (g.round, format_rational(value), g.round, allowed)
            )
        g.a.append(value)
        g.moves.append(("alice", format_rational(value)))
    else:
        value = _check_digit(value, "a_%d" % g.round)
        g.a_digits.append(value)
        g.moves.append(("alice", str(value)))
    g.status = GameStatus.AWAITING_BOB
    return g


def bob_move(g: GameState, value=None) -> GameState:
    """Apply Bob's move; in strategy mode the value is computed, not supplied."""
    if g.status is not GameStatus.AWAITING_BOB:
        raise TurnError("not Bob's turn (status %s)" % g.status.value)
    if value is None:
        if g.bob_mode != "strategy":
            raise IllegalMoveError("human Bob must supply a value")
        value = (
            bob_strategy_interval(g)
            if g.kind is GameKind.INTERVAL
            else bob_strategy_diagonal(g)
        )
    if g.kind is GameKind.INTERVAL:
        value = Fraction(value)
        allowed = g.allowed_bob()
        if not allowed.contains(value):
            raise IllegalMoveError(
                "b_%d = %s violates b_%d in %s"
                % (len(g.a), format_rational(value), len(g.a), allowed)
            )
        g.b.append(value)
        g.moves.append(("bob", format_rational(value)))
    else:
        value = _check_digit(value, "b_%d" % g.round)
        g.b_digits.append(value)
        g.z_digits.append((g.a_digits[-1] + value) % 10)
        g.moves.append(("bob", str(value)))
    g.status = GameStatus.AWAITING_ALICE
    return g


def _check_digit(value, label: str) -> int:
    value = int(value)
    if not 0 <= value <= 9:
        raise IllegalMoveError("%s = %d violates %s in 0..9" % (label, value, label))
    return value


# ---------------------------------------------------------------------------
# Bob's winning strategies
# ---------------------------------------------------------------------------


def bob_strategy_interval(g: IntervalGameState) -> Fraction:
    """b_n = s_n when s_n sits in (a_n, b_{n-1}), else that interval's midpoint.

    Either way s_n lands outside the round's open interval (a_n, b_n).  An
    irrational s_n inside the window is fenced off by a rational strictly
    between a_n and s_n; an exhausted list makes the round vacuous.
    """
    n = len(g.a)
    allowed = g.allowed_bob()
    if _capacity_reached(g.target, n):
        g.vacuous.append(n)
        return allowed.midpoint()
    s = g.target.value(n)
    if not allowed.contains(s):
        return allowed.midpoint()
    if isinstance(s, Fraction):
        return s
    return rational_between(allowed.lo, s)


def bob_strategy_diagonal(g: DiagonalGameState) -> int:
    """Pick b_n so that z_n = (s_nn + 1) mod 10, or +2 when that lands on 0.

    Guarantees z_n differs from the n-th stream's n-th digit and never
    emits 0; past the list's capacity the round is vacuous and z_n = 1.
    """
    n = g.round
    a_n = g.a_digits[-1]
    if _capacity_reached(g.target, n):
        g.vacuous.append(n)
        z = 1
    else:
        s_nn = g.target.stream(n).digit(n)
        z = (s_nn + 1) % 10
        if z == 0:
            z = (s_nn + 2) % 10
    return (z - a_n) % 10


# ---------------------------------------------------------------------------
# Alice policies
# ---------------------------------------------------------------------------


def alice_policy(
    name: str, *, target: Optional[Fraction] = None, seed: Optional[int] = None,
) -> Callable[[GameState], object]:
    """Scripted Alice: 'midpoint', 'greedy' (toward a target), or 'random'."""
    if name == "midpoint":
        def policy(g):
            if g.kind is GameKind.INTERVAL:
                return g.allowed_alice().midpoint()
            return 5
        return policy
    if name == "greedy":
        if target is None:
            raise ConfigurationError("greedy Alice needs a target")
        t = Fraction(target)
        def policy(g):
            if g.kind is GameKind.INTERVAL:
                allowed = g.allowed_alice()
                step = (Fraction(allowed.lo) + t) / 2
                return step if allowed.contains(step) else allowed.midpoint()
            return int(9 * t) % 10
        return policy
    if name == "random":
        rng = random.Random(seed)
        def policy(g):
            if g.kind is GameKind.INTERVAL:
                allowed = g.allowed_alice()
                lo, hi = Fraction(allowed.lo), Fraction(allowed.hi)
                return lo + (hi - lo) * Fraction(rng.randrange(1, 2**16), 2**16)
            return rng.randrange(0, 10)
        return policy
    raise ConfigurationError("unknown Alice policy %r" % name)


def run_game(g: GameState, rounds: int, alice: Callable[[GameState], object]) -> GameState:
    """Drive ``rounds`` full rounds of scripted Alice against (strategy) Bob."""
    for _ in range(rounds):
        alice_move(g, alice(g))
        bob_move(g)
    g.close()
    return g


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------


def round_certificate(g: GameState) -> ExclusionCertificate:
    """Per-round exclusion records for the completed rounds, as claims.

    Rounds are recorded from play as-is; the audit path re-derives each
    exclusion, so a badly played (human) round shows up as a verification
    failure, never as a silent omission.
    """
    if g.kind is GameKind.INTERVAL:
        return _interval_certificate(g)
    return _diagonal_certificate(g)


def _interval_certificate(g: IntervalGameState) -> ExclusionCertificate:
    n = len(g.b)
    rounds = []
    excluded = 0
    for k in range(1, n + 1):
        if k in g.vacuous or _capacity_reached(g.target, k):
            rounds.append(Round(ExclusionReason.VACUOUS, index=k))
            continue
        rounds.append(Round(
            ExclusionReason.OUTSIDE_INTERVAL,
            index=k,
            point=g.target.value(k),
            witness=open_iv(g.a[k - 1], g.b[k - 1]),
        ))
        excluded = k
    enclosure = (
        _shrunk_enclosure(open_iv(g.a[n - 1], g.b[n - 1])) if n else None
    )
    return ExclusionCertificate(
        rounds=tuple(rounds), enclosure=enclosure, claimed_depth=excluded,
    )


def _diagonal_certificate(g: DiagonalGameState) -> ExclusionCertificate:
    rounds = []
    for k in range(1, len(g.z_digits) + 1):
        if k in g.vacuous or _capacity_reached(g.target, k):
            rounds.append(Round(ExclusionReason.VACUOUS, index=k))
        else:
            rounds.append(Round(
                ExclusionReason.DIGIT_MISMATCH, index=k, digit_position=k,
            ))
    return ExclusionCertificate(rounds=tuple(rounds), claimed_depth=len(rounds))


def game_result(g: GameState):
    """The played object the certificate talks about.

    Interval games yield the nested chain of closed round intervals plus the
    shrunken final enclosure; diagonal games yield the z-digit stream.
    """
    if g.kind is GameKind.INTERVAL:
        if not g.b:
            raise DomainError("no completed rounds")
        chain = [closed(g.a[k], g.b[k]) for k in range(len(g.b))]
        chain.append(_shrunk_enclosure(open_iv(g.a[len(g.b) - 1], g.b[-1])))
        return NestedReal(chain)
    if not g.z_digits:
        raise DomainError("no completed rounds")
    return DigitStream(10, tuple(g.z_digits), TailConvention.UNNORMALIZED)
