"""Finite brute-force oracles: power-set diagonal, diagonal rows, and the
prefix ultrametric on binary streams."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Sequence, Tuple

from .core import DigitStream
from .errors import DomainError, InsufficientDigitsError


@dataclass(frozen=True)
class FiniteSet:
    """Small ground set with a stable element order for subset enumeration."""

    elements: Tuple[str, ...]

    def __init__(self, elements: Sequence[str]):
        elements = tuple(elements)
        if len(set(elements)) != len(elements):
            raise DomainError("elements must be distinct")
        if len(elements) > 12:
            raise DomainError("ground set capped at 12 elements")
        object.__setattr__(self, "elements", elements)

    def __len__(self) -> int:
        return len(self.elements)

    def subsets(self):
        """All subsets in element-order binary counting order."""
        n = len(self.elements)
        for mask in range(1 << n):
            yield frozenset(
                e for i, e in enumerate(self.elements) if mask >> i & 1
            )


def powerset_check(X: FiniteSet, f: Dict[str, FrozenSet[str]]) -> FrozenSet[str]:
    """The diagonal subset Y = {x : x not in f(x)}, verified preimage-free.

    Returns Y as the explicit witness that f misses some subset.
    """
    ground = set(X.elements)
    for x in X.elements:
        if x not in f:
            raise DomainError("f is not total: missing %r" % x)
        if not set(f[x]) <= ground:
            raise DomainError("f(%r) leaves the power set" % x)
    Y = frozenset(x for x in X.elements if x not in f[x])
    for x in X.elements:
        if frozenset(f[x]) == Y:  # impossible: x in Y iff x not in f(x)
            raise DomainError("diagonal witness has a preimage at %r" % x)
    return Y


@dataclass(frozen=True)
class BinaryMatrix:
    """Square 0/1 matrix: a finite truncation of a row-listing of streams."""

    rows: Tuple[Tuple[int, ...], ...]

    def __init__(self, rows: Sequence[Sequence[int]]):
        rows = tuple(tuple(r) for r in rows)
        k = len(rows)
        for r in rows:
            if len(r) != k:
                raise DomainError("matrix must be square")
            if any(v not in (0, 1) for v in r):
                raise DomainError("entries must be 0 or 1")
        object.__setattr__(self, "rows", rows)

    def __len__(self) -> int:
        return len(self.rows)


def diagonal_row(M: BinaryMatrix) -> Tuple[int, ...]:
    """b(i) = 1 - M[i][i]; differs from row i at column i by construction."""
    b = tuple(1 - M.rows[i][i] for i in range(len(M)))
    for i in range(len(M)):
        if b[i] == M.rows[i][i]:
            raise DomainError("postcondition failed at row %d" % i)
    return b


def cantor_metric(x: DigitStream, y: DigitStream) -> Fraction:
    """d(x, y) = 2^-I with I the first disagreement index; d(x, x) = 0.

    Prefixes that agree throughout must have equal length, otherwise the
    comparison is undetermined.
    """
    if x.base != 2 or y.base != 2:
        raise DomainError("cantor metric is defined on base-2 streams")
    for i, (dx, dy) in enumerate(zip(x.digits, y.digits), start=1):
        if dx != dy:
            return Fraction(1, 2**i)
    if len(x.digits) != len(y.digits):
        raise InsufficientDigitsError(
            "prefixes agree but lengths differ (%d vs %d)"
            % (len(x.digits), len(y.digits)),
            position=min(len(x.digits), len(y.digits)) + 1,
        )
    return Fraction(0)
