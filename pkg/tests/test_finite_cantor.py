import itertools
import random
from fractions import Fraction as F

import pytest

from diagonal_forge.core import DigitStream
from diagonal_forge.errors import DomainError, InsufficientDigitsError
from diagonal_forge.finite_cantor import (
    BinaryMatrix,
    FiniteSet,
    cantor_metric,
    diagonal_row,
    powerset_check,
)


class TestPowersetCheck:
    def test_two_element_example(self):
        X = FiniteSet(["a", "b"])
        f = {"a": frozenset("a"), "b": frozenset()}
        assert powerset_check(X, f) == frozenset("b")

    def test_empty_set(self):
        assert powerset_check(FiniteSet([]), {}) == frozenset()

    def test_exhaustive_size_three(self):
        X = FiniteSet(["a", "b", "c"])
        subsets = list(X.subsets())
        for choice in itertools.product(subsets, repeat=3):
            f = dict(zip(X.elements, choice))
            Y = powerset_check(X, f)
            assert all(frozenset(f[x]) != Y for x in X.elements)

    def test_partial_function_rejected(self):
        with pytest.raises(DomainError):
            powerset_check(FiniteSet(["a"]), {})

    def test_out_of_universe_value_rejected(self):
        with pytest.raises(DomainError):
            powerset_check(FiniteSet(["a"]), {"a": frozenset("z")})


class TestDiagonalRow:
    def test_identity(self):
        M = BinaryMatrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        assert diagonal_row(M) == (0, 0, 0)

    def test_all_zeros(self):
        M = BinaryMatrix([[0] * 4] * 4)
        assert diagonal_row(M) == (1, 1, 1, 1)

    def test_planted_candidate_still_differs(self):
        # row 1 equals the output everywhere except, necessarily, column 1
        M = BinaryMatrix([[1, 1], [0, 0]])
        b = diagonal_row(M)
        assert b == (0, 1)
        assert b[0] != M.rows[0][0]

    def test_exhaustive_small(self):
        for k in (1, 2, 3):
            for bits in itertools.product((0, 1), repeat=k * k):
                M = BinaryMatrix(
                    [bits[i * k:(i + 1) * k] for i in range(k)]
                )
                b = diagonal_row(M)
                for i in range(k):
                    assert b[i] != M.rows[i][i]

    def test_random_large(self):
        rng = random.Random(1)
        for _ in range(200):
            k = rng.randrange(4, 13)
            M = BinaryMatrix(
                [[rng.randrange(2) for _ in range(k)] for _ in range(k)]
            )
            b = diagonal_row(M)
            assert all(b[i] != M.rows[i][i] for i in range(k))

    def test_non_square_rejected(self):
        with pytest.raises(DomainError):
            BinaryMatrix([[0, 1]])


def _s(bits):
    return DigitStream(2, tuple(bits))


class TestCantorMetric:
    def test_first_disagreement(self):
        assert cantor_metric(_s([0, 0, 0]), _s([0, 0, 1])) == F(1, 8)
        assert cantor_metric(_s([1, 0]), _s([0, 0])) == F(1, 2)

    def test_self_distance_zero(self):
        x = _s([0, 1, 1, 0])
        assert cantor_metric(x, x) == 0

    def test_unequal_lengths_without_disagreement(self):
        with pytest.raises(InsufficientDigitsError):
            cantor_metric(_s([0, 1]), _s([0, 1, 1]))

    def test_base_checked(self):
        with pytest.raises(DomainError):
            cantor_metric(DigitStream(10, (1,)), _s([1]))

    def test_ultrametric_exhaustive_length_five(self):
        streams = [
            _s(bits) for bits in itertools.product((0, 1), repeat=5)
        ]
        for x, y, z in itertools.product(streams, repeat=3):
            dxz = cantor_metric(x, z)
            assert dxz <= max(cantor_metric(x, y), cantor_metric(y, z))

    def test_ultrametric_random_length_ten(self):
        rng = random.Random(6)
        for _ in range(2000):
            x, y, z = (
                _s([rng.randrange(2) for _ in range(10)]) for _ in range(3)
            )
            assert cantor_metric(x, z) <= max(
                cantor_metric(x, y), cantor_metric(y, z)
            )
