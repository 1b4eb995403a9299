import random
from fractions import Fraction as F

import pytest

from diagonal_forge.core import QuadraticSurd, closed, open_iv
from diagonal_forge.covers import (
    BWResult,
    Cover,
    LengthLedger,
    bw_locate,
    check_subcover,
    cover_length_lower_bound,
    heine_borel_subcover,
    measure_zero_cover,
    nested_witness,
)
from diagonal_forge.enumerations import (
    from_values,
    rationals_enumeration,
    surds_enumeration,
)
from diagonal_forge.errors import DomainError, NestingError, NotACoverError


def _cover(target, pieces):
    return Cover(closed(*target), [open_iv(F(a), F(b)) for a, b in pieces])


class TestHeineBorel:
    def test_two_piece_chain(self):
        c = _cover((0, 1), [(F(-1, 10), F(6, 10)), (F(4, 10), F(11, 10))])
        idx = heine_borel_subcover(c)
        assert idx == [1, 2]
        assert check_subcover(c, idx)

    def test_index_order_beats_geometry(self):
        c = _cover((0, 1), [
            (F(-1, 10), F(6, 10)), (F(1, 2), F(11, 10)), (F(4, 10), F(11, 10)),
        ])
        assert heine_borel_subcover(c) == [1, 2]

    def test_uncovered_point_witness(self):
        c = _cover((0, 1), [(F(-1, 10), F(1, 2)), (F(1, 2), F(11, 10))])
        with pytest.raises(NotACoverError) as exc:
            heine_borel_subcover(c)
        assert exc.value.witness == F(1, 2)

    def test_random_covers_verify(self):
        rng = random.Random(11)
        for _ in range(50):
            cuts = sorted(
                {F(rng.randrange(1, 200), 200) for _ in range(rng.randrange(1, 12))}
            )
            points = [F(0)] + cuts + [F(1)]
            delta = F(1, 1000)
            pieces = [
                (points[i] - delta, points[i + 1] + delta)
                for i in range(len(points) - 1)
            ]
            rng.shuffle(pieces)
            c = _cover((0, 1), pieces)
            idx = heine_borel_subcover(c)
            assert check_subcover(c, idx)
            # each chosen index used once; frontier chain strictly increases
            assert len(set(idx)) == len(idx)

    def test_random_non_covers_give_witness(self):
        rng = random.Random(12)
        for _ in range(50):
            gap_lo = F(rng.randrange(10, 180), 200)
            gap_hi = gap_lo + F(rng.randrange(1, 10), 200)
            pieces = [(F(-1, 100), gap_lo), (gap_hi, F(101, 100))]
            rng.shuffle(pieces)
            c = _cover((0, 1), pieces)
            with pytest.raises(NotACoverError) as exc:
                heine_borel_subcover(c)
            w = exc.value.witness
            assert closed(0, 1).contains(w)
            assert not any(p.contains(w) for p in c.pieces)

    def test_audit_rejects_padded_or_shuffled_lists(self):
        c = _cover((0, 1), [(F(-1, 10), F(6, 10)), (F(4, 10), F(11, 10))])
        assert not check_subcover(c, [2, 1])
        assert not check_subcover(c, [1, 2, 2])
        assert not check_subcover(c, [1])

    def test_non_open_piece_rejected(self):
        with pytest.raises(DomainError):
            Cover(closed(0, 1), [closed(0, 1)])


class TestNestedWitness:
    def test_max_of_left_endpoints(self):
        chain = [closed(0, 1), closed(F(1, 4), F(3, 4)), closed(F(1, 2), F(3, 4))]
        assert nested_witness(chain) == F(1, 2)

    def test_single_interval(self):
        assert nested_witness([closed(0, 1)]) == 0

    def test_disjoint_names_the_link(self):
        with pytest.raises(NestingError) as exc:
            nested_witness([closed(0, 1), closed(2, 3)])
        assert exc.value.link == 1

    def test_witness_lies_in_every_interval(self):
        chain = [closed(0, 1), closed(F(1, 8), F(7, 8)), closed(F(1, 3), F(1, 2))]
        w = nested_witness(chain)
        assert all(iv.contains(w) for iv in chain)


class TestMeasureZeroCover:
    def test_total_epsilon_one_n_three(self):
        e = rationals_enumeration()
        cover, ledger = measure_zero_cover(e, F(1), 3)
        assert ledger.total == F(7, 16)  # 1/4 + 1/8 + 1/16

    def test_first_width(self):
        e = rationals_enumeration()
        cover, ledger = measure_zero_cover(e, F(1), 1)
        assert ledger.terms == ((1, F(1, 4)),)
        assert cover.pieces[0].width() == F(1, 4)

    def test_closed_form_total(self):
        e = rationals_enumeration()
        for eps in (F(1), F(1, 2), F(1, 7), F(2)):
            for N in (1, 5, 64):
                _, ledger = measure_zero_cover(e, eps, N)
                assert ledger.total == eps * (1 - F(1, 2**N)) / 2
                assert ledger.total < eps

    def test_each_point_is_covered(self):
        e = rationals_enumeration()
        cover, _ = measure_zero_cover(e, F(1, 7), 16)
        for j in range(1, 17):
            assert cover.pieces[j - 1].contains(e.value(j))

    def test_surd_centers(self):
        e = surds_enumeration()
        cover, ledger = measure_zero_cover(e, F(1, 2), 8)
        for j in range(1, 9):
            assert cover.pieces[j - 1].contains(e.value(j))
        assert ledger.total < F(1, 2)

    def test_epsilon_positive(self):
        with pytest.raises(DomainError):
            measure_zero_cover(rationals_enumeration(), F(0), 1)


class TestLowerBound:
    def test_two_piece_bound(self):
        c = _cover((0, 1), [(F(-1, 10), F(6, 10)), (F(4, 10), F(11, 10))])
        idx, bound = cover_length_lower_bound(c)
        assert bound == F(7, 5) and bound > 1

    def test_single_piece(self):
        c = _cover((0, 1), [(F(-1, 10), F(11, 10))])
        idx, bound = cover_length_lower_bound(c)
        assert idx == [1] and bound == F(6, 5)

    def test_duality_with_measure_zero_cover(self):
        # the epsilon=1/2 cover of the rationals cannot cover [0,1]
        cover, ledger = measure_zero_cover(rationals_enumeration(), F(1, 2), 64)
        assert ledger.total < 1
        with pytest.raises(NotACoverError):
            cover_length_lower_bound(cover)


class TestBWLocate:
    def test_constant_sequence(self):
        res = bw_locate([F(1, 3)] * 100, 100, 5)
        assert res.interval.contains(F(1, 3))
        assert res.interval.width() == F(1, 32)
        assert not res.warning

    def test_alternating_tie_goes_left(self):
        seq = [F(i % 2) for i in range(100)]
        res = bw_locate(seq, 100, 1)
        assert res.interval == closed(0, F(1, 2))

    def test_harmonic_concentrates_at_zero(self):
        seq = [F(1, k) for k in range(1, 1001)]
        res = bw_locate(seq, 1000, 6)
        assert res.interval.contains(F(0))

    def test_warning_flag(self):
        assert bw_locate([F(1, 2)] * 4, 4, 3).warning
        assert not bw_locate([F(1, 2)] * 8, 8, 3).warning

    def test_out_of_bounds_term(self):
        with pytest.raises(DomainError):
            bw_locate([F(2)], 1, 1)
