import pytest

from qtshuffle.qtfield import Q, QTR_ONE, QTR_ZERO, T, frobenius_scale
from qtshuffle.shapes import (
    capital_m,
    cell_stats,
    compositions_of,
    conjugate,
    corners,
    dominance_leq,
    enumerate_shapes,
    parse_composition,
    parse_partition,
    partition_invariants,
    partition_str,
    partitions_of,
    composition_str,
    remove_part,
    zmu,
)

M = capital_m()


def test_enumerate_counts():
    assert len(partitions_of(4)) == 5
    assert len(compositions_of(3)) == 4
    assert compositions_of(0) == ((),)
    assert compositions_of(-1) == ()
    assert enumerate_shapes(4, "partitions") == partitions_of(4)
    assert enumerate_shapes(3, "compositions") == compositions_of(3)
    with pytest.raises(ValueError):
        enumerate_shapes(3, "widgets")


def test_enumeration_is_sorted_and_duplicate_free():
    for n in range(8):
        parts = partitions_of(n)
        assert len(set(parts)) == len(parts)
        assert all(sum(p) == n for p in parts)
        comps = compositions_of(n)
        assert len(set(comps)) == len(comps)
        assert list(comps) == sorted(comps)
        if n >= 1:
            assert len(comps) == 2 ** (n - 1)


def test_conjugate_involution():
    for n in range(8):
        for mu in partitions_of(n):
            assert conjugate(conjugate(mu)) == mu


@pytest.mark.parametrize(
    "cell,expected",
    [((0, 0), (2, 1, 0, 0)), ((1, 0), (1, 1, 1, 0)), ((2, 0), (0, 0, 2, 0))],
)
def test_cell_stats_32(cell, expected):
    assert cell_stats((3, 2), cell) == expected


def test_cell_stats_outside_raises():
    with pytest.raises(ValueError):
        cell_stats((3, 2), (2, 1))


def test_invariants_single_cell():
    inv = partition_invariants((1,))
    assert inv.w == M
    assert inv.T == QTR_ONE
    assert inv.B == QTR_ONE
    assert inv.Pi == QTR_ONE


def test_invariants_21():
    inv = partition_invariants((2, 1))
    assert inv.T == Q * T
    assert inv.B == 1 + Q + T
    assert inv.Pi == (1 - Q) * (1 - T)


def test_invariants_row2():
    inv = partition_invariants((2,))
    assert inv.T == Q
    assert inv.B == 1 + Q
    assert inv.nmu == 0
    assert inv.nmu_conj == 1


def test_invariants_empty():
    inv = partition_invariants(())
    assert inv.B == QTR_ZERO
    assert inv.Pi == QTR_ONE
    assert inv.T == QTR_ONE
    assert inv.w == QTR_ONE
    assert inv.D == -QTR_ONE


def test_d_is_mb_minus_one():
    for n in range(7):
        for mu in partitions_of(n):
            inv = partition_invariants(mu)
            assert inv.D == M * inv.B - 1


def test_corners_examples():
    assert corners((2, 1))[0] == ((1, 1), (2,))
    assert corners((1,))[1] == ((2,), (1, 1))
    assert corners(()) == ((), ((1,),))


def test_corner_counts_match_distinct_parts():
    for n in range(1, 8):
        for mu in partitions_of(n):
            removable, addable = corners(mu)
            assert len(removable) == len(set(mu))
            assert len(addable) == len(set(mu)) + 1


def test_remove_part():
    assert remove_part((3, 1, 2, 1), 2) == (3, 2, 1)
    assert remove_part((1, 2, 1), 1) == (2, 1)
    assert remove_part((1,), 1) == ()
    with pytest.raises(IndexError):
        remove_part((1, 2), 3)


def test_dominance():
    assert dominance_leq((1, 1, 1), (3,)) is True
    assert dominance_leq((2, 2), (3, 1)) is True
    assert dominance_leq((3, 1), (2, 2)) is False
    assert dominance_leq((3, 1, 1, 1), (2, 2, 2)) is None
    with pytest.raises(ValueError):
        dominance_leq((2,), (3,))


def test_n_of_mu_three_ways():
    # row formula == sum of legs == sum of colegs
    for n in range(9):
        for mu in partitions_of(n):
            inv = partition_invariants(mu)
            legs = colegs = 0
            for row, part in enumerate(mu):
                for col in range(part):
                    arm, leg, coarm, coleg = cell_stats(mu, (col, row))
                    legs += leg
                    colegs += coleg
            assert inv.nmu == legs == colegs


def test_t_ratio_over_corners_is_monomial_sum():
    for n in range(1, 8):
        for mu in partitions_of(n):
            t_mu = partition_invariants(mu).T
            removable, _ = corners(mu)
            for nu in removable:
                ratio = t_mu / partition_invariants(nu).T
                assert ratio.den.is_one()
                assert len(ratio.num.terms) == 1


def test_pk_consistency_of_d():
    for n in range(6):
        for mu in partitions_of(n):
            inv = partition_invariants(mu)
            for k in (1, 2, 3):
                scaled = frobenius_scale(inv.D, k)
                want = frobenius_scale(M, k) * frobenius_scale(inv.B, k) - 1
                assert scaled == want


def test_zmu():
    assert zmu((1,)) == 1
    assert zmu((2,)) == 2
    assert zmu((1, 1)) == 2
    assert zmu((2, 1)) == 2
    assert zmu((3, 1, 1)) == 6


def test_string_round_trips():
    assert partition_str((3, 2, 1)) == "[3,2,1]"
    assert composition_str((3, 1, 2)) == "(3,1,2)"
    assert parse_partition("[3,2,1]") == (3, 2, 1)
    assert parse_partition("[]") == ()
    assert parse_composition("(3,1,2)") == (3, 1, 2)
    assert parse_composition("()") == ()
