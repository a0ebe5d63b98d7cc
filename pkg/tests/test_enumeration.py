import itertools
import math

import pytest

from jointmoments.enumeration import (
    DerivTuple,
    enum_bounded_matrices,
    enum_bounded_rows,
    enum_deriv_tuples,
    enum_weak_compositions,
)


def test_deriv_tuple_examples():
    assert enum_deriv_tuples(0) == [DerivTuple(0, ())]
    assert enum_deriv_tuples(2) == [DerivTuple(2, (0,)), DerivTuple(0, (1,))]
    assert enum_deriv_tuples(3) == [DerivTuple(3, (0,)), DerivTuple(1, (1,))]


@pytest.mark.parametrize("n", range(13))
def test_deriv_tuples_match_nested_loops(n):
    h = n // 2
    brute = []
    for higher in itertools.product(range(h + 1), repeat=h):
        weight = sum(j * a for j, a in enumerate(higher, start=1))
        if weight <= h:
            brute.append(DerivTuple(n - 2 * weight, higher))
    got = enum_deriv_tuples(n)
    assert got == sorted(brute, key=lambda t: t.higher)
    for t in got:
        assert t.order == n
        assert t.a0 % 2 == n % 2


def test_deriv_tuple_factorial_product_includes_a0():
    assert DerivTuple(3, (1, 0)).factorial_product() == 6
    assert DerivTuple(0, (2, 1)).factorial_product() == 2


def test_deriv_tuples_reject_negative():
    with pytest.raises(ValueError):
        enum_deriv_tuples(-1)


def test_weak_composition_examples():
    assert enum_weak_compositions(1, 2) == [(0, 1), (1, 0)]
    assert enum_weak_compositions(0, 4) == [(0, 0, 0, 0)]
    assert enum_weak_compositions(2, 2) == [(0, 2), (1, 1), (2, 0)]
    assert enum_weak_compositions(-1, 2) == []
    with pytest.raises(ValueError):
        enum_weak_compositions(1, 0)


@pytest.mark.parametrize("total", range(11))
@pytest.mark.parametrize("parts", range(1, 7))
def test_stars_and_bars(total, parts):
    comps = enum_weak_compositions(total, parts)
    assert len(comps) == math.comb(total + parts - 1, parts - 1)
    assert comps == sorted(comps)
    assert all(sum(c) == total and len(c) == parts for c in comps)


def test_bounded_matrix_examples():
    assert list(enum_bounded_matrices(0, 3, 5)) == [()]
    assert list(enum_bounded_matrices(1, 1, 2)) == [((0,),), ((1,),)]
    assert sorted(m[0] for m in enum_bounded_matrices(1, 2, 3)) == [(0, 0), (0, 1), (1, 0)]


@pytest.mark.parametrize("rows, cols, bound", [(2, 2, 3), (3, 2, 4), (2, 3, 5)])
def test_bounded_matrix_count_and_order(rows, cols, bound):
    c = len(enum_bounded_rows(cols, bound))
    mats = list(enum_bounded_matrices(rows, cols, bound))
    assert len(mats) == c**rows
    assert len(set(mats)) == len(mats)
    assert mats == sorted(mats)
    assert all(2 * sum(row) <= bound for m in mats for row in m)


def test_enumerators_deterministic():
    assert enum_deriv_tuples(9) == enum_deriv_tuples(9)
    assert list(enum_bounded_matrices(2, 3, 4)) == list(enum_bounded_matrices(2, 3, 4))
