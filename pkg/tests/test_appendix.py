from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from ehall.appendix import (
    kop_sides, vert8_sides, partial_fraction_sides, gt_sides, verify_kop, verify_vert8,
    verify_partial_fractions, verify_gt,
)
from ehall.partitions import Partition, partitions_of

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=13)


def _sides(fn, *args, **kw):
    try:
        return fn(*args, **kw)
    except ZeroDivisionError:
        assume(False)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 3).flatmap(lambda r: st.tuples(
    st.lists(rationals, min_size=r, max_size=r), st.lists(rationals, min_size=r + 1, max_size=r + 1),
    rationals, rationals)))
def test_kop_random(data):
    xs, us, s, tq = data
    lhs, rhs = _sides(kop_sides, xs, us, s, tq, Fraction(1))
    assert lhs == rhs


@settings(max_examples=150, deadline=None)
@given(st.tuples(st.integers(0, 3), st.integers(0, 3)).flatmap(lambda rp: st.tuples(
    st.lists(rationals, min_size=rp[0], max_size=rp[0]), st.lists(rationals, min_size=rp[0] + 1, max_size=rp[0] + 1),
    st.lists(rationals, min_size=rp[1], max_size=rp[1]), st.lists(rationals, min_size=rp[1] + 1, max_size=rp[1] + 1))))
def test_vert8_random(data):
    lhs, rhs = _sides(vert8_sides, *data, one=Fraction(1))
    assert lhs == rhs


def test_vert8_opposite_sign_fails_on_empty_frames():
    lhs, rhs = vert8_sides([], [Fraction(2)], [], [Fraction(5)], Fraction(1), literal=True)
    assert lhs != rhs


@settings(max_examples=100, deadline=None)
@given(st.lists(rationals, min_size=1, max_size=5, unique=True), rationals)
def test_partial_fractions_random(xis, p):
    lhs, rhs = _sides(partial_fraction_sides, xis, p, Fraction(1))
    assert lhs == rhs


@pytest.mark.parametrize("m", [1, 2, 3, -1, -2, -3])
def test_gt_identity(m):
    for n in range(1, 7):
        for lam in partitions_of(n):
            lhs, rhs = gt_sides(lam, m)
            assert lhs == rhs, (lam, m)


def test_suites_small():
    assert verify_kop(1, 3, 20, 3).ok
    assert verify_vert8(1, 3, 20, 3).ok
    assert not verify_vert8(1, 1, 5, 3, literal=True).ok
    assert verify_partial_fractions(4).ok
    assert verify_gt(5).ok
