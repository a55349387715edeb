from fractions import Fraction

import pytest

from ehall.exactfield import K, substitute
from ehall.fock import matrices_equal, op_commutator, scalar_op
from ehall.hall import alpha_n
from ehall.partitions import MultiPartition, Partition, rank_ring
from ehall.rankr import (
    space, rr_f_plus, rr_f_minus, rr_f_zero, rr_h, rank_omega, h0_constant,
    verify_rankr_relations, verify_tangent_relation, verify_rank_one_reduction,
)

P = Partition
EMPTY2 = MultiPartition((P(()), P(())))


def mp(*parts):
    return MultiPartition(tuple(P(p) for p in parts))


@pytest.mark.parametrize("l", [-1, 0, 2])
def test_vacuum_to_weight_one(l):
    R = rank_ring(2)
    col = rr_f_plus(l, 2).column(EMPTY2)
    assert set(col) == {mp((1,), ()), mp((), (1,))}
    # the line character contributes e_a^(-l); the rest carries no e-dependence on this step
    a = col[mp((1,), ())] / R.mono(e1=-l)
    b = col[mp((), (1,))] / R.mono(e2=-l)
    swap = {"e1": R.gen("e2", 1), "e2": R.gen("e1", 1)}
    assert substitute(a, swap) == b


@pytest.mark.parametrize("l", [1, 2, -1])
def test_f_zero_two_boxes(l):
    R = rank_ring(2)
    lam = mp((1,), (1,))
    assert rr_f_zero(l, 2).column(lam) == {lam: R.mono(e1=-l) + R.mono(e2=-l)}


def test_h_normalizations():
    R = rank_ring(1)
    k_half = R.mono(e1=Fraction(-1, 2))
    lam = mp((1,))
    assert rr_h(1, 2, 1).column(lam) == {
        key: v * k_half * R.mono(t=Fraction(1, 2)) for key, v in rr_f_plus(1, 1).column(lam).items()}
    R2 = rank_ring(2)
    sign_two = rr_h(-1, 0, 2).column(mp((1,), ()))
    plain = rr_f_minus(0, 2).column(mp((1,), ()))
    kh = R2.mono(e1=Fraction(-1, 2), e2=Fraction(-1, 2))
    assert sign_two == {key: v * kh for key, v in plain.items()}
    with pytest.raises(ValueError):
        rr_h(0, 0, 2)


def test_zero_mode_constant():
    # at r = 1 with e_1 = 1 this is the rank-one constant
    c = substitute(h0_constant(2, 1), {"e1": K.one()})
    assert c == 1 / ((1 - K.mono(q=2)) * (1 - K.mono(t=2)))
    assert h0_constant(1, 2, weighted=False) == 1 / ((1 - K.gen("q")) * (1 - K.gen("t")))


@pytest.mark.parametrize("n", range(0, 4))
def test_middle_branch(n):
    om = rank_omega(2)
    lhs = op_commutator(om.u((-1, 0)), om.u((1, 0)))
    qt = K.mono(q=1, t=1)
    assert matrices_equal(lhs, scalar_op((qt - 1 / qt) / alpha_n(1), space(2)), n)


def test_bracket_example():
    om = rank_omega(2)
    lhs = op_commutator(om.u((0, 1)), om.u((1, 0)))
    for n in range(4):
        assert matrices_equal(lhs, om.u((1, 1)), n)


def test_suites_small():
    assert verify_rankr_relations(2, 1, 2).ok
    assert verify_rankr_relations(1, 1, 3).ok
    assert verify_tangent_relation(2, 3).ok
    assert verify_rank_one_reduction(3, (-1, 0, 1)).ok


def test_bare_constant_fails():
    assert not verify_rankr_relations(2, 1, 1, weighted=False).ok
