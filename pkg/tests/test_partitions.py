import pytest
from hypothesis import given, settings, strategies as st

from ehall.exactfield import K, parse, substitute
from ehall.partitions import (
    Partition, MultiPartition, ContainmentError, arm, leg, n_stat, conjugate, addable, removable,
    partitions_of, tangent_char, taut_char, normal_char, lambda_T_star, lambda_N_star, b_stat,
    virtual_char, garsia_tesler, dual, lambda_char, add_cell, multipartitions_of, rankr_tangent,
    rankr_taut, rankr_tangent_relation, rank_ring, verify_virtual_characters, verify_tangent_dimension,
)

P = Partition


def k(text):
    return parse(text)


def test_arm_leg():
    lam = P((10, 9, 9, 9, 6, 3, 3))
    assert arm(lam, (3, 4)) == 5
    assert leg(lam, (3, 4)) == 2
    assert (arm(P((1,)), (1, 1)), leg(P((1,)), (1, 1))) == (0, 0)
    assert (arm(P(()), (1, 1)), leg(P(()), (1, 1))) == (-1, -1)


def test_statistics():
    assert n_stat(P((2, 1))) == 1
    assert conjugate(P((3, 1))) == P((2, 1, 1))
    assert addable(P((1,))) == [(2, 1), (1, 2)]
    assert removable(P((1,))) == [(1, 1)]


@pytest.mark.parametrize("fn,args,expected", [
    (tangent_char, (P((1,)),), "q^-1 + t^-1"),
    (tangent_char, (P((2,)),), "q^-2 + q*t^-1 + q^-1 + t^-1"),
    (tangent_char, (P(()),), "0"),
    (taut_char, (P((2, 1)),), "1 + t + q"),
    (taut_char, (P((1,)),), "1"),
    (taut_char, (P((2,)),), "1 + t"),
    (normal_char, (P((1,)), P((2,))), "q^-2 + t^-1"),
    (normal_char, (P(()), P((1,))), "0"),
    (normal_char, (P((1,)), P((1, 1))), "q^-1 + t^-2"),
    (lambda_T_star, (P((1,)),), "(1 - q)*(1 - t)"),
    (lambda_N_star, (P((1,)), P((2,))), "(1 - q^2)*(1 - t)"),
    (lambda_N_star, (P(()), P((1,))), "1"),
    (b_stat, (P((2, 1)), 1), "1 + q + t"),
    (b_stat, (P((1,)), 5), "1"),
    (b_stat, (P((2,)), -1), "1 + t^-1"),
    (virtual_char, (P((1,)), P(())), "q*t"),
    (virtual_char, (P((1,)), P((1,))), "t + q"),
    (virtual_char, (P((2,)), P((1,))), "t + q^2 + q*t"),
])
def test_character_examples(fn, args, expected):
    assert fn(*args) == k(expected)


def test_containment_errors():
    with pytest.raises(ContainmentError):
        normal_char(P((2,)), P((1, 1)))
    with pytest.raises(ContainmentError):
        lambda_N_star(P(()), P((2,)))


def test_garsia_tesler_examples():
    g = garsia_tesler(P((1,)))
    assert list(g.x_vars) == [K.one()]
    assert list(g.u_vars) == [k("q^-1"), k("t^-1")]
    g = garsia_tesler(P((2,)))
    assert list(g.x_vars) == [k("t")]
    assert list(g.u_vars) == [k("t*q^-1"), k("t^-1")]
    with pytest.raises(ValueError):
        garsia_tesler(P(()))


@pytest.mark.parametrize("n", range(0, 8))
def test_frame_sizes(n):
    for lam in partitions_of(n):
        if lam:
            g = garsia_tesler(lam)
            assert len(g.u_vars) == len(g.x_vars) + 1


partitions_st = st.integers(0, 7).flatmap(lambda n: st.sampled_from(partitions_of(n)))


@settings(max_examples=60, deadline=None)
@given(partitions_st)
def test_conjugation_swaps_arm_and_leg(lam):
    lt = conjugate(lam)
    assert conjugate(lt) == lam
    for i, j in lam.cells():
        assert arm(lam, (i, j)) == leg(lt, (j, i))
        assert leg(lam, (i, j)) == arm(lt, (j, i))


@settings(max_examples=40, deadline=None)
@given(partitions_st, partitions_st)
def test_virtual_symmetry(lam, mu):
    qt = K.mono(q=1, t=1)
    assert virtual_char(lam, mu) == qt * dual(virtual_char(mu, lam))


@settings(max_examples=40, deadline=None)
@given(partitions_st)
def test_normal_char_against_virtual(lam):
    for s in addable(lam):
        big = add_cell(lam, s)
        assert dual(normal_char(lam, big)) == virtual_char(big, lam) - K.mono(q=1, t=1)
        assert lambda_char(dual(normal_char(lam, big))) == lambda_N_star(lam, big)


def test_virtual_characters_suite():
    assert verify_virtual_characters(5).ok
    assert verify_tangent_dimension(6).ok


def test_multipartitions():
    assert len(multipartitions_of(2, 2)) == 5
    assert multipartitions_of(1, 2)[0] == MultiPartition((P((1,)), P(())))


def test_rank_r_characters():
    R = rank_ring(2)
    assert rankr_taut(MultiPartition((P((1,)), P(())))) == R.mono(e1=-1)
    for n in range(4):
        for lam in partitions_of(n):
            assert substitute(rankr_tangent(MultiPartition((lam,))), {"e1": K.one()}) == tangent_char(lam)


@pytest.mark.parametrize("r,n", [(1, 4), (2, 3), (3, 2)])
def test_tangent_relation(r, n):
    for m in range(n + 1):
        for lam in multipartitions_of(m, r):
            assert rankr_tangent(lam) == rankr_tangent_relation(lam)
