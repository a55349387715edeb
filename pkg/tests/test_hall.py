from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from ehall.exactfield import K, parse
from ehall.fock import f_plus, f_minus, matrices_equal, op_commutator, scalar_op, T_HALF, Partition
from ehall.hall import (
    alpha_n, eps, eps_pair, det, kappa, STANDARD, omega, omega_generator, theta, interior_points,
    alpha_vec, heisenberg_u, casimir, nabla_conjugate, verify_row_relations, verify_mixed_relations,
    verify_plane_relations, verify_decomposition_independence, verify_casimir, _bezout,
)

QT_HALF = K.mono(q=Fraction(1, 2), t=Fraction(1, 2))


def test_alpha():
    assert alpha_n(1) == parse("(1 - q*t)*(1 - q^-1)*(1 - t^-1)")
    assert alpha_n(2) == parse("(1 - q^2*t^2)*(1 - q^-2)*(1 - t^-2)/2")
    assert alpha_n(-2) == alpha_n(2)
    with pytest.raises(ValueError):
        alpha_n(0)


def test_signs_and_kappa():
    assert eps((0, 3)) == 1
    assert eps((-1, 5)) == -1
    assert eps_pair((1, 0), (0, 1)) == 1
    # kappa_(a,b) = c2^a c1^b with c = (1, (qt)^(1/2))
    assert kappa(STANDARD, (2, 3)) == parse("q*t")
    assert kappa(STANDARD, (1, 0)) == QT_HALF
    with pytest.raises(ValueError):
        eps((0, 0))


coords = st.tuples(st.integers(-5, 5), st.integers(-5, 5)).filter(lambda x: x != (0, 0))


@settings(max_examples=100, deadline=None)
@given(coords)
def test_bezout(z):
    if abs(z[0]) < 2 or gcd(*z) != 1:
        return
    w = _bezout(z)
    assert det(w, z) == 1
    assert 0 < abs(w[0]) < abs(z[0])


@settings(max_examples=100, deadline=None)
@given(coords, coords)
def test_alpha_vec_is_lattice_point(x, y):
    if det(x, y) == 0:
        return
    a = alpha_vec(x, y)
    assert all(isinstance(c, int) for c in a)
    assert interior_points(x, y) >= 0


@pytest.mark.parametrize("n", range(0, 4))
def test_generator_examples(n):
    assert matrices_equal(omega_generator((1, 1)).realization, f_plus(0).scale(T_HALF), n)
    assert matrices_equal(heisenberg_u(0, 1, 1).realization, f_plus(-1).scale(T_HALF), n)
    with pytest.raises(ValueError):
        omega_generator((0, 0))


@pytest.mark.parametrize("n", range(0, 4))
def test_heisenberg_bracket(n):
    lhs = op_commutator(omega((1, 0)), omega((-1, 0)))
    rhs = scalar_op((1 / QT_HALF - QT_HALF) / alpha_n(1))
    assert matrices_equal(lhs, rhs, n)


@pytest.mark.parametrize("x,y", [((0, 1), (0, 2)), ((1, 1), (2, 2)), ((0, -1), (0, 2))])
def test_same_line_commute(x, y):
    c = op_commutator(omega(x), omega(y))
    for n in range(4):
        assert all(v == 0 for row in c.matrix(n) for v in row)


def test_casimir_examples():
    C0 = casimir(0, 1, 3)
    assert C0.column(Partition(())) == {Partition(()): K.one()}
    assert C0.entry(Partition((1,)), Partition((1,))) == 1 + QT_HALF - 1 / QT_HALF
    with pytest.raises(ValueError):
        casimir(1, 0, 2)


@pytest.mark.parametrize("suite,args", [
    (verify_row_relations, (1, 4)),
    (verify_mixed_relations, (1, 4)),
    (verify_plane_relations, (1, 4)),
    (verify_decomposition_independence, (2, 4)),
    (verify_casimir, (3,)),
])
def test_suites_small(suite, args):
    rep = suite(*args)
    assert rep.ok, rep.witness()
    assert rep.to_json()["status"] == "pass"
