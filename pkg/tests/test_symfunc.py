import pytest
from hypothesis import given, settings, strategies as st

from ehall.exactfield import K, parse
from ehall.fock import basis_vector, f_plus
from ehall.partitions import Partition, partitions_of, conjugate
from ehall.symfunc import (
    SymFunc, p_mult, p_deriv, gamma_t, gamma_t_inv, macdonald_P, tilde_H, swap_qt, expand, to_monomial,
    delta_tilde_eigenvalue, phi_op, check_P_eigen, check_stability, nakajima_check, monomial_sym,
    verify_pieri, verify_macdonald, verify_intertwiner,
)

P = Partition
p = SymFunc.p


def k(text):
    return parse(text)


def test_power_sum_calculus():
    assert p_deriv(1)(p(1, 1)) == p(1).scale(K.const(2))
    assert p_deriv(2)(p(1)).is_zero()
    assert gamma_t(p(2)) == p(2).scale(k("1 - t^2"))
    assert gamma_t(p(1, 2)) == p(1, 2).scale(k("(1 - t)*(1 - t^2)"))


def test_macdonald_examples():
    assert macdonald_P(P((1,))) == p(1)
    assert macdonald_P(P((1, 1))) == monomial_sym(P((1, 1)))
    m = to_monomial(macdonald_P(P((2,))))
    assert m[P((2,))] == 1
    assert m[P((1, 1))] == k("(1 + q)*(1 - t^-1)/(1 - q*t^-1)")


def test_eigenvalue_examples():
    assert delta_tilde_eigenvalue(P((1,)), 1) == k("q - 1")
    assert delta_tilde_eigenvalue(P(()), 3) == 0


def test_tilde_H_examples():
    assert tilde_H(P(())) == SymFunc.one()
    assert tilde_H(P((1,))) == p(1)
    assert tilde_H(P((2,))) == p(1, 1).scale(k("(1 + q)/2")) + p(2).scale(k("(1 - q)/2"))
    assert tilde_H(P((1, 1))) == p(1, 1).scale(k("(1 + t)/2")) + p(2).scale(k("(1 - t)/2"))
    assert to_monomial(tilde_H(P((2, 1)))) == {
        P((3,)): K.one(), P((2, 1)): k("1 + q + t"), P((1, 1, 1)): k("1 + 2*q + 2*t + q*t")}


def test_expand_examples():
    assert expand(basis_vector(P(()))) == SymFunc.one()
    assert expand(f_plus(-1).apply(basis_vector(P((1,))))) == p(1, 1).scale(k("1/((1 - q)*(1 - t))"))


def test_phi_examples():
    assert phi_op((1, 0))(SymFunc.one()) == p(1).scale(K.gen("t", 1) / (1 - K.gen("q")))


sym_st = st.lists(
    st.tuples(st.integers(0, 4).flatmap(lambda n: st.sampled_from(partitions_of(n))), st.integers(-3, 3)),
    max_size=4,
).map(lambda kv: sum((p(*lam).scale(K.const(c)) for lam, c in kv), SymFunc()))


@settings(max_examples=50, deadline=None)
@given(sym_st, sym_st)
def test_gamma_is_multiplicative_and_invertible(f, g):
    assert gamma_t(f * g) == gamma_t(f) * gamma_t(g)
    assert gamma_t_inv(gamma_t(f)) == f


@settings(max_examples=50, deadline=None)
@given(sym_st, sym_st, st.integers(1, 3))
def test_derivation(f, g, n):
    d = p_deriv(n)
    assert d(f * g) == d(f) * g + f * d(g)


@pytest.mark.parametrize("lam", [lam for n in range(1, 5) for lam in partitions_of(n)])
def test_P_eigen_and_stability(lam):
    assert check_P_eigen(lam)
    assert check_stability(lam, lam.size + 1)
    assert swap_qt(tilde_H(lam)) == tilde_H(conjugate(lam))


def test_suites_small():
    assert verify_pieri(4).ok
    assert verify_macdonald(4).ok
    assert verify_intertwiner(4, (1, 2)).ok
    assert nakajima_check(2, 4).ok


def test_nakajima_sign_and_1_over_n_variant_fails():
    rep = nakajima_check(2, 3, annihilation_sign=-1, annihilation_over_n=True)
    assert not rep.ok
