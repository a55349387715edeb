import pytest
from hypothesis import given, settings, strategies as st

from ehall.exactfield import K, parse
from ehall.fock import (
    Partition, FockVector, basis_vector, f_plus, f_minus, f_zero, e_zero, h_op, nabla, nabla_inv,
    identity_op, hecke_twist, op_commutator, op_matrix, matrices_equal, matrix_dump, SupportError,
    DegreeError, loc_f_plus, loc_f_minus, virtual_plus_series, partitions_of,
    verify_zero_modes, verify_gamma, verify_newton, verify_hecke, verify_torsion_shadow, verify_virtual,
)

P = Partition
QT = parse("1/((1 - q)*(1 - t))")


def col(op, nu):
    return op.column(P(nu))


@pytest.mark.parametrize("r", [-2, -1, 0, 1, 3])
def test_f_plus_on_vacuum(r):
    assert col(f_plus(r), ()) == {P((1,)): QT}


def test_f_plus_pieri_oracle():
    c = col(f_plus(-1), (1,))
    assert c[P((2,))] == parse("1/((q - t)*(1 - q))")
    assert c[P((1, 1))] == parse("-1/((q - t)*(1 - t))")


def test_f_plus_zero_cell_weight():
    # with q along rows the new box of (2) carries q
    assert col(f_plus(0), (1,))[P((2,))] == parse("q/((q - t)*(1 - q))")


def test_f_minus_examples():
    assert col(f_minus(0), (1,)) == {P(()): K.one()}
    assert col(f_minus(0), ()) == {}
    assert col(f_minus(1), (2,)) == {P((1,)): parse("q*(1 + q)")}


@pytest.mark.parametrize("l", [-2, -1, 1, 2, 3])
def test_f_zero_eigenvalues(l):
    assert col(f_zero(l), (2, 1)) == {P((2, 1)): 1 + K.mono(q=l) + K.mono(t=l)}
    assert col(f_zero(l), ()) == {}
    assert col(f_zero(l), (1,)) == {P((1,)): K.one()}


def test_zero_modes_and_h():
    assert col(e_zero(2), (2,)) == {P((2,)): K.gen("q")}
    assert col(h_op(0, 1), (1,)) == {P((1,)): 1 - QT}
    with pytest.raises(ValueError):
        h_op(0, 0)


def test_nabla():
    assert col(nabla(), (1,)) == {P((1,)): K.one()}
    assert col(nabla(), (2, 1)) == {P((2, 1)): parse("q*t")}
    assert col(nabla(), (2,)) == {P((2,)): K.gen("q")}
    for n in range(4):
        assert matrices_equal(nabla() * nabla_inv(), identity_op(), n)


def test_matrices():
    m = op_matrix(f_zero(1), 2)
    assert m == [[1 + K.gen("q"), K.zero()], [K.zero(), 1 + K.gen("t")]]
    one = op_matrix(identity_op(), 3)
    assert all(one[i][j] == (1 if i == j else 0) for i in range(3) for j in range(3))
    with pytest.raises(DegreeError):
        op_matrix(f_minus(0), 0)


@pytest.mark.parametrize("n", range(0, 5))
def test_gamma_zero_is_scalar(n):
    g = op_commutator(f_minus(0), f_plus(-1))
    m = op_matrix(g, n)
    size = len(partitions_of(n))
    assert all(m[i][j] == (QT if i == j else 0) for i in range(size) for j in range(size))


def test_matrix_dump_schema():
    d = matrix_dump(f_zero(1), 2)
    assert d["row_basis"] == [[2], [1, 1]]
    assert d["entries"] == [["q + 1", "0"], ["0", "t + 1"]]


def test_hecke_twist():
    tw = hecke_twist(1, identity_op())
    for n in range(3):
        assert all(x == 0 for row in tw.matrix(n) for x in row)
    with pytest.raises(SupportError):
        hecke_twist(1, f_minus(0)).column(P((1,)))


def test_virtual_series_base_cases():
    plus = virtual_plus_series(2)
    assert col(plus[0], (2,)) == {P((2,)): K.one()}
    z1 = plus[1]
    for nu in [(), (1,), (2,), (1, 1)]:
        assert col(z1, nu) == {k: (1 - parse("q*t")) * v for k, v in col(f_plus(0), nu).items()}


vectors = st.lists(
    st.tuples(st.integers(0, 4).flatmap(lambda n: st.sampled_from(partitions_of(n))), st.integers(-3, 3)),
    max_size=4,
).map(lambda kv: FockVector({k: K.const(c) for k, c in kv}))


@settings(max_examples=30, deadline=None)
@given(vectors, vectors, st.integers(-2, 2))
def test_operators_are_linear(v, w, l):
    A = f_plus(l)
    assert A.apply(v + w) == A.apply(v) + A.apply(w)
    assert A.apply(v.scale(K.gen("q"))) == A.apply(v).scale(K.gen("q"))


@settings(max_examples=20, deadline=None)
@given(st.integers(-2, 2), st.integers(0, 4))
def test_localized_support_matches(r, n):
    for nu in partitions_of(n):
        a, b = loc_f_plus(r).column(nu), f_plus(r).column(nu)
        assert set(a) == set(b)
        a, b = loc_f_minus(r).column(nu), f_minus(r).column(nu)
        assert set(a) == set(b)


@pytest.mark.parametrize("suite,args", [
    (verify_zero_modes, (2, 4)),
    (verify_gamma, (1, 4)),
    (verify_newton, (6,)),
    (verify_hecke, (1, 4)),
    (verify_torsion_shadow, (1, 4)),
    (verify_virtual, (3, 4)),
])
def test_suites_small(suite, args):
    rep = suite(*args)
    assert rep.ok, rep.witness()


def test_newton_alternating_variant_fails():
    assert not verify_newton(4, alternating=True).ok
