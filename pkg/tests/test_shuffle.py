import pytest
from hypothesis import given, settings, strategies as st

from ehall.exactfield import K
from ehall.shuffle import (
    ShuffleElement, shuffle_ring, z, kernel_g, zeta, psi_r, shuffle_mul, unit, laurent_monomial,
    permute_vars, upsilon_rank_check, verify_diagram, verify_associativity, verify_hecke_compatibility,
)


def test_kernel():
    assert kernel_g(K.zero()) == 1
    R = shuffle_ring(1)
    x = z(1, 1)
    assert zeta(x) == kernel_g(1 / x)
    assert kernel_g(x) == (1 - R.gen("t") * x) * (1 - R.gen("q") * x) / ((1 - x) * (1 - R.gen("q") * R.gen("t") * x))


def test_psi_examples():
    for k in (-2, 0, 3):
        assert psi_r((k,)).value == laurent_monomial((k,))
    z1, z2 = z(1, 2), z(2, 2)
    assert psi_r((0, 0)).value == kernel_g(z1 / z2) + kernel_g(z2 / z1)
    assert psi_r((1, 0)).value + psi_r((0, 1)).value == psi_r(z1 + z2, 2).value


def test_symmetry_is_enforced():
    with pytest.raises(ValueError):
        ShuffleElement(2, z(1, 2))
    assert psi_r((1, -1, 0)).is_symmetric()


exps = st.integers(-1, 1)


@settings(max_examples=25, deadline=None)
@given(exps, exps)
def test_diagram_rank_one(k, l):
    assert shuffle_mul(psi_r((k,)), psi_r((l,))) == psi_r((k, l))


@settings(max_examples=10, deadline=None)
@given(exps, exps, exps)
def test_associativity_random(a, b, c):
    x, y, w = psi_r((a,)), psi_r((b,)), psi_r((c,))
    assert (x * y) * w == x * (y * w)


def test_unit():
    x = psi_r((1, 0))
    assert unit() * x == x
    assert x * unit() == x


def test_permute_vars_round_trip():
    a = psi_r((1, 0, -1)).value * z(1, 3)
    b = permute_vars(permute_vars(a, [2, 3, 1], 3), [3, 1, 2], 3)
    assert a == b


def test_upsilon_ranks():
    rep = upsilon_rank_check((0,), 4)
    assert rep.ok and rep.extra["operator_rank"] == 1
    rep = upsilon_rank_check((0, 1), 6)
    assert rep.ok
    assert rep.extra["operator_rank"] == rep.extra["shuffle_rank"] == 4


def test_suites_small():
    assert verify_diagram(3).ok
    assert verify_associativity(3).ok
    assert verify_hecke_compatibility((0, 1), (1,), 4).ok
