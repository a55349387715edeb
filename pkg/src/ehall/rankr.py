"""Higher-rank Fock module on r-tuples of partitions.

All operators here come from equivariant localization on the fixed-point
basis: the characters of the tangent space, the tautological bundle, the
Hecke normal bundle and its tautological line are evaluated exactly over
q, t, e_1..e_r, and matrix entries are ratios of their exterior algebras.
The relation suite feeds the normalized generators h_{i,l} through the same
``Omega`` machinery as rank one, with charge (1, (qt)^(r/2)).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .fock import FockOperator, diagonal_op, zero_op
from .partitions import (
    MultiPartition, as_multipartition, multipartitions_of, contains, addable, removable,
    add_cell, remove_cell, rank_ring, rankr_tangent, rankr_taut, rankr_normal, rankr_taut_line,
    rankr_tangent_relation, rankr_W, dual, lambda_char, mono,
)


class RankRSpace:
    """Basis indexed by r-tuples of partitions, graded by total weight."""

    def __init__(self, r):
        if r < 1:
            raise ValueError("rank must be at least 1")
        self.rank = r

    def basis(self, n):
        return multipartitions_of(n, self.rank) if n >= 0 else ()

    def size(self, key):
        return key.size

    def contains(self, big, small):
        return all(contains(a, b) for a, b in zip(big, small))

    def skew_char(self, big, small, l):
        """Sum of the l-th powers of the tautological weights of big minus small."""
        return psi(rankr_taut(big), l) - psi(rankr_taut(small), l)

    def label(self, key):
        return "(" + ",".join(str(list(p)) for p in key) + ")"

    def __repr__(self):
        return f"RankRSpace({self.rank})"


@lru_cache(maxsize=None)
def space(r):
    return RankRSpace(r)


def psi(chi, l):
    """Adams operation: raise every monomial of a character to the l-th power."""
    base = chi.ring
    acc = base.zero()
    for e, c in chi.laurent_terms().items():
        acc = acc + base.mono_half(tuple(l * v for v in e)) * c
    return acc


def _one_box_up(mu):
    r = mu.rank
    for a in range(r):
        for s in addable(mu[a]):
            parts = list(mu)
            parts[a] = add_cell(mu[a], s)
            yield MultiPartition(tuple(parts))


def _one_box_down(lam):
    for a in range(lam.rank):
        for s in removable(lam[a]):
            parts = list(lam)
            parts[a] = remove_cell(lam[a], s)
            yield MultiPartition(tuple(parts))


@lru_cache(maxsize=None)
def _lambda_T_star(lam):
    return lambda_char(dual(rankr_tangent(lam)))


@lru_cache(maxsize=None)
def _hecke_entry(mu, lam):
    """Lambda(N*_{mu,lam}) for mu inside lam, and the line character."""
    return lambda_char(dual(rankr_normal(mu, lam))), rankr_taut_line(mu, lam)


def _line_power(line, l):
    return line ** l if l >= 0 else (1 / line) ** (-l)


@lru_cache(maxsize=None)
def rr_f_plus(l, r):
    """<lam|f_{1,l}|mu> = tau_{mu,lam}^l Lambda(N*_{mu,lam}) / Lambda(T*_lam)."""

    def rule(mu):
        out = {}
        for lam in _one_box_up(mu):
            n, line = _hecke_entry(mu, lam)
            out[lam] = _line_power(line, l) * n / _lambda_T_star(lam)
        return out

    return FockOperator(1, rule, space(r), f"f+({l})")


@lru_cache(maxsize=None)
def rr_f_minus(l, r):
    """<mu|f_{-1,l}|lam> = tau_{mu,lam}^l Lambda(N*_{mu,lam}) / Lambda(T*_mu)."""

    def rule(lam):
        out = {}
        for mu in _one_box_down(lam):
            n, line = _hecke_entry(mu, lam)
            out[mu] = _line_power(line, l) * n / _lambda_T_star(mu)
        return out

    return FockOperator(-1, rule, space(r), f"f-({l})")


@lru_cache(maxsize=None)
def rr_f_zero(l, r):
    if l == 0:
        raise ValueError("f_{0,0} is not defined")
    return diagonal_op(lambda lam: psi(rankr_taut(lam), l), space(r), f"f0({l})")


def kappa_e(r):
    """kappa = e_1 ... e_r."""
    R = rank_ring(r)
    return R.mono(**{f"e{a}": 1 for a in range(1, r + 1)})


def h0_constant(n, r, weighted=True):
    """Psi_n(W) / ((1 - q^n)(1 - t^n)); without the weight, the bare rank-one scalar."""
    c = 1 / ((1 - mono(n, 0)) * (1 - mono(0, n)))
    return psi(rankr_W(r), n) * c if weighted else c


@lru_cache(maxsize=None)
def rr_h(i, l, r, weighted=True):
    """Normalized generators; ``weighted=False`` uses the bare zero-mode constant,
    which breaks the mixed relation at the vacuum as soon as the e_a are generic."""
    R = rank_ring(r)
    k_half = R.mono(**{f"e{a}": Fraction(-1, 2) for a in range(1, r + 1)})
    if i == 1:
        op = rr_f_plus(l - r, r).scale(k_half * R.mono(t=1 - Fraction(r, 2)))
    elif i == -1:
        op = rr_f_minus(l, r).scale((-1) ** r * k_half * R.mono(q=1 - Fraction(r, 2)))
    elif i == 0:
        if l == 0:
            raise ValueError("h(0,0) is not defined")
        if l > 0:
            op = rr_f_zero(l, r) - h0_constant(l, r, weighted)
        else:
            op = -rr_f_zero(l, r) + h0_constant(l, r, weighted)
    else:
        raise ValueError("first index must be -1, 0 or 1")
    op.label = f"h({i},{l})"
    return op


def rank_charge(r):
    from .hall import CentralCharge
    from .exactfield import K

    return CentralCharge(K.one(), K.mono(q=Fraction(r, 2), t=Fraction(r, 2)))


@lru_cache(maxsize=None)
def rank_omega(r, weighted=True):
    from .hall import Omega

    return Omega(lambda i, l: rr_h(i, l, r, weighted), rank_charge(r), space(r))


def verify_rankr_relations(r, rng=1, max_weight=3, weighted=True):
    """Row, mixed and zero-mode relations for the rank-r generators."""
    from .hall import row_relations, mixed_relations
    from .report import Report, compare

    if r < 1:
        raise ValueError("rank must be at least 1")
    om = rank_omega(r, weighted)
    rep = Report("rank-r", {"rank": r, "range": rng, "weighted": weighted}, max_weight)
    rep.extra["rank"] = r
    row_relations(om, rng, max_weight, rep)
    mixed_relations(om, rng, max_weight, rep)
    for a in range(1, rng + 1):
        for b in range(-rng, rng + 1):
            if b == 0:
                continue
            lhs = om.u((0, a)) * om.u((0, b)) - om.u((0, b)) * om.u((0, a))
            compare(rep, "h0-commute", {"a": a, "b": b}, lhs, zero_op(0, space(r)), max_weight)
    return rep


def verify_tangent_relation(r=2, max_weight=3):
    """The tangent character against its tautological expression, and its size 2rn."""
    from .report import Report

    rep = Report("tangent-relation", {"rank": r}, max_weight)
    rep.extra["rank"] = r
    for n in range(max_weight + 1):
        for lam in multipartitions_of(n, r):
            T = rankr_tangent(lam)
            rhs = rankr_tangent_relation(lam)
            ok = T == rhs
            rep.add("tangent", {"lam": [list(p) for p in lam]}, ok,
                    None if ok else {"lhs": str(T), "rhs": str(rhs)})
            count = sum(T.laurent_terms().values()) if n else 0
            rep.add("dimension", {"lam": [list(p) for p in lam]}, count == 2 * r * n,
                    None if count == 2 * r * n else {"terms": str(count)})
    return rep


def verify_rank_one_reduction(max_weight=4, ls=(-2, -1, 0, 1, 2)):
    """At r = 1 and e_1 = 1 the operators coincide with the rank-one localized ones."""
    from .exactfield import K, substitute
    from .fock import loc_f_plus, loc_f_minus, f_zero
    from .partitions import partitions_of
    from .report import Report

    rep = Report("rank-one-reduction", {"ls": list(ls)}, max_weight)

    def spec(v):
        return substitute(v, {"e1": K.one()})

    for n in range(max_weight + 1):
        for nu in partitions_of(n):
            mp = MultiPartition((nu,))
            for l in ls:
                pairs = [("f+", rr_f_plus(l, 1), loc_f_plus(l)), ("f-", rr_f_minus(l, 1), loc_f_minus(l))]
                if l:
                    pairs.append(("f0", rr_f_zero(l, 1), f_zero(l)))
                for name, A, B in pairs:
                    a = {k[0]: spec(v) for k, v in A.column(mp).items()}
                    ok = a == B.column(nu)
                    rep.add(name, {"l": l, "nu": list(nu)}, ok, None if ok else {"lhs": str(a)})
    return rep
