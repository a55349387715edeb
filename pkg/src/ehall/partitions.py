"""Partitions, multipartitions and the fixed-point characters built on them.

Cells are pairs (i, j) with row i and column j, both starting at 1.  The
coordinates x(s) = i - 1 and y(s) = j - 1 give every cell the monomial
q^x t^y.  Arms and legs are measured against any partition, also for cells
outside of it, where they can be negative.

Characters are returned as FieldElements whose denominator is a monomial
(Laurent polynomials); ``char_terms`` reads them back as exponent maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactfield import K, FieldElement, DivisionByZero, ring, ordered_names


class ContainmentError(ValueError):
    pass


class Partition(tuple):
    """A weakly decreasing tuple of positive integers."""

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValueError(f"parts must be weakly decreasing: {parts}")
        if parts and parts[-1] < 0:
            raise ValueError(f"parts must be positive: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self):
        return sum(self)

    def part(self, i):
        """lambda_i with 1-based i; zero beyond the length."""
        return self[i - 1] if 1 <= i <= len(self) else 0

    def cells(self):
        return [(i + 1, j + 1) for i, p in enumerate(self) for j in range(p)]

    def __contains__(self, cell):
        if isinstance(cell, tuple) and len(cell) == 2:
            i, j = cell
            return i >= 1 and j >= 1 and j <= self.part(i)
        return False

    def __repr__(self):
        return f"Partition({list(self)})"

    def __str__(self):
        return "[" + ",".join(str(p) for p in self) + "]"


EMPTY = Partition(())


def as_partition(p):
    return p if isinstance(p, Partition) else Partition(p)


@lru_cache(maxsize=None)
def conjugate(lam):
    lam = as_partition(lam)
    if not lam:
        return EMPTY
    return Partition(sum(1 for p in lam if p >= j) for j in range(1, lam[0] + 1))


def arm(lam, s):
    i, j = s
    return as_partition(lam).part(i) - j


def leg(lam, s):
    i, j = s
    return conjugate(as_partition(lam)).part(j) - i


def n_stat(lam):
    return sum(i * p for i, p in enumerate(lam))


def addable(lam):
    """Addable cells in increasing column order."""
    lam = as_partition(lam)
    out = []
    for i in range(len(lam), -1, -1):
        row = i + 1
        j = lam.part(row) + 1
        if row == 1 or lam.part(row - 1) >= j:
            out.append((row, j))
    return out


def removable(lam):
    """Removable cells in increasing column order."""
    lam = as_partition(lam)
    out = []
    for i in range(len(lam), 0, -1):
        if lam.part(i) > lam.part(i + 1):
            out.append((i, lam.part(i)))
    return out


def contains(mu, lam):
    """True when the diagram of lam lies inside mu."""
    mu, lam = as_partition(mu), as_partition(lam)
    return len(lam) <= len(mu) and all(mu.part(i + 1) >= p for i, p in enumerate(lam))


def add_cell(lam, s):
    i, _ = s
    parts = list(lam) + [0]
    parts[i - 1] += 1
    return Partition(parts)


def remove_cell(lam, s):
    i, _ = s
    parts = list(lam)
    parts[i - 1] -= 1
    return Partition(parts)


def skew_cell(big, small):
    """The unique cell of big not in small (sizes differing by one)."""
    big, small = as_partition(big), as_partition(small)
    if big.size != small.size + 1 or not contains(big, small):
        raise ContainmentError(f"{small} is not {big} minus one cell")
    for i in range(1, len(big) + 1):
        if big.part(i) != small.part(i):
            return (i, big.part(i))
    raise AssertionError


@lru_cache(maxsize=None)
def partitions_of(n):
    """All partitions of n in descending lexicographic order."""
    if n == 0:
        return (EMPTY,)
    out = []

    def rec(rest, cap, prefix):
        if rest == 0:
            out.append(Partition(prefix))
            return
        for p in range(min(rest, cap), 0, -1):
            rec(rest - p, p, prefix + [p])

    rec(n, n, [])
    return tuple(out)


def xy(s):
    return s[0] - 1, s[1] - 1


# ---------------------------------------------------------------------------
# characters


@lru_cache(maxsize=None)
def mono(a, b):
    """q^a t^b in K."""
    return K.mono(q=a, t=b)


def char_terms(chi):
    """Map exponent tuple (one entry per generator of chi's ring) -> multiplicity."""
    out = {}
    for e, c in chi.laurent_terms().items():
        out[tuple(Fraction(v, 2) if v % 2 else v // 2 for v in e)] = c
    return out


def _char(pairs):
    acc = K.zero()
    for a, b in pairs:
        acc = acc + mono(a, b)
    return acc


def tangent_char(lam):
    lam = as_partition(lam)
    out = []
    for s in lam.cells():
        a, l = arm(lam, s), leg(lam, s)
        out += [(-a - 1, l), (a, -l - 1)]
    return _char(out)


def taut_char(lam):
    lam = as_partition(lam)
    return _char([(i - 1, j - 1) for i, j in lam.cells()])


def _check_adjacent(mu, lam):
    if as_partition(lam).size != as_partition(mu).size + 1 or not contains(lam, mu):
        raise ContainmentError(f"need {mu} inside {lam} with one extra cell")


def normal_char(mu, lam):
    """N_{mu,lam} for mu inside lam with one extra cell."""
    mu, lam = as_partition(mu), as_partition(lam)
    _check_adjacent(mu, lam)
    out = []
    for s in mu.cells():
        out += [(-arm(lam, s) - 1, leg(mu, s)), (arm(mu, s), -leg(lam, s) - 1)]
    return _char(out)


def lambda_T_star(lam):
    lam = as_partition(lam)
    acc = K.one()
    for s in lam.cells():
        a, l = arm(lam, s), leg(lam, s)
        acc = acc * (1 - mono(a + 1, -l)) * (1 - mono(-a, l + 1))
    return acc


def lambda_N_star(mu, lam):
    mu, lam = as_partition(mu), as_partition(lam)
    _check_adjacent(mu, lam)
    acc = K.one()
    for s in mu.cells():
        acc = acc * (1 - mono(arm(lam, s) + 1, -leg(mu, s))) * (1 - mono(-arm(mu, s), leg(lam, s) + 1))
    return acc


def b_stat(lam, l):
    lam = as_partition(lam)
    return _char([(l * (i - 1), l * (j - 1)) for i, j in lam.cells()])


def virtual_char(lam, mu):
    lam, mu = as_partition(lam), as_partition(mu)
    out = []
    for s in mu.cells():
        out.append((-arm(mu, s), leg(lam, s) + 1))
    for s in lam.cells():
        out.append((arm(lam, s) + 1, -leg(mu, s)))
    return _char(out)


def dual(chi):
    """Invert every monomial of a character."""
    if isinstance(chi, (int, Fraction)):
        return chi
    return chi.inverted()


def lambda_char(chi):
    """Lambda(V) = prod (1 - m)^c over the monomials m of V with multiplicity c."""
    base = chi.ring
    acc = base.one()
    for e, c in chi.laurent_terms().items():
        if c.denominator != 1:
            raise ValueError("characters need integer multiplicities")
        m = base.mono_half(e)
        factor = 1 - m
        if factor.is_zero():
            if c > 0:
                return base.zero()
            raise DivisionByZero("negative multiplicity of the trivial character")
        acc = acc * factor ** int(c)
    return acc


# ---------------------------------------------------------------------------
# Garsia-Tesler frame


@dataclass(frozen=True)
class GTFrame:
    cells: tuple
    x_vars: tuple
    u_vars: tuple


def garsia_tesler(lam):
    lam = as_partition(lam)
    if not lam:
        raise ValueError("the Garsia-Tesler frame needs a nonempty partition")
    # A_1 sits in the first row: with x(s) = i - 1 this is the order that
    # makes the frame's power sums match B_lam
    cells = tuple(reversed(removable(lam)))
    r = len(cells)
    alpha = [None] + [j - 1 for i, j in cells] + [-1]
    beta = [-1] + [i - 1 for i, j in cells]
    xs = tuple(mono(beta[k], alpha[k]) for k in range(1, r + 1))
    us = tuple(mono(beta[l], alpha[l + 1]) for l in range(0, r + 1))
    return GTFrame(tuple(cells), xs, us)


# ---------------------------------------------------------------------------
# multipartitions


class MultiPartition(tuple):
    """An r-tuple of partitions."""

    def __new__(cls, comps):
        comps = tuple(as_partition(c) for c in comps)
        if not comps:
            raise ValueError("a multipartition needs at least one component")
        return super().__new__(cls, comps)

    @property
    def rank(self):
        return len(self)

    @property
    def size(self):
        return sum(c.size for c in self)

    def __str__(self):
        return "[" + ",".join(str(c) for c in self) + "]"

    def __repr__(self):
        return f"MultiPartition({[list(c) for c in self]})"


def as_multipartition(x):
    return x if isinstance(x, MultiPartition) else MultiPartition(x)


@lru_cache(maxsize=None)
def multipartitions_of(n, r):
    """All r-tuples of total weight n, ordered descending-lexicographically."""
    if r == 1:
        return tuple(MultiPartition((p,)) for p in partitions_of(n))
    out = []
    for k in range(n, -1, -1):
        for p in partitions_of(k):
            for rest in multipartitions_of(n - k, r - 1):
                out.append(MultiPartition((p,) + tuple(rest)))
    return tuple(out)


@lru_cache(maxsize=None)
def rank_ring(r):
    return ring(ordered_names(("q", "t") + tuple(f"e{a}" for a in range(1, r + 1))))


def _rmono(R, a, b, ea=0, eb=0, r=None):
    """q^a t^b e_ea^{+1} e_eb^{-1} inside ring R (indices 1-based, 0 = absent)."""
    powers = {"q": a, "t": b}
    if ea:
        powers[f"e{ea}"] = powers.get(f"e{ea}", 0) + 1
    if eb:
        powers[f"e{eb}"] = powers.get(f"e{eb}", 0) - 1
    return R.mono(**powers)


def rankr_tangent(lam):
    lam = as_multipartition(lam)
    R = rank_ring(lam.rank)
    acc = R.zero()
    for al in range(1, lam.rank + 1):
        for be in range(1, lam.rank + 1):
            la, lb = lam[al - 1], lam[be - 1]
            for s in la.cells():
                acc = acc + _rmono(R, -arm(la, s) - 1, leg(lb, s), al, be)
            for s in lb.cells():
                acc = acc + _rmono(R, arm(lb, s), -leg(la, s) - 1, al, be)
    return acc


def rankr_taut(lam):
    lam = as_multipartition(lam)
    R = rank_ring(lam.rank)
    acc = R.zero()
    # same cell weight as the rank-one Fock layer: q along rows
    for al in range(1, lam.rank + 1):
        for i, j in lam[al - 1].cells():
            acc = acc + _rmono(R, j - 1, i - 1, 0, al)
    return acc


def rankr_W(r):
    R = rank_ring(r)
    acc = R.zero()
    for al in range(1, r + 1):
        acc = acc + R.mono(**{f"e{al}": -1})
    return acc


def _check_multi(mu, lam):
    mu, lam = as_multipartition(mu), as_multipartition(lam)
    if mu.rank != lam.rank or lam.size != mu.size + 1 or not all(contains(a, b) for a, b in zip(lam, mu)):
        raise ContainmentError(f"need {mu} inside {lam} with one extra cell")
    return mu, lam


def rankr_normal(mu, lam):
    mu, lam = _check_multi(mu, lam)
    r = lam.rank
    tm, tl = rankr_taut(mu), dual(rankr_taut(lam))
    W = rankr_W(r)
    R = rank_ring(r)
    qt1 = R.mono(q=-1, t=-1)
    return -(1 - R.mono(q=-1)) * (1 - R.mono(t=-1)) * tm * tl + tm * dual(W) + qt1 * tl * W - qt1


def rankr_taut_line(mu, lam):
    mu, lam = _check_multi(mu, lam)
    for al in range(1, lam.rank + 1):
        if lam[al - 1] != mu[al - 1]:
            i, j = skew_cell(lam[al - 1], mu[al - 1])
            return _rmono(rank_ring(lam.rank), j - 1, i - 1, 0, al)
    raise AssertionError


def rankr_tangent_relation(lam):
    """Right-hand side of the tangent/tautological relation."""
    lam = as_multipartition(lam)
    R = rank_ring(lam.rank)
    tau = rankr_taut(lam)
    W = rankr_W(lam.rank)
    qt1 = R.mono(q=-1, t=-1)
    return -(1 - R.mono(q=-1)) * (1 - R.mono(t=-1)) * tau * dual(tau) + tau * dual(W) + qt1 * dual(tau) * W


# ---------------------------------------------------------------------------
# character identity suites


def verify_virtual_characters(max_size=6):
    """The virtual character identities (a)-(e) on all pairs of sizes <= max_size."""
    from .report import Report

    rep = Report("virtual-characters", {"max_size": max_size}, max_size)
    qt = mono(1, 1)
    parts = [p for n in range(max_size + 1) for p in partitions_of(n)]

    def add(name, params, lhs, rhs):
        ok = lhs == rhs
        rep.add(name, params, ok, None if ok else {"lhs": str(lhs), "rhs": str(rhs)})

    for lam in parts:
        add("b", {"lam": list(lam)}, virtual_char(lam, lam), dual(tangent_char(lam)))
        for s in addable(lam):
            big = add_cell(lam, s)
            nstar = dual(normal_char(lam, big))
            add("c", {"lam": list(big), "mu": list(lam)}, nstar, virtual_char(big, lam) - qt)
            add("d", {"lam": list(lam), "mu": list(big)}, nstar, qt * dual(virtual_char(lam, big)) - qt)
        for mu in parts:
            p = {"lam": list(lam), "mu": list(mu)}
            v = virtual_char(lam, mu)
            add("a", p, v, qt * dual(virtual_char(mu, lam)))
            if not contains(lam, mu):
                add("e", p, lambda_char(v), K.zero())
            if not contains(mu, lam):
                add("e-dual", p, lambda_char(qt * dual(v)), K.zero())
    return rep


def verify_tangent_dimension(max_size=6):
    """T_lam has exactly 2|lam| monomials counted with multiplicity."""
    from .report import Report

    rep = Report("tangent-dimension", {"max_size": max_size}, max_size)
    for n in range(max_size + 1):
        for lam in partitions_of(n):
            total = sum(char_terms(tangent_char(lam)).values())
            rep.add("dimension", {"lam": list(lam)}, total == 2 * n)
    return rep
