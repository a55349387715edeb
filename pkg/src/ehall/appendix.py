"""Rational-function identities behind the diagonal commutators and the
functional equation of the virtual classes.

The identities are written once over an arbitrary field: they take their
variables as arguments and only use + - * /, so the same code runs on
exact symbolic FieldElements and on random rational points.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .exactfield import ring
from .partitions import partitions_of, garsia_tesler, b_stat, mono
from .report import Report


def _prod(items, one):
    acc = one
    for x in items:
        acc = acc * x
    return acc


# ---------------------------------------------------------------------------
# the identities, as (lhs, rhs) pairs


def kop_sides(xs, us, s, tq, one=1):
    """Partial fraction expansion of the gamma generating series."""
    r = len(xs)
    lhs = 0 * one
    for i in range(r + 1):
        T = _prod(((us[i] - x) / (tq * us[i] - x) for x in xs), one)
        T = T * _prod(((tq * us[i] - us[j]) / (us[i] - us[j]) for j in range(r + 1) if j != i), one)
        lhs = lhs + T / (1 - tq * us[i] * s)
    for i in range(r):
        S = _prod(((u - xs[i]) / (tq * u - xs[i]) for u in us), one)
        S = S * _prod(((tq * xs[j] - xs[i]) / (xs[j] - xs[i]) for j in range(r) if j != i), one)
        lhs = lhs - tq * S / (1 - xs[i] * s)
    prod = _prod(((1 - tq * x * s) / (1 - x * s) for x in xs), one)
    prod = prod * _prod(((1 - u * s) / (1 - tq * u * s) for u in us), one)
    rhs = one / (1 - tq) - tq / (1 - tq) * prod
    return lhs, rhs


def vert8_sides(xs, us, xs2, us2, one=1, literal=False):
    """The degree-one identity reducing the functional equation to the frames of lam and mu.

    The power-sum side enters with a minus sign: the residue sum equals
    (sum u - sum x) - (sum u' - sum x').  ``literal=True`` uses the
    opposite sign, which already fails for empty frames.
    """
    r, p = len(xs), len(xs2)
    lhs = (sum(us, 0 * one) - sum(xs, 0 * one)) - (sum(us2, 0 * one) - sum(xs2, 0 * one))
    if literal:
        lhs = -lhs
    rhs = 0 * one
    for i in range(r):
        term = _prod((u - xs[i] for u in us), one)
        term = term / _prod((xs[j] - xs[i] for j in range(r) if j != i), one)
        term = term * _prod((x - xs[i] for x in xs2), one)
        term = term / _prod((u - xs[i] for u in us2), one)
        rhs = rhs + term
    for i in range(p + 1):
        term = _prod((us2[i] - u for u in us), one)
        term = term / _prod((us2[i] - x for x in xs), one)
        term = term * _prod((us2[i] - x for x in xs2), one)
        term = term / _prod((us2[i] - us2[j] for j in range(p + 1) if j != i), one)
        rhs = rhs - term
    return lhs, rhs


def partial_fraction_sides(xis, p, one=1):
    """sum_i prod_{j != i} (p xi_i - xi_j)/(xi_i - xi_j) against 1 + p + ... + p^(n-1)."""
    n = len(xis)
    lhs = 0 * one
    for i in range(n):
        lhs = lhs + _prod(((p * xis[i] - xis[j]) / (xis[i] - xis[j]) for j in range(n) if j != i), one)
    rhs = sum((p ** k for k in range(n)), 0 * one)
    return lhs, rhs


# ---------------------------------------------------------------------------
# symbolic and randomized drivers


def _names(prefix, lo, hi):
    return [f"{prefix}{i}" for i in range(lo, hi)]


def _kop_symbolic(r):
    names = ["q", "t", "s"] + _names("x", 1, r + 1) + _names("u", 0, r + 1)
    R = ring(tuple(names))
    g = {n: R.gen(n) for n in names}
    xs = [g[n] for n in _names("x", 1, r + 1)]
    us = [g[n] for n in _names("u", 0, r + 1)]
    return kop_sides(xs, us, g["s"], g["q"] * g["t"], R.one())


def _vert8_symbolic(r, p, literal=False):
    names = _names("x", 1, r + 1) + _names("u", 0, r + 1) + _names("y", 1, p + 1) + _names("v", 0, p + 1)
    R = ring(tuple(names))
    g = {n: R.gen(n) for n in names}
    pick = lambda pre, lo, hi: [g[n] for n in _names(pre, lo, hi)]
    return vert8_sides(pick("x", 1, r + 1), pick("u", 0, r + 1), pick("y", 1, p + 1), pick("v", 0, p + 1), R.one(), literal)


def _pf_symbolic(n):
    names = ["p"] + _names("z", 1, n + 1)
    R = ring(tuple(names))
    g = {m: R.gen(m) for m in names}
    return partial_fraction_sides([g[m] for m in names[1:]], g["p"], R.one())


def _random_value(rng):
    num = rng.randint(-97, 97) or 1
    return Fraction(num, rng.randint(1, 31))


def _random_check(make, count, rng, trials):
    """Evaluate make(values) at random points; points hitting a pole are redrawn."""
    done = 0
    attempts = 0
    while done < trials:
        attempts += 1
        if attempts > 20 * trials:
            raise RuntimeError("too many poles while sampling")
        vals = [_random_value(rng) for _ in range(count)]
        try:
            lhs, rhs = make(vals)
        except ZeroDivisionError:
            continue
        done += 1
        if lhs != rhs:
            return {"point": [str(v) for v in vals], "lhs": str(lhs), "rhs": str(rhs)}
    return None


def verify_kop(symbolic_max=2, random_max=4, trials=100, seed=0):
    rep = Report("kop", {"symbolic_max": symbolic_max, "random_max": random_max, "trials": trials, "seed": seed}, 0)
    for r in range(symbolic_max + 1):
        lhs, rhs = _kop_symbolic(r)
        rep.add("symbolic", {"r": r}, lhs == rhs)
    rng = random.Random(seed)
    for r in range(random_max + 1):
        def make(v, r=r):
            tq, s = v[0], v[1]
            return kop_sides(v[2:2 + r], v[2 + r:], s, tq, Fraction(1))

        bad = _random_check(make, 3 + 2 * r, rng, trials)
        if bad is not None and r > symbolic_max:
            bad["symbolic"] = _symbolic_verdict(_kop_symbolic, r)
        rep.add("random", {"r": r}, bad is None, bad)
    return rep


def _symbolic_verdict(fn, *args):
    lhs, rhs = fn(*args)
    return "pass" if lhs == rhs else "fail"


def verify_vert8(symbolic_max=2, random_max=4, trials=100, seed=0, literal=False):
    rep = Report("vert8", {"symbolic_max": symbolic_max, "random_max": random_max, "trials": trials,
                           "seed": seed, "literal": literal}, 0)
    for r in range(symbolic_max + 1):
        for p in range(symbolic_max + 1):
            lhs, rhs = _vert8_symbolic(r, p, literal)
            rep.add("symbolic", {"r": r, "p": p}, lhs == rhs)
    rng = random.Random(seed)
    for r in range(random_max + 1):
        for p in range(random_max + 1):
            def make(v, r=r, p=p):
                a, b, c = r, 2 * r + 1, 2 * r + 1 + p
                return vert8_sides(v[:a], v[a:b], v[b:c], v[c:], Fraction(1), literal)

            bad = _random_check(make, 2 * r + 2 * p + 2, rng, trials)
            if bad is not None and max(r, p) > symbolic_max:
                bad["symbolic"] = _symbolic_verdict(_vert8_symbolic, r, p, literal)
            rep.add("random", {"r": r, "p": p}, bad is None, bad)
    return rep


def verify_partial_fractions(max_n=5):
    rep = Report("partial-fractions", {"max_n": max_n}, 0)
    for n in range(1, max_n + 1):
        lhs, rhs = _pf_symbolic(n)
        rep.add("symbolic", {"n": n}, lhs == rhs)
    return rep


def gt_sides(lam, m):
    """Both sides of the power-sum identity for the Garsia-Tesler frame of lam."""
    fr = garsia_tesler(lam)
    lhs = sum((x ** m for x in fr.x_vars), 0 * mono(0, 0)) - sum((u ** m for u in fr.u_vars), 0 * mono(0, 0))
    rhs = (1 - mono(0, -m)) * (1 - mono(-m, 0)) * b_stat(lam, m) - mono(-m, -m)
    return lhs, rhs


def verify_gt(max_size=8, ms=(1, 2, 3)):
    rep = Report("garsia-tesler", {"max_size": max_size, "m": list(ms)}, max_size)
    for n in range(1, max_size + 1):
        for lam in partitions_of(n):
            for m in ms:
                for sm in (m, -m):
                    lhs, rhs = gt_sides(lam, sm)
                    ok = lhs == rhs
                    rep.add("power-sums", {"lam": list(lam), "m": sm}, ok,
                            None if ok else {"lhs": str(lhs), "rhs": str(rhs)})
    return rep
