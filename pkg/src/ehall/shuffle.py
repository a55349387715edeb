"""The q,t-shuffle algebra with kernel g(z) = (1-tz)(1-qz)/((1-z)(1-tqz)).

Elements of degree r are exact symmetric rational functions in z1..zr
over K.  Variables are permuted directly on exponent vectors, so the
symmetrizations never go through general substitution.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import factorial

import flint

from .exactfield import FieldElement, ring_with, _terms
from .fock import matrices_equal, first_difference, hecke_twist, FOCK
from .report import Report


@lru_cache(maxsize=None)
def shuffle_ring(r):
    return ring_with(*[f"z{i}" for i in range(1, r + 1)])


def z(i, r):
    return shuffle_ring(r).gen(f"z{i}")


def kernel_g(x):
    """g(x) for a field element (or rational) x."""
    R = x.ring if isinstance(x, FieldElement) else shuffle_ring(0)
    q, t = R.gen("q"), R.gen("t")
    return (1 - t * x) * (1 - q * x) / ((1 - x) * (1 - t * q * x))


def zeta(x):
    """zeta(x) = g(1/x)."""
    return kernel_g(1 / x)


def _perm_poly(p, ctx, pos):
    """Move the exponent at index k to index pos[k]."""
    n = len(pos)
    out = {}
    for m, c in _terms(p):
        e = [0] * n
        for k, v in enumerate(m):
            e[pos[k]] = v
        out[tuple(e)] = c
    return ctx.from_dict(out)


def permute_vars(a, sigma, r):
    """Replace z_i by z_{sigma[i-1]} in an element of shuffle_ring(r)."""
    R = shuffle_ring(r)
    a = a.to_ring(R)
    pos = list(range(len(R.names)))
    for i, s in enumerate(sigma, start=1):
        pos[R.index[f"z{i}"]] = R.index[f"z{s}"]
    num = _perm_poly(a.num, R.ctx, pos)
    den = _perm_poly(a.den, R.ctx, pos)
    return FieldElement._make_sign(num, den, R)


def _sym(a, r):
    """Sum over all permutations, added over the lcm of the permuted denominators."""
    R = shuffle_ring(r)
    terms = [permute_vars(a, sigma, r) for sigma in permutations(range(1, r + 1))]
    common = None
    for x in terms:
        if common is None:
            common = x.den
        else:
            g = common.gcd(x.den)
            common = common * (x.den / g)
    num = R.ctx.from_dict({})
    for x in terms:
        num = num + x.num * (common / x.den)
    return FieldElement._make(num, common, R)


@lru_cache(maxsize=None)
def weight(r):
    """g(z_1, ..., z_r) = prod_{i<j} g(z_i/z_j)."""
    acc = shuffle_ring(r).one()
    for i in range(1, r + 1):
        for j in range(i + 1, r + 1):
            acc = acc * kernel_g(z(i, r) / z(j, r))
    return acc


class ShuffleElement:
    """A symmetric rational function in z1..zr (r = 0 is the unit)."""

    __slots__ = ("r", "value")

    def __init__(self, r, value, check=True):
        self.r = r
        self.value = value.to_ring(shuffle_ring(r)) if isinstance(value, FieldElement) else shuffle_ring(r).const(value)
        if check and r >= 2:
            for i in range(1, r):
                sigma = list(range(1, r + 1))
                sigma[i - 1], sigma[i] = sigma[i], sigma[i - 1]
                if permute_vars(self.value, sigma, r) != self.value:
                    raise ValueError("shuffle elements must be symmetric")

    def __eq__(self, other):
        return isinstance(other, ShuffleElement) and self.r == other.r and self.value == other.value

    def __add__(self, other):
        if self.r != other.r:
            raise ValueError("degrees differ")
        return ShuffleElement(self.r, self.value + other.value, check=False)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return ShuffleElement(self.r, self.value * c, check=False)

    def __mul__(self, other):
        return shuffle_mul(self, other)

    def is_symmetric(self):
        try:
            ShuffleElement(self.r, self.value)
        except ValueError:
            return False
        return True

    def serialize(self):
        return str(self.value)

    def __repr__(self):
        return f"ShuffleElement(r={self.r}, {self.value})"


def unit():
    return ShuffleElement(0, 1)


def laurent_monomial(exps):
    r = len(exps)
    R = shuffle_ring(r)
    return R.mono(**{f"z{i}": e for i, e in enumerate(exps, start=1)}) if r else R.one()


def psi_r(P, r=None):
    """Sym_r(g(z_1..z_r) P).  P is a FieldElement in z1..zr or an exponent tuple."""
    if isinstance(P, tuple):
        return _psi_monomial(P)
    return _psi(P, r)


@lru_cache(maxsize=None)
def _psi_monomial(exps):
    return _psi(laurent_monomial(exps), len(exps))


def _psi(P, r):
    if r is None:
        raise ValueError("give the number of variables")
    if r == 0:
        return ShuffleElement(0, P)
    return ShuffleElement(r, _sym(weight(r) * P.to_ring(shuffle_ring(r)), r), check=False)


def _shift_vars(a, r, offset, total):
    """z_i -> z_{i+offset}, moving an element of shuffle_ring(r) into shuffle_ring(total)."""
    a = a.to_ring(shuffle_ring(total))
    sigma = [i + offset for i in range(1, r + 1)]
    rest = [i for i in range(1, total + 1) if i not in sigma]
    return permute_vars(a, sigma + rest, total)


def shuffle_mul(h, f):
    """The shuffle product of elements of degrees r and r'."""
    r, s = h.r, f.r
    if r == 0:
        return f.scale(h.value)
    if s == 0:
        return h.scale(f.value)
    n = r + s
    R = shuffle_ring(n)
    cross = R.one()
    for i in range(1, r + 1):
        for j in range(r + 1, n + 1):
            cross = cross * kernel_g(z(i, n) / z(j, n))
    body = cross * h.value.to_ring(R) * _shift_vars(f.value, s, r, n)
    return ShuffleElement(n, _sym(body, n) / (factorial(r) * factorial(s)), check=False)


# ---------------------------------------------------------------------------
# suites


def _monomials(r, exps):
    return list(product(exps, repeat=r))


def verify_diagram(max_total=4, exps=(-1, 0, 1)):
    """shuffle_mul(Psi_r(P), Psi_r'(Q)) = Psi_{r+r'}(P Q) on monomials."""
    rep = Report("shuffle-diagram", {"max_total": max_total, "exponents": list(exps)}, max_total)
    for n in range(2, max_total + 1):
        for r in range(1, n):
            for a in _monomials(r, exps):
                for b in _monomials(n - r, exps):
                    ok = shuffle_mul(psi_r(a), psi_r(b)) == psi_r(a + b)
                    rep.add("diagram", {"P": list(a), "Q": list(b)}, ok)
    return rep


def verify_associativity(max_total=4, exps=(-1, 0, 1)):
    rep = Report("shuffle-associativity", {"max_total": max_total, "exponents": list(exps)}, max_total)
    for n in range(3, max_total + 1):
        for r1 in range(1, n - 1):
            for r2 in range(1, n - r1):
                r3 = n - r1 - r2
                for a, b, c in product(_monomials(r1, exps[:2]), _monomials(r2, exps[1:]), _monomials(r3, exps[:2])):
                    x, y, w = psi_r(a), psi_r(b), psi_r(c)
                    ok = (x * y) * w == x * (y * w)
                    rep.add("associativity", {"a": list(a), "b": list(b), "c": list(c)}, ok)
    for r in range(0, 3):
        for a in _monomials(r, exps[:2]):
            x = psi_r(a) if r else unit()
            rep.add("unit", {"a": list(a)}, unit() * x == x and x * unit() == x)
    return rep


# -- rank comparison ----------------------------------------------------------


def _sample_point(rng, names):
    """Random nonzero rationals; q and t are squares so half powers stay rational."""
    out = {}
    for nm in names:
        if nm in ("q", "t"):
            a, b = rng.randint(2, 13), rng.randint(1, 7)
            out[nm] = Fraction(a * a, b * b)
        else:
            out[nm] = Fraction(rng.randint(-60, 60) or 1, rng.randint(1, 17))
    return out


def _rank(rows):
    if not rows or not rows[0]:
        return 0
    m = flint.fmpq_mat(len(rows), len(rows[0]), [flint.fmpq(x.numerator, x.denominator) for row in rows for x in row])
    return m.rank()


def _eval(a, point):
    return a.eval({k: v for k, v in point.items() if k in a.ring.index})


def operator_vector(A, degree):
    """Entries of A on all source degrees <= degree, in basis order."""
    out = []
    for n in range(degree + 1):
        if n + A.shift < 0:
            continue
        rows = FOCK.basis(n + A.shift)
        for c in FOCK.basis(n):
            col = A.column(c)
            out += [col.get(k) for k in rows]
    return out


def exact_rank(vectors):
    """Rank of a list of equal-length vectors over K by Gaussian elimination."""
    rows = [[x for x in v] for v in vectors]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(rows)):
            x = rows[i][col]
            if x is not None and not x.is_zero():
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][col]
        for i in range(rank + 1, len(rows)):
            x = rows[i][col]
            if x is None or x.is_zero():
                continue
            c = x / p
            rows[i] = [(a if a is not None else 0) - c * (b if b is not None else 0) for a, b in zip(rows[i], rows[rank])]
            rows[i] = [None if (not isinstance(a, FieldElement) and a == 0) else a for a in rows[i]]
        rank += 1
        if rank == len(rows):
            break
    return rank


def _specialized_operator_rank(vectors, rng):
    point = _sample_point(rng, ("q", "t"))
    rows = [[Fraction(0) if x is None else _eval(x, point) for x in v] for v in vectors]
    return _rank(rows)


def _specialized_function_rank(funcs, rng, r):
    names = ["q", "t"] + [f"z{i}" for i in range(1, r + 1)]
    rows = []
    while len(rows) < len(funcs) + 4:
        point = _sample_point(rng, names)
        try:
            rows.append([_eval(f, point) for f in funcs])
        except ZeroDivisionError:
            continue
        except ArithmeticError:
            continue
    return _rank([list(col) for col in zip(*rows)])


def upsilon_rank_check(exponents, degree, seed=0):
    """Compare the span of Omega(u_{1,k})Omega(u_{1,l}) with that of Psi_2(z1^k z2^l)."""
    from .hall import omega

    rng = random.Random(seed)
    rep = Report("upsilon-rank", {"exponents": list(exponents), "seed": seed}, degree)
    pairs = [(k, l) for k in exponents for l in exponents]
    ops = [omega((1, k)) * omega((1, l)) for k, l in pairs]
    vectors = [operator_vector(A, degree) for A in ops]
    funcs = [psi_r((k, l)).value for k, l in pairs]
    op_rank = _specialized_operator_rank(vectors, rng)
    fn_rank = _specialized_function_rank(funcs, rng, 2)
    method = "specialized"
    if op_rank != fn_rank:
        op_rank = exact_rank(vectors)
        fn_rank = _exact_function_rank(funcs)
        method = "exact"
    rep.extra["operator_rank"] = op_rank
    rep.extra["shuffle_rank"] = fn_rank
    rep.extra["method"] = method
    rep.extra["note"] = "consistency evidence at bounded degree, not a proof"
    rep.add("rank", {"pairs": len(pairs)}, op_rank == fn_rank, None if op_rank == fn_rank else
            {"operator_rank": op_rank, "shuffle_rank": fn_rank})
    R = shuffle_ring(2)
    z1, z2 = R.gen("z1"), R.gen("z2")
    for k, l in pairs:
        lhs = _sym(zeta(z2 / z1) * z1 ** k * z2 ** l, 2)
        rhs = _sym(zeta(z1 / z2) * z2 ** k * z1 ** l, 2)
        ok = lhs == rhs == psi_r((k, l)).value
        rep.add("functional-equation", {"k": k, "l": l}, ok)
        rep.add("wheel-free", {"k": k, "l": l}, _no_diagonal_pole(psi_r((k, l)).value))
    return rep


def _no_diagonal_pole(a):
    """True when z1 - z2 does not divide the reduced denominator."""
    R = a.ring
    diff = (R.gen("z1") - R.gen("z2")).num
    return a.den.gcd(diff).is_one()


def _exact_function_rank(funcs):
    """Rank over K: numerators over a common denominator, split by z-monomial."""
    R = funcs[0].ring
    zpos = [R.index[n] for n in R.names if n not in ("q", "t")]
    common = None
    for f in funcs:
        common = f.den if common is None else common * f.den / common.gcd(f.den)
    vectors = []
    for f in funcs:
        groups = {}
        for m, c in _terms(f.num * (common / f.den)):
            key = tuple(m[k] for k in zpos)
            qt = R.mono_half([0 if k in zpos else m[k] for k in range(len(m))]) * int(c)
            groups[key] = groups[key] + qt if key in groups else qt
        vectors.append(groups)
    keys = sorted(set(k for v in vectors for k in v))
    return exact_rank([[v.get(k) for k in keys] for v in vectors])


def verify_hecke_compatibility(values=(-1, 0, 1), ls=(-1, 1, 2), degree=5):
    """p_l(z1,z2) Psi_2(z1^a z2^b) against the tautological twist of the operator product."""
    from .hall import omega

    rep = Report("shuffle-hecke", {"a,b": list(values), "l": list(ls)}, degree)
    R = shuffle_ring(2)
    z1, z2 = R.gen("z1"), R.gen("z2")
    for a in values:
        for b in values:
            for l in ls:
                p = {"a": a, "b": b, "l": l}
                lhs = (z1 ** l + z2 ** l) * psi_r((a, b)).value
                rhs = psi_r((a + l, b)).value + psi_r((a, b + l)).value
                rep.add("shuffle-side", p, lhs == rhs)
                A = hecke_twist(l, omega((1, a)) * omega((1, b)))
                B = omega((1, a + l)) * omega((1, b)) + omega((1, a)) * omega((1, b + l))
                bad = None
                for n in range(degree + 1):
                    if not matrices_equal(A, B, n):
                        bad = {"degree": n, "entry": first_difference(A, B, n)}
                        break
                rep.add("operator-side", p, bad is None, bad)
    return rep
