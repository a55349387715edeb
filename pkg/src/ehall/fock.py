"""The Fock representation on the free K-module spanned by partitions.

Operators are exact, lazily evaluated rules.  An operator knows its degree
shift and how to produce the column of a basis vector (the image of that
vector as a finite combination of basis vectors).  Sums, products and
commutators are again operators; columns are memoized per operator, and
nothing is truncated until a matrix is materialized for a fixed degree.

The same machinery serves the higher-rank module, whose basis is made of
multipartitions (see ``rankr``).
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache

from .exactfield import K, FieldElement, FormalSeries, ps_exp, ps_log, to_text
from .partitions import (
    Partition, EMPTY, partitions_of, addable, removable, add_cell, remove_cell, arm, leg,
    conjugate, n_stat, contains, b_stat, mono, lambda_N_star, lambda_T_star, as_partition,
)

Q = K.gen("q")
T = K.gen("t")
Q_HALF = K.gen("q", 1)
T_HALF = K.gen("t", 1)
ONE = K.one()
ZERO = K.zero()


def cell_weight(s, l=1):
    """(q^(j-1) t^(i-1))^l for the box s = (i, j): q runs along rows."""
    i, j = s
    return mono(l * (j - 1), l * (i - 1))


def weight_sum(nu, l):
    """Sum of cell weights over nu; the eigenvalue of f_{0,l}."""
    return b_stat(conjugate(nu), l)


class SupportError(ValueError):
    """An entry outside the support required by an operation."""


class DegreeError(ValueError):
    pass


# ---------------------------------------------------------------------------
# bases


class FockSpace:
    """Rank one: basis indexed by partitions."""

    rank = 1

    def basis(self, n):
        return partitions_of(n) if n >= 0 else ()

    def size(self, key):
        return key.size

    def contains(self, big, small):
        return contains(big, small)

    def skew_char(self, big, small, l):
        """Sum over the cells of big minus small of q^(l x) t^(l y)."""
        return weight_sum(big, l) - weight_sum(small, l)

    def label(self, key):
        return str(key)

    def __repr__(self):
        return "FockSpace()"


FOCK = FockSpace()


# ---------------------------------------------------------------------------
# vectors


class FockVector:
    """Finite K-linear combination of basis keys."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        for k, v in (terms or {}).items():
            if v != 0:
                self.terms[k] = v

    @classmethod
    def basis(cls, key):
        if isinstance(key, (list, tuple)) and not isinstance(key, Partition) and \
                (not key or isinstance(key[0], int)):
            key = Partition(key)
        return cls({key: ONE})

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return FockVector(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return FockVector({k: c * v for k, v in self.terms.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.terms == other.terms

    def __getitem__(self, key):
        return self.terms.get(key, ZERO)

    def __iter__(self):
        return iter(self.terms.items())

    def is_zero(self):
        return not self.terms

    def __repr__(self):
        inner = ", ".join(f"{k}: {to_text(v)}" for k, v in self.terms.items())
        return f"FockVector({{{inner}}})"


def basis_vector(key):
    return FockVector.basis(key)


# ---------------------------------------------------------------------------
# operators


def _add_into(out, key, value):
    if key in out:
        s = out[key] + value
        if s.is_zero():
            del out[key]
        else:
            out[key] = s
    elif not value.is_zero():
        out[key] = value


class FockOperator:
    """Degree-homogeneous operator given by an exact column rule.

    ``rule(key)`` returns a dict target -> FieldElement for the image of the
    basis vector ``key``; every target has size(key) + shift.
    """

    def __init__(self, shift, rule, space=FOCK, label="", kind=None):
        self.shift = shift
        self._rule = rule
        self.space = space
        self.label = label
        self.kind = kind
        self._cache = {}

    def __repr__(self):
        return f"FockOperator({self.label or '?'}, shift={self.shift})"

    def column(self, key):
        col = self._cache.get(key)
        if col is None:
            col = {k: v for k, v in self._rule(key).items() if not v.is_zero()}
            self._cache[key] = col
        return col

    def entry(self, target, source):
        return self.column(source).get(target, ZERO)

    def apply(self, vec):
        out = {}
        for key, c in vec.terms.items():
            for tgt, v in self.column(key).items():
                _add_into(out, tgt, c * v)
        return FockVector(out)

    def __call__(self, vec):
        return self.apply(vec)

    # -- algebra ------------------------------------------------------------

    def _check(self, other):
        if self.space is not other.space:
            raise ValueError("operators act on different spaces")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, FieldElement)):
            return self + scalar_op(other, self.space)
        self._check(other)
        if other.kind == "zero":
            return self
        if self.kind == "zero":
            return other
        if self.shift != other.shift:
            raise DegreeError("sum of operators with different shifts")
        a, b = self, other

        def rule(key):
            out = dict(a.column(key))
            for k, v in b.column(key).items():
                _add_into(out, k, v)
            return out

        return FockOperator(self.shift, rule, self.space, f"({a.label} + {b.label})")

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, FieldElement)):
            return self + (-other)
        return self + other.scale(-1)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        if isinstance(c, (int, Fraction)):
            c = K.const(c)
        if c.is_zero():
            return zero_op(self.shift, self.space)
        if c == 1:
            return self
        a = self

        def rule(key):
            return {k: c * v for k, v in a.column(key).items()}

        return FockOperator(self.shift, rule, self.space, f"{to_text(c)}*{a.label}",
                            "scalar" if a.kind == "scalar" else None)

    def compose(self, other):
        """self after other."""
        self._check(other)
        if self.kind == "zero" or other.kind == "zero":
            return zero_op(self.shift + other.shift, self.space)
        if self.kind == "identity":
            return other
        if other.kind == "identity":
            return self
        a, b = self, other

        def rule(key):
            out = {}
            for mid, c in b.column(key).items():
                for tgt, v in a.column(mid).items():
                    _add_into(out, tgt, c * v)
            return out

        return FockOperator(a.shift + b.shift, rule, self.space, f"{a.label}*{b.label}")

    def __mul__(self, other):
        if isinstance(other, FockOperator):
            return self.compose(other)
        if isinstance(other, (int, Fraction, FieldElement)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, FieldElement)):
            return self.scale(other)
        return NotImplemented

    def is_identity_operator(self):
        return self.kind == "identity"

    def is_zero_operator(self):
        return self.kind == "zero"

    # -- materialization ------------------------------------------------------

    def matrix(self, degree):
        return op_matrix(self, degree)


def zero_op(shift=0, space=FOCK):
    return FockOperator(shift, lambda key: {}, space, "0", "zero")


def identity_op(space=FOCK):
    return FockOperator(0, lambda key: {key: ONE}, space, "1", "identity")


def scalar_op(c, space=FOCK):
    c = c if isinstance(c, FieldElement) else K.const(c)
    if c.is_zero():
        return zero_op(0, space)
    if c == 1:
        return identity_op(space)
    return FockOperator(0, lambda key: {key: c}, space, to_text(c), "scalar")


def diagonal_op(eigen, space=FOCK, label="diag"):
    return FockOperator(0, lambda key: {key: eigen(key)}, space, label)


def op_add(a, b):
    return a + b


def op_scale(c, a):
    return a.scale(c)


def op_compose(a, b):
    return a.compose(b)


def op_commutator(a, b):
    return a.compose(b) - b.compose(a)


def op_apply(a, v):
    return a.apply(v)


def op_matrix(a, degree):
    """Rows: basis of degree + shift, columns: basis of degree (descending lex)."""
    if degree < 0 or degree + a.shift < 0:
        raise DegreeError(f"negative degree: source {degree}, target {degree + a.shift}")
    rows = a.space.basis(degree + a.shift)
    cols = a.space.basis(degree)
    return [[a.entry(r, c) for c in cols] for r in rows]


def matrices_equal(a, b, degree):
    if a.space is not b.space:
        return False
    cols = a.space.basis(degree)
    if degree + a.shift < 0 and degree + b.shift < 0:
        return True
    for c in cols:
        ca, cb = a.column(c), b.column(c)
        if set(ca) != set(cb):
            return False
        for k in ca:
            if ca[k] != cb[k]:
                return False
    return True


def first_difference(a, b, degree):
    """First (row, col, lhs, rhs) where the matrices differ, else None."""
    for c in a.space.basis(degree):
        ca, cb = a.column(c), b.column(c)
        for k in sorted(set(ca) | set(cb), key=str):
            x, y = ca.get(k, ZERO), cb.get(k, ZERO)
            if x != y:
                return (a.space.label(k), a.space.label(c), to_text(x), to_text(y))
    return None


def matrix_dump(a, degree):
    """JSON-ready dict in the documented matrix schema."""
    rows = a.space.basis(degree + a.shift)
    cols = a.space.basis(degree)
    m = op_matrix(a, degree)
    return {
        "degree": degree,
        "shift": a.shift,
        "row_basis": [_key_json(r) for r in rows],
        "col_basis": [_key_json(c) for c in cols],
        "entries": [[to_text(x) for x in row] for row in m],
    }


def _key_json(key):
    if isinstance(key, Partition):
        return list(key)
    return [list(c) for c in key]


# ---------------------------------------------------------------------------
# the combinatorial generators


@lru_cache(maxsize=None)
def _t_pow_minus_q_pow(l, a):
    return mono(0, l) - mono(a, 0)


@lru_cache(maxsize=None)
def pieri_up(nu, s):
    """L_{nu,mu} for mu = nu + s, arms and legs in nu."""
    i, j = s
    acc = ONE
    for i2 in range(1, i):
        c = (i2, j)
        a, l = arm(nu, c), leg(nu, c)
        acc = acc * (mono(0, l) - mono(a + 1, 0)) / (mono(0, l + 1) - mono(a + 1, 0))
    for j2 in range(1, j):
        c = (i, j2)
        a, l = arm(nu, c), leg(nu, c)
        acc = acc * (mono(0, l + 1) - mono(a, 0)) / (mono(0, l + 1) - mono(a + 1, 0))
    return acc


@lru_cache(maxsize=None)
def pieri_down(nu, s):
    """L_{nu,lam} for lam = nu - s, arms and legs in nu."""
    i, j = s
    acc = ONE
    for i2 in range(1, i):
        c = (i2, j)
        a, l = arm(nu, c), leg(nu, c)
        acc = acc * (mono(0, l + 1) - mono(a, 0)) / (mono(0, l) - mono(a, 0))
    for j2 in range(1, j):
        c = (i, j2)
        a, l = arm(nu, c), leg(nu, c)
        acc = acc * (mono(0, l) - mono(a + 1, 0)) / (mono(0, l) - mono(a, 0))
    return acc


_QT_INV = ONE / ((1 - Q) * (1 - T))


@lru_cache(maxsize=None)
def f_plus(r):
    def rule(nu):
        out = {}
        for s in addable(nu):
            out[add_cell(nu, s)] = cell_weight(s, r + 1) * pieri_up(nu, s) * _QT_INV
        return out

    return FockOperator(1, rule, FOCK, f"f+({r})")


@lru_cache(maxsize=None)
def f_minus(r):
    def rule(nu):
        out = {}
        for s in removable(nu):
            out[remove_cell(nu, s)] = cell_weight(s, r) * pieri_down(nu, s)
        return out

    return FockOperator(-1, rule, FOCK, f"f-({r})")


def _nonzero(l):
    if l == 0:
        raise ValueError("index must be nonzero")


@lru_cache(maxsize=None)
def f_zero(l):
    _nonzero(l)
    return diagonal_op(lambda nu: weight_sum(nu, l), FOCK, f"f0({l})")


def elementary(values, k):
    """k-th elementary symmetric function of a list of field elements."""
    e = [ONE] + [ZERO] * k
    for v in values:
        for m in range(k, 0, -1):
            e[m] = e[m] + e[m - 1] * v
    return e[k]


@lru_cache(maxsize=None)
def e_zero(l):
    _nonzero(l)
    sign = 1 if l > 0 else -1

    def eig(nu):
        if abs(l) > nu.size:
            return ZERO
        return elementary([cell_weight(s, sign) for s in nu.cells()], abs(l))

    return diagonal_op(eig, FOCK, f"e0({l})")


def h_constant(n):
    """The scalar 1/((1-q^n)(1-t^n))."""
    return ONE / ((1 - mono(n, 0)) * (1 - mono(0, n)))


@lru_cache(maxsize=None)
def h_op(i, l):
    if i == 1:
        op = f_plus(l - 1).scale(T_HALF)
    elif i == -1:
        op = f_minus(l).scale(-Q_HALF)
    elif i == 0:
        if l == 0:
            raise ValueError("h(0,0) is not defined")
        if l > 0:
            op = f_zero(l) - h_constant(l)
        else:
            op = -f_zero(l) + h_constant(l)
    else:
        raise ValueError("first index must be -1, 0 or 1")
    op.label = f"h({i},{l})"
    return op


@lru_cache(maxsize=None)
def nabla():
    return diagonal_op(lambda nu: mono(n_stat(conjugate(nu)), n_stat(nu)), FOCK, "nabla")


@lru_cache(maxsize=None)
def nabla_inv():
    return diagonal_op(lambda nu: mono(-n_stat(conjugate(nu)), -n_stat(nu)), FOCK, "nabla^-1")


def hecke_twist(l, A):
    """Multiply every entry <lam|A|mu> by the sum of l-th powers of the cell weights of lam minus mu."""
    _nonzero(l)
    if A.shift < 0:
        raise SupportError("hecke twist needs a nonnegative shift")
    space = A.space

    def rule(mu):
        out = {}
        for lam, v in A.column(mu).items():
            if not space.contains(lam, mu):
                raise SupportError(f"entry at ({space.label(lam)}, {space.label(mu)}) outside mu inside lam")
            w = space.skew_char(lam, mu, l)
            if not w.is_zero():
                out[lam] = w * v
        return out

    return FockOperator(A.shift, rule, space, f"tw{l}({A.label})")


# ---------------------------------------------------------------------------
# localization route (cross-check only)


@lru_cache(maxsize=None)
def loc_f_plus(r):
    """<mu|f_{1,r}|nu> = tau^r Lambda(N*) / Lambda(T*_mu) on fixed-point classes."""

    def rule(nu):
        out = {}
        for s in addable(nu):
            mu = add_cell(nu, s)
            out[mu] = cell_weight(s, r) * lambda_N_star(nu, mu) / lambda_T_star(mu)
        return out

    return FockOperator(1, rule, FOCK, f"loc f+({r})")


@lru_cache(maxsize=None)
def loc_f_minus(r):
    def rule(nu):
        out = {}
        for s in removable(nu):
            lam = remove_cell(nu, s)
            out[lam] = cell_weight(s, r) * lambda_N_star(lam, nu) / lambda_T_star(lam)
        return out

    return FockOperator(-1, rule, FOCK, f"loc f-({r})")


def localization_ratio(r, up=True):
    """Entrywise ratio localized / combinatorial on the first few degrees."""
    out = {}
    for n in range(0, 4):
        for nu in partitions_of(n):
            a = (loc_f_plus(r) if up else loc_f_minus(r)).column(nu)
            b = (f_plus(r) if up else f_minus(r)).column(nu)
            for k in a:
                out[(nu, k)] = a[k] / b[k]
    return out


# ---------------------------------------------------------------------------
# virtual classes


def _virtual_series(order, sign):
    from .hall import omega

    if order < 0:
        raise ValueError("order must be nonnegative")
    coeffs = [0]
    for n in range(1, order + 1):
        if sign > 0:
            a = omega((n, n)).scale(mono(0, Fraction(-n, 2)))
            c = Fraction(-(-1) ** n, n)
        else:
            a = omega((-n, 0)).scale(mono(Fraction(-n, 2), 0))
            c = Fraction(-1, n)
        coeffs.append(a.scale((1 - mono(n, n)) * c))
    return ps_exp(FormalSeries(coeffs), one=identity_op())


@lru_cache(maxsize=None)
def virtual_plus_series(order):
    """Lambda^+(V)(z) to z^order as a series of operators."""
    return _virtual_series(order, +1)


@lru_cache(maxsize=None)
def virtual_minus_series(order):
    """Lambda^-(V)(z) to z^order as a series of operators (shifts -k)."""
    return _virtual_series(order, -1)


# ---------------------------------------------------------------------------
# invariant suites


def _nonzero_range(rng):
    return [l for l in range(-rng, rng + 1) if l != 0]


def verify_zero_modes(rng=3, degree=6):
    """f_{0,l} commute with each other and shift the index of f_{+-1,k}."""
    from .report import Report, compare

    rep = Report("f0-commutation", {"range": rng}, degree)
    for l in _nonzero_range(rng):
        for k in _nonzero_range(rng):
            if k > l:
                compare(rep, "f0-f0", {"l": l, "k": k}, op_commutator(f_zero(l), f_zero(k)), zero_op(), degree)
        for k in range(-rng, rng + 1):
            compare(rep, "f0-f+", {"l": l, "k": k}, op_commutator(f_zero(l), f_plus(k)), f_plus(k + l), degree)
            compare(rep, "f0-f-", {"l": l, "k": k}, op_commutator(f_zero(l), f_minus(k)),
                    -f_minus(k + l), degree, start=1)
    return rep


def off_diagonal_entries(A, degree):
    """(row, col) labels of nonzero off-diagonal entries on source degrees <= degree."""
    out = []
    for n in range(degree + 1):
        for c in A.space.basis(n):
            for k in A.column(c):
                if k != c:
                    out.append((str(k), str(c)))
    return out


def gamma(m, k=0):
    """[f_{-1,k}, f_{1,l-1}] with k + l = m."""
    return op_commutator(f_minus(k), f_plus(m - k - 1))


def verify_gamma(rng=2, degree=6):
    """Diagonal support of [f_{1,l}, f_{-1,k}] and dependence on k + l only."""
    from .report import Report, compare

    rep = Report("gamma", {"range": rng}, degree)
    for l in range(-rng, rng + 1):
        for k in range(-rng, rng + 1):
            bad = off_diagonal_entries(op_commutator(f_plus(l), f_minus(k)), degree)
            rep.add("diagonal-support", {"l": l, "k": k}, not bad, bad[:1] or None)
    for m in range(-rng, rng + 1):
        ref = gamma(m, 0)
        for k in (-1, 1):
            compare(rep, "gamma-stability", {"m": m, "k": k}, ref, gamma(m, k), degree)
    return rep


def gamma_series_eigen(nu, order, sign=1):
    """Right side of the gamma generating series on the basis vector nu.

    Returns the coefficients of s^0..s^order of
    (1-q)(1-t) sum_m gamma_{sign*m} s^m.
    """
    qt = mono(1, 1)
    coeffs = [0]
    for n in range(1, order + 1):
        if sign > 0:
            c = (1 - qt ** n) * ((1 - mono(-n, 0)) * (1 - mono(0, -n)) * weight_sum(nu, n) - qt ** (-n))
        else:
            c = (1 - qt ** (-n)) * ((1 - mono(n, 0)) * (1 - mono(0, n)) * weight_sum(nu, -n) - qt ** n)
        coeffs.append(c / n)
    e = ps_exp(FormalSeries(coeffs), one=ONE)
    if sign > 0:
        out = [(ONE if i == 0 else ZERO) - qt * e[i] for i in range(order + 1)]
    else:
        out = [(-qt if i == 0 else ZERO) + e[i] for i in range(order + 1)]
    return [x / (1 - qt) for x in out]


def verify_gamma_series(order=5, degree=6):
    """The generating series of the diagonal operators gamma_m, both signs."""
    from .report import Report

    rep = Report("gamma-series", {"order": order}, degree)
    lam = (1 - Q) * (1 - T)
    for sign in (1, -1):
        ops = [gamma(sign * m) for m in range(order + 1)]
        for n in range(degree + 1):
            for nu in partitions_of(n):
                rhs = gamma_series_eigen(nu, order, sign)
                for m, op in enumerate(ops):
                    col = op.column(nu)
                    if set(col) - {nu}:
                        rep.add("gamma-series", {"sign": sign, "m": m, "nu": list(nu)}, False, "off-diagonal")
                        continue
                    lhs = lam * col.get(nu, ZERO)
                    ok = lhs == rhs[m]
                    rep.add("gamma-series", {"sign": sign, "m": m, "nu": list(nu)}, ok,
                            None if ok else {"lhs": to_text(lhs), "rhs": to_text(rhs[m])})
    return rep


def newton_series(nu, order, sign=1, alternating=False):
    """(lhs, rhs) coefficient lists for the log-derivative relation on nu.

    lhs: sum_l (-1)^l f_{0,sign l} s^(l-1); rhs: -d/ds log E(s) with
    E(s) = 1 + sum_k c^k e_{0,sign k} s^k, where c = -1 if ``alternating``
    and c = 1 otherwise.
    """
    c = -1 if alternating else 1
    e = [ONE] + [c ** k * e_zero(sign * k).column(nu).get(nu, ZERO) for k in range(1, order + 1)]
    log = ps_log(FormalSeries(e))
    rhs = [-(k + 1) * log[k + 1] for k in range(order)]
    lhs = [(-1) ** l * weight_sum(nu, sign * l) for l in range(1, order + 1)]
    return lhs, rhs


def verify_newton(max_size=8, alternating=False):
    from .report import Report

    rep = Report("newton", {"alternating": alternating}, max_size)
    for n in range(max_size + 1):
        for nu in partitions_of(n):
            for sign in (1, -1):
                lhs, rhs = newton_series(nu, n + 2, sign, alternating)
                ok = all(a == b for a, b in zip(lhs, rhs))
                rep.add("log-derivative", {"nu": list(nu), "sign": sign}, ok)
    return rep


def verify_hecke(rng=2, degree=5):
    """Entrywise tautological twist against the commutator with f_{0,l}."""
    from .report import Report, compare

    rep = Report("hecke", {"range": rng}, degree)
    ls = _nonzero_range(rng)
    for l in ls:
        for a in range(-rng, rng + 1):
            A = f_plus(a)
            compare(rep, "rank1", {"l": l, "a": a}, hecke_twist(l, A), op_commutator(f_zero(l), A), degree)
            for b in range(-rng, rng + 1):
                A = f_plus(a) * f_plus(b)
                compare(rep, "rank2", {"l": l, "a": a, "b": b}, hecke_twist(l, A),
                        op_commutator(f_zero(l), A), degree)
    return rep


def verify_torsion_shadow(rng=2, degree=5):
    """hecke_twist(l, Omega(u_{1,k})) is not the zero operator."""
    from .hall import omega
    from .report import Report

    rep = Report("hecke-torsion", {"range": rng}, degree)
    for l in _nonzero_range(rng):
        for k in range(-rng, rng + 1):
            tw = hecke_twist(l, omega((1, k)))
            nonzero = any(tw.column(c) for n in range(degree + 1) for c in FOCK.basis(n))
            rep.add("nonzero", {"l": l, "k": k}, nonzero)
    return rep


def verify_virtual(order=4, degree=6):
    """Functional equation, first coefficient and support of Lambda^+(V)(z).

    Checks are done on every source degree whose image stays within
    ``degree``.
    """
    from .report import Report, compare

    rep = Report("virtual", {"order": order}, degree)
    A = virtual_plus_series(order)
    f01, f11 = f_zero(1), f_plus(1)
    qt = mono(1, 1)
    for k in range(1, order + 1):
        top = degree - k
        if top < 0:
            continue
        lhs = op_commutator(f01, A[k])
        rhs = A[k - 1] * f11 - (f11 * A[k - 1]).scale(qt)
        compare(rep, "FE", {"k": k}, lhs, rhs, top)
        bad = []
        for n in range(top + 1):
            for mu in FOCK.basis(n):
                bad += [(str(lam), str(mu)) for lam in A[k].column(mu) if not contains(lam, mu)]
        rep.add("support", {"k": k}, not bad, bad[:1] or None)
    if order >= 1:
        compare(rep, "z1", {}, A[1], f_plus(0).scale(1 - qt), degree - 1)
    return rep
