"""Symmetric functions on the power-sum basis, Macdonald polynomials and H-tilde.

``SymFunc`` stores a finitely supported map partition -> coefficient, read
on the basis p_lambda.  Macdonald polynomials P_lambda(q, 1/t) are obtained
in |lambda| variables as eigenvectors of the first Macdonald difference
operator, by back substitution on the monomial basis, and then converted to
power sums.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

import flint

from .exactfield import K, FieldElement, to_text
from .partitions import (
    Partition, EMPTY, as_partition, partitions_of, arm, leg, n_stat, conjugate, mono, b_stat,
)

ONE = K.one()
ZERO = K.zero()


class MacdonaldError(ArithmeticError):
    pass


def _nonneg(n):
    if n < 1:
        raise ValueError("index must be positive")


# ---------------------------------------------------------------------------
# SymFunc


class SymFunc:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        for k, v in (terms or {}).items():
            if not isinstance(v, FieldElement):
                v = K.const(v)
            if not v.is_zero():
                self.terms[as_partition(k)] = v

    @classmethod
    def one(cls):
        return cls({EMPTY: ONE})

    @classmethod
    def p(cls, *parts):
        return cls({Partition(tuple(sorted(parts, reverse=True))): ONE})

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return SymFunc(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        return SymFunc({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, SymFunc):
            return self.scale(other)
        out = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                k = Partition(tuple(sorted(a + b, reverse=True)))
                v = x * y
                out[k] = out[k] + v if k in out else v
        return SymFunc(out)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, SymFunc):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(tuple(sorted(self.terms)))

    def is_zero(self):
        return not self.terms

    def degree_part(self, n):
        return SymFunc({k: v for k, v in self.terms.items() if k.size == n})

    def degrees(self):
        return sorted({k.size for k in self.terms})

    def coeff(self, lam):
        return self.terms.get(as_partition(lam), ZERO)

    def map_terms(self, fn):
        """Apply fn(partition, coeff) -> SymFunc to each term and sum."""
        out = SymFunc()
        for k, v in self.terms.items():
            out = out + fn(k, v)
        return out

    def serialize(self):
        keys = sorted(self.terms, key=lambda k: (k.size, tuple(-x for x in k)))
        return [[list(k), to_text(self.terms[k])] for k in keys]

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, v in self.serialize():
            mon = "*".join(f"p{x}" for x in k) or "1"
            parts.append(f"({v})*{mon}")
        return " + ".join(parts)


def p_mult(n):
    _nonneg(n)

    def op(f):
        return SymFunc({Partition(tuple(sorted(k + (n,), reverse=True))): v for k, v in f.terms.items()})

    return op


def p_deriv(n):
    _nonneg(n)

    def op(f):
        out = {}
        for k, v in f.terms.items():
            m = k.count(n)
            if m:
                lst = list(k)
                lst.remove(n)
                key = Partition(tuple(lst))
                out[key] = out[key] + v * m if key in out else v * m
        return SymFunc(out)

    return op


def plethysm_scale(f, factor):
    """Algebra map p_r -> factor(r) p_r."""
    return SymFunc({k: v * _prod(factor(r) for r in k) for k, v in f.terms.items()})


def _prod(items):
    acc = ONE
    for x in items:
        acc = acc * x
    return acc


def gamma_t(f):
    return plethysm_scale(f, lambda r: 1 - mono(0, r))


def gamma_t_inv(f):
    return plethysm_scale(f, lambda r: 1 / (1 - mono(0, r)))


def omega_inv(f):
    """The involution p_r -> (-1)^(r-1) p_r."""
    return SymFunc({k: v if (k.size - len(k)) % 2 == 0 else -v for k, v in f.terms.items()})


# ---------------------------------------------------------------------------
# finite variable computations


class NVariablePoly:
    """Polynomial in x_1..x_n with coefficients in Z[q, t], backed by flint."""

    def __init__(self, n, poly):
        self.n = n
        self.poly = poly

    @staticmethod
    @lru_cache(maxsize=None)
    def context(n):
        names = tuple(f"x{i}" for i in range(1, n + 1)) + ("q", "t")
        return flint.fmpz_mpoly_ctx.get(names, "deglex")

    @classmethod
    def monomial_symmetric(cls, mu, n):
        ctx = cls.context(n)
        exps = list(mu) + [0] * (n - len(mu))
        seen = set(_distinct_perms(tuple(exps)))
        return cls(n, ctx.from_dict({e + (0, 0): 1 for e in seen}))

    @classmethod
    def power_sum(cls, rho, n):
        ctx = cls.context(n)
        acc = ctx.constant(1)
        for r in rho:
            acc = acc * ctx.from_dict({tuple(r if j == i else 0 for j in range(n)) + (0, 0): 1 for i in range(n)})
        return cls(n, acc)

    def coefficients(self, keys):
        """Coefficients of x^mu for each partition mu in keys, as elements of K."""
        want = {tuple(mu) + (0,) * (self.n - len(mu)): mu for mu in keys}
        acc = {mu: {} for mu in keys}
        for e, c in self.poly.to_dict().items():
            mu = want.get(tuple(int(x) for x in e[: self.n]))
            if mu is not None:
                acc[mu][(2 * int(e[self.n]), 2 * int(e[self.n + 1]))] = int(c)
        return {mu: K.element(K.ctx.from_dict(d)) if d else ZERO for mu, d in acc.items()}

    def coefficient_of(self, mu):
        """Coefficient of x^mu (mu padded with zeros) as an element of K."""
        target = tuple(mu) + (0,) * (self.n - len(mu))
        out = {}
        for e, c in self.poly.to_dict().items():
            if tuple(int(x) for x in e[: self.n]) == target:
                out[(2 * int(e[self.n]), 2 * int(e[self.n + 1]))] = int(c)
        if not out:
            return ZERO
        return K.element(K.ctx.from_dict(out))

    def drop_last(self):
        """Set x_n = 0."""
        ctx = self.context(self.n - 1)
        out = {}
        for e, c in self.poly.to_dict().items():
            if int(e[self.n - 1]) == 0:
                out[tuple(int(x) for x in e[: self.n - 1]) + (int(e[self.n]), int(e[self.n + 1]))] = int(c)
        return NVariablePoly(self.n - 1, ctx.from_dict(out))


def _distinct_perms(seq):
    if len(seq) <= 1:
        yield seq
        return
    done = set()
    for i, x in enumerate(seq):
        if x in done:
            continue
        done.add(x)
        for rest in _distinct_perms(seq[:i] + seq[i + 1:]):
            yield (x,) + rest


@lru_cache(maxsize=None)
def _vandermonde_data(n):
    ctx = NVariablePoly.context(n)
    xs = ctx.gens()[:n]
    q, t = ctx.gens()[n], ctx.gens()[n + 1]
    weights = []
    for i in range(n):
        w = ctx.constant(1 if i % 2 == 0 else -1)
        for a in range(n):
            for b in range(a + 1, n):
                if a != i and b != i:
                    w = w * (xs[a] - xs[b])
        for j in range(n):
            if j != i:
                w = w * (xs[i] - t * xs[j])
        weights.append(w)
    return weights


def _shift_q(poly, i, n):
    """Substitute x_i -> q x_i."""
    ctx = NVariablePoly.context(n)
    out = {}
    for e, c in poly.to_dict().items():
        e = [int(x) for x in e]
        e[n] += e[i]
        out[tuple(e)] = int(c)
    return ctx.from_dict(out)


def macdonald_operator(f):
    """t^((n-1)/2) Delta_1^n = sum_i prod_{j != i} (x_i - t x_j)/(x_i - x_j) T_{q, x_i}."""
    n = f.n
    weights = _vandermonde_data(n)
    acc = NVariablePoly.context(n).constant(0)
    for i in range(n):
        acc = acc + weights[i] * _shift_q(f.poly, i, n)
    xs = NVariablePoly.context(n).gens()[:n]
    # one linear factor at a time is much cheaper than one division by V
    for i in range(n):
        for j in range(i + 1, n):
            acc, rem = divmod(acc, xs[i] - xs[j])
            if rem != 0:
                raise MacdonaldError("difference operator did not return a polynomial")
    return NVariablePoly(n, acc)


def dominates(a, b):
    sa = sb = 0
    for i in range(max(len(a), len(b))):
        sa += a[i] if i < len(a) else 0
        sb += b[i] if i < len(b) else 0
        if sa < sb:
            return False
    return True


@lru_cache(maxsize=None)
def _operator_matrix(n, size):
    """D m_mu = sum_nu d[mu][nu] m_nu over partitions of size with at most n parts."""
    basis = [mu for mu in partitions_of(size) if len(mu) <= n]
    out = {}
    for mu in basis:
        img = macdonald_operator(NVariablePoly.monomial_symmetric(mu, n))
        out[mu] = img.coefficients(basis)
    return basis, out


def beta_eigenvalue(lam, n, l=1):
    """sum_i q^(l lam_i) t^(l(i-1)) over i = 1..n; equals t^(l(n-1)/2) beta^l_{lam,n}."""
    return sum((mono(l * (lam[i] if i < len(lam) else 0), l * i) for i in range(n)), ZERO)


@lru_cache(maxsize=None)
def macdonald_monomial(lam, n=None):
    """P_lam(q, 1/t) in n variables on the monomial basis, unit coefficient on m_lam."""
    lam = as_partition(lam)
    n = lam.size if n is None else n
    if len(lam) > n:
        return {}
    basis, d = _operator_matrix(n, lam.size)
    beta = beta_eigenvalue(lam, n)
    lower = [nu for nu in basis if dominates(lam, nu)]
    coeffs = {lam: ONE}
    # lower is in descending lex order, a linear extension of dominance
    for nu in lower:
        if nu == lam:
            continue
        rhs = ZERO
        for mu, c in coeffs.items():
            if dominates(mu, nu) and mu != nu:
                rhs = rhs + c * d[mu][nu]
        diag = d[nu][nu] - beta
        if diag.is_zero():
            raise MacdonaldError(f"eigenvalue collision between {lam} and {nu}")
        coeffs[nu] = -rhs / diag
    return {k: v for k, v in coeffs.items() if not v.is_zero()}


@lru_cache(maxsize=None)
def monomial_to_power(n):
    """m_mu = sum_rho M[mu][rho] p_rho, for partitions of n (computed in n variables)."""
    basis = partitions_of(n)
    if n == 0:
        return {EMPTY: {EMPTY: Fraction(1)}}
    rows = []
    for rho in basis:
        f = NVariablePoly.power_sum(rho, n)
        rows.append([_int_coeff(f, mu) for mu in basis])
    # rows[rho][mu]: p_rho = sum_mu R m_mu;  m = R^{-T} p
    R = flint.fmpq_mat(len(basis), len(basis), [x for row in rows for x in row])
    Rinv = R.inv()
    out = {}
    for j, mu in enumerate(basis):
        out[mu] = {}
        for i, rho in enumerate(basis):
            v = Rinv[j, i]
            if v != 0:
                out[mu][rho] = Fraction(int(v.p), int(v.q))
    return out


def _int_coeff(f, mu):
    target = tuple(mu) + (0,) * (f.n - len(mu))
    for e, c in f.poly.to_dict().items():
        if tuple(int(x) for x in e[: f.n]) == target:
            return int(c)
    return 0


def monomial_sym(mu):
    mu = as_partition(mu)
    return SymFunc({rho: K.const(c) for rho, c in monomial_to_power(mu.size)[mu].items()})


@lru_cache(maxsize=None)
def power_to_monomial(n):
    """p_rho = sum_mu C[rho][mu] m_mu, for partitions of n."""
    if n == 0:
        return {EMPTY: {EMPTY: 1}}
    out = {}
    for rho in partitions_of(n):
        f = NVariablePoly.power_sum(rho, n)
        out[rho] = {mu: c for mu in partitions_of(n) if (c := _int_coeff(f, mu))}
    return out


def to_monomial(f):
    """Coefficients of f on the monomial basis, as a dict partition -> coefficient."""
    out = {}
    for rho, c in f.terms.items():
        for mu, m in power_to_monomial(rho.size)[rho].items():
            out[mu] = out[mu] + c * m if mu in out else c * m
    return {k: v for k, v in out.items() if not v.is_zero()}


@lru_cache(maxsize=None)
def macdonald_P(lam):
    """P_lam(q, 1/t) on the power-sum basis."""
    lam = as_partition(lam)
    out = SymFunc()
    for mu, c in macdonald_monomial(lam).items():
        out = out + monomial_sym(mu).scale(c)
    return out


def delta_tilde_eigenvalue(lam, l):
    if l == 0:
        raise ValueError("l must be nonzero")
    lam = as_partition(lam)
    if l > 0:
        return sum(((mono(l * p, 0) - 1) * mono(0, l * i) for i, p in enumerate(lam)), ZERO)
    m = -l
    return mono(m, 0) * sum(((mono(-m * p, 0) - 1) * mono(0, -m * i) for i, p in enumerate(lam)), ZERO)


def c_stat(lam):
    """c_lam(q, 1/t) = prod (1 - q^a t^(-l-1))."""
    lam = as_partition(lam)
    return _prod(1 - mono(arm(lam, s), -leg(lam, s) - 1) for s in lam.cells())


@lru_cache(maxsize=None)
def tilde_H(lam):
    """H-tilde: t^n(lam) c_lam(q,1/t) P_lam(q,1/t) with p_r -> p_r/(1 - t^-r)."""
    lam = as_partition(lam)
    base = macdonald_P(lam).scale(mono(0, n_stat(lam)) * c_stat(lam))
    return plethysm_scale(base, lambda r: 1 / (1 - mono(0, -r)))


def tilde_H_literal(lam):
    """gamma_t^{-1}(t^n(lam) c_lam(q,1/t) P_lam(q,1/t)), kept for the ledgered comparison."""
    lam = as_partition(lam)
    return gamma_t_inv(macdonald_P(lam).scale(mono(0, n_stat(lam)) * c_stat(lam)))


def swap_qt(f):
    from .exactfield import substitute
    half = {"q": mono(0, Fraction(1, 2)), "t": mono(Fraction(1, 2), 0)}
    return SymFunc({k: substitute(v, half) for k, v in f.terms.items()})


def expand(v):
    out = SymFunc()
    for lam, c in v.terms.items():
        out = out + tilde_H(lam).scale(c)
    return out


def frame(v):
    """Fock vector -> gamma_t omega of its expansion; here phi(u_{0,l}) is diagonal on P(q,1/t)."""
    return gamma_t(omega_inv(expand(v)))


def frame_gamma(v):
    """Fock vector -> gamma_t of its expansion; here phi(u_{l,0}) is multiplication by p_l."""
    return gamma_t(expand(v))


# ---------------------------------------------------------------------------
# linear algebra on a fixed degree


def solve_in_basis(f, basis_funcs, n):
    """Coefficients a with f = sum a_i basis_funcs[i], all homogeneous of degree n."""
    keys = partitions_of(n)
    m = len(basis_funcs)
    # columns are basis functions; rows are p-coordinates
    A = [[basis_funcs[j].coeff(k) for j in range(m)] + [f.coeff(k)] for k in keys]
    rows, cols = len(A), m
    piv_row = 0
    pivots = []
    for c in range(cols):
        r = next((i for i in range(piv_row, rows) if not A[i][c].is_zero()), None)
        if r is None:
            continue
        A[piv_row], A[r] = A[r], A[piv_row]
        inv = 1 / A[piv_row][c]
        A[piv_row] = [x * inv for x in A[piv_row]]
        for i in range(rows):
            if i != piv_row and not A[i][c].is_zero():
                fac = A[i][c]
                A[i] = [x - fac * y for x, y in zip(A[i], A[piv_row])]
        pivots.append(c)
        piv_row += 1
    for i in range(piv_row, rows):
        if not A[i][cols].is_zero():
            raise MacdonaldError("not in the span")
    out = [ZERO] * m
    for i, c in enumerate(pivots):
        out[c] = A[i][cols]
    return out


def diagonal_on_P(eigen):
    """Operator diagonal on the basis P_lam(q, 1/t) with eigenvalue eigen(lam)."""

    def op(f):
        out = SymFunc()
        for n in f.degrees():
            lams = partitions_of(n)
            coefs = solve_in_basis(f.degree_part(n), [macdonald_P(l) for l in lams], n)
            for lam, a in zip(lams, coefs):
                if not a.is_zero():
                    out = out + macdonald_P(lam).scale(a * eigen(lam))
        return out

    return op


def phi_op(x):
    """phi(u_x) for x on an axis."""
    a, b = x
    if a != 0 and b == 0:
        l = abs(a)
        if a > 0:
            c = mono(0, Fraction(l, 2)) / (1 - mono(l, 0))
            pm = p_mult(l)
            return lambda f: pm(f).scale(c)
        c = -l * mono(Fraction(l, 2), 0) / (1 - mono(0, l))
        pd = p_deriv(l)
        return lambda f: pd(f).scale(c)
    if a == 0 and b != 0:
        l = abs(b)
        if b > 0:
            shift = 1 / ((1 - mono(l, 0)) * (1 - mono(0, l)))
            return diagonal_on_P(lambda lam: delta_tilde_eigenvalue(lam, l) / (mono(l, 0) - 1) - shift)
        shift = 1 / ((1 - mono(-l, 0)) * (1 - mono(0, -l)))
        return diagonal_on_P(lambda lam: delta_tilde_eigenvalue(lam, -l) / (mono(l, 0) - 1) + shift)
    raise ValueError(f"{x} is not on an axis")


# ---------------------------------------------------------------------------
# checks


def check_P_eigen(lam, n=None):
    """Apply the n-variable operator to the expansion of P_lam and compare eigenvalue."""
    lam = as_partition(lam)
    n = lam.size if n is None else n
    coeffs = macdonald_monomial(lam, n)
    basis, d = _operator_matrix(n, lam.size)
    beta = beta_eigenvalue(lam, n)
    for nu in basis:
        lhs = sum((c * d[mu][nu] for mu, c in coeffs.items()), ZERO)
        if lhs != beta * coeffs.get(nu, ZERO):
            return False
    return True


def check_stability(lam, n):
    """rho_n(P^n_lam) = P^{n-1}_lam (or 0 when l(lam) = n), on monomial coefficients."""
    lam = as_partition(lam)
    big = macdonald_monomial(lam, n)
    small = macdonald_monomial(lam, n - 1)
    expect = {mu: c for mu, c in big.items() if len(mu) <= n - 1}
    return expect == small


def check_P_eigen_l(lam, l, n=None):
    """Eigenvalue of the l-th operator is given spectrally; check its stable form."""
    lam = as_partition(lam)
    n = lam.size if n is None else n
    beta_l = beta_eigenvalue(lam, n, l)
    tilde = beta_l - sum((mono(0, l * i) for i in range(n)), ZERO)
    return tilde == delta_tilde_eigenvalue(lam, l)


def _exp_commuting(coeffs, ops, k, f):
    """[z^k] exp(sum_n coeffs[n] ops[n] z^n) applied to f, for commuting ops."""
    out = SymFunc()
    for rho in partitions_of(k):
        g = f
        c = ONE
        mults = {}
        for part in rho:
            g = ops(part)(g)
            c = c * coeffs(part)
            mults[part] = mults.get(part, 0) + 1
        for m in mults.values():
            c = c / factorial(m)
        out = out + g.scale(c)
    return out


def nakajima_check(order, degree=5, annihilation_sign=1, annihilation_over_n=False):
    """Both vertex operator series in the gamma_t frame; every degree involved stays <= degree.

    The annihilation side is compared with exp(sign * sum (1-t^n q^n)/(1-t^n) d/dp_n z^n),
    optionally with an extra 1/n per term.
    """
    from .fock import virtual_plus_series, virtual_minus_series, basis_vector, FockVector
    from .hall import Report

    rep = Report("vertex-operators", {"order": order}, degree)
    plus = virtual_plus_series(order)
    minus = virtual_minus_series(order)
    cp = lambda n: -((-1) ** n) * (1 - mono(n, n)) / (1 - mono(n, 0)) / n
    cm = lambda n: annihilation_sign * (1 - mono(n, n)) / (1 - mono(0, n)) / (n if annihilation_over_n else 1)
    for k in range(0, order + 1):
        A = plus[k] if k < len(plus.coeffs) else None
        B = minus[k] if k < len(minus.coeffs) else None
        ok_p = ok_m = True
        wit_p = wit_m = None
        for n in range(0, degree + 1):
            for mu in partitions_of(n):
                if n + k > degree:
                    break
                col = A.column(mu)
                tw = {}
                for lam, v in col.items():
                    tw[lam] = v * _inverse_box_char(lam, mu)
                lhs = frame_gamma(FockVector(tw))
                rhs = _exp_commuting(cp, p_mult, k, frame_gamma(basis_vector(mu)))
                if ok_p and lhs != rhs:
                    ok_p, wit_p = False, {"side": "creation", "k": k, "source": str(mu)}
            for mu in partitions_of(n):
                if n < k:
                    break
                lhs = frame_gamma(FockVector(B.column(mu)))
                rhs = _exp_commuting(cm, p_deriv, k, frame_gamma(basis_vector(mu)))
                if ok_m and lhs != rhs:
                    ok_m, wit_m = False, {"side": "annihilation", "k": k, "source": str(mu)}
        rep.add("creation", {"k": k}, ok_p, wit_p)
        rep.add("annihilation", {"k": k}, ok_m, wit_m)
    return rep


def _inverse_box_char(lam, mu):
    """Product over the boxes of lam minus mu of the inverted box weight."""
    from .fock import cell_weight
    acc = ONE
    small = set(mu.cells())
    for s in lam.cells():
        if s not in small:
            acc = acc * cell_weight(s, -1)
    return acc


# ---------------------------------------------------------------------------
# suites


def verify_pieri(max_size=6):
    """f_{1,-1} is multiplication by p_1/((1-q)(1-t)) and f_{-1,0} is d/dp_1 on H-tilde."""
    from .fock import f_plus, f_minus, basis_vector
    from .report import Report

    rep = Report("pieri", {"max_size": max_size}, max_size)
    qt = ONE / ((1 - mono(1, 0)) * (1 - mono(0, 1)))
    up, down = p_mult(1), p_deriv(1)
    for n in range(max_size + 1):
        for lam in partitions_of(n):
            v = basis_vector(lam)
            H = tilde_H(lam)
            rep.add("up", {"lam": list(lam)}, expand(f_plus(-1).apply(v)) == up(H).scale(qt))
            rep.add("down", {"lam": list(lam)}, expand(f_minus(0).apply(v)) == down(H))
    return rep


def verify_macdonald(max_size=5):
    """Eigenvector solve, variable-drop stability, spectral l-th eigenvalues, q<->t symmetry."""
    from .report import Report

    rep = Report("macdonald", {"max_size": max_size}, max_size)
    for n in range(1, max_size + 1):
        for lam in partitions_of(n):
            p = {"lam": list(lam)}
            rep.add("eigen", p, check_P_eigen(lam))
            rep.add("eigen-extra-variable", p, check_P_eigen(lam, n + 1))
            rep.add("stability", p, check_stability(lam, n + 1))
            rep.add("eigen-l", p, all(check_P_eigen_l(lam, l) for l in (2, 3)))
            rep.add("conjugation", p, swap_qt(tilde_H(lam)) == tilde_H(conjugate(lam)))
    return rep


def verify_intertwiner(degree=5, ls=(1, 2, 3)):
    """Omega against phi on axis generators: u_{0,l} in the omega-twisted frame, u_{l,0} in the gamma frame."""
    from .fock import basis_vector
    from .hall import omega
    from .report import Report

    rep = Report("intertwiner", {"l": list(ls)}, degree)
    gens = []
    for l in ls:
        gens += [((0, l), frame), ((0, -l), frame), ((l, 0), frame_gamma), ((-l, 0), frame_gamma)]
    for x, fr in gens:
        om, ph = omega(x), phi_op(x)
        bad = None
        for n in range(degree + 1):
            if n + om.shift < 0 or n + om.shift > degree:
                continue
            for lam in partitions_of(n):
                v = basis_vector(lam)
                if fr(om.apply(v)) != ph(fr(v)):
                    bad = {"source": list(lam)}
                    break
            if bad:
                break
        rep.add("phi", {"x": list(x)}, bad is None, bad)
    return rep
