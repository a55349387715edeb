"""Elliptic Hall algebra side: lattice bookkeeping, the map Omega, relations.

Omega sends the generators u_{i,l} with i in {-1, 0, 1} to the operators
h_{i,l} of the Fock module.  Every other u_x is produced by commutators
along empty lattice triangles and, for non-primitive x, by taking the
logarithm of the theta generating series.  Equality of Hall elements is
tested as equality of operator matrices up to a stated degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, factorial

from .exactfield import K, FieldElement, FormalSeries, ps_exp, ps_log, to_text
from .fock import (
    FOCK, FockOperator, h_op, identity_op, zero_op, op_commutator, matrices_equal,
    first_difference, scalar_op, nabla, nabla_inv,
)
from .partitions import mono, partitions_of
from .report import Report, compare


# ---------------------------------------------------------------------------
# lattice data


def gcd_d(x):
    a, b = x
    if a == 0 and b == 0:
        raise ValueError("d(0,0) is undefined")
    return gcd(a, b)


def eps(x):
    a, b = x
    if a > 0 or (a == 0 and b > 0):
        return 1
    if a == 0 and b == 0:
        raise ValueError("eps(0,0) is undefined")
    return -1


def det(x, y):
    return x[0] * y[1] - x[1] * y[0]


def eps_pair(x, y):
    d = det(x, y)
    if d == 0:
        raise ValueError(f"{x} and {y} are collinear")
    return 1 if d > 0 else -1


def alpha_vec(x, y):
    """The lattice point alpha(x, y) of relation (c)."""
    s = x[0] + y[0], x[1] + y[1]
    ex, ey, es = eps(x), eps(y), eps(s)
    v0 = ex * x[0] + ey * y[0] - es * s[0]
    v1 = ex * x[1] + ey * y[1] - es * s[1]
    lead = ex if eps_pair(x, y) == 1 else ey
    return (lead * v0 // 2, lead * v1 // 2)


def interior_points(x, y):
    """Interior lattice points of the triangle (0, x, x + y), by Pick."""
    s = (x[0] + y[0], x[1] + y[1])
    twice_area = abs(det(x, y))
    boundary = gcd_d(x) + gcd_d(y) + gcd_d(s)
    return (twice_area - boundary + 2) // 2


@lru_cache(maxsize=None)
def alpha_n(n):
    if n == 0:
        raise ValueError("alpha_0 is undefined")
    n = abs(n)
    return (1 - mono(n, n)) * (1 - mono(-n, 0)) * (1 - mono(0, -n)) / n


@dataclass(frozen=True)
class CentralCharge:
    c1: FieldElement
    c2: FieldElement


STANDARD = CentralCharge(K.one(), K.mono(q=Fraction(1, 2), t=Fraction(1, 2)))


def kappa(charge, x):
    """kappa_x = c_2^a c_1^b for x = (a, b), since c_1 = kappa_{0,1}, c_2 = kappa_{1,0}."""
    a, b = x
    return charge.c2 ** a * charge.c1 ** b


# ---------------------------------------------------------------------------
# Omega


@dataclass
class HallElement:
    realization: FockOperator
    label: str = ""


def _bezout(z):
    """Canonical w with det(w, z) = 1, first coordinate strictly between 0 and a."""
    a, b = z
    m = abs(a)
    p = pow(b % m, -1, m)
    if a < 0:
        p -= m
    # p*b - s*a = 1
    s = (p * b - 1) // a
    assert p * b - s * a == 1
    return (p, s)


def _line_witness(z0):
    """Some w with det(w, z0) = 1 used for the theta recursion along z0."""
    a, b = z0
    if a == 0:
        return (b, 0)
    if abs(a) == 1:
        return (0, -a)
    return _bezout(z0)


class Omega:
    """The specialization of the Hall algebra on a Fock-type module."""

    def __init__(self, base, charge, space):
        self._base = base
        self.charge = charge
        self.space = space
        self._u = {}
        self._theta = {}
        self.one = identity_op(space)

    def base(self, i, l):
        return self._base(i, l)

    def u(self, x):
        x = tuple(x)
        if x == (0, 0):
            return self.one
        if x in self._u:
            return self._u[x]
        a, b = x
        if abs(a) <= 1:
            op = self._base(a, b)
        elif gcd_d(x) == 1:
            w = _bezout(x)
            op = self.u_via(x, w)
        else:
            g = gcd_d(x)
            z0 = (a // g, b // g)
            thetas = [self.theta_line(z0, k) for k in range(1, g + 1)]
            logs = ps_log(FormalSeries([self.one] + thetas))
            op = logs[g].scale(1 / alpha_n(g))
        op.label = f"u{x}"
        self._u[x] = op
        return op

    def u_via(self, z, w):
        """u_z from [u_y, u_w] with y = z - w, for det(w, z) = 1."""
        if det(w, z) != 1:
            raise ValueError(f"det({w}, {z}) must be 1")
        y = (z[0] - w[0], z[1] - w[1])
        c = eps_pair(w, y) * kappa(self.charge, alpha_vec(w, y))
        return op_commutator(self.u(y), self.u(w)).scale(1 / c)

    def theta_line(self, z0, k):
        """theta_{k z0} from relation (c) on the empty triangle (0, w, k z0)."""
        key = (z0, k)
        if key in self._theta:
            return self._theta[key]
        w = _line_witness(z0)
        y = (k * z0[0] - w[0], k * z0[1] - w[1])
        c = eps_pair(w, y) * kappa(self.charge, alpha_vec(w, y))
        th = op_commutator(self.u(y), self.u(w)).scale(alpha_n(1) / c)
        self._theta[key] = th
        return th

    def theta(self, z):
        """theta_z from the exponential generating series of u along the line of z."""
        z = tuple(z)
        g = gcd_d(z)
        z0 = (z[0] // g, z[1] // g)
        series = FormalSeries([0] + [self.u((r * z0[0], r * z0[1])).scale(alpha_n(r)) for r in range(1, g + 1)])
        return ps_exp(series, one=self.one)[g]


_OMEGA = None


def standard_omega():
    global _OMEGA
    if _OMEGA is None:
        _OMEGA = Omega(h_op, STANDARD, FOCK)
    return _OMEGA


def omega(x):
    """Omega(u_x) as a FockOperator."""
    return standard_omega().u(x)


def omega_generator(x):
    x = tuple(x)
    if x == (0, 0):
        raise ValueError("u_(0,0) is not a generator")
    return HallElement(omega(x), f"u{x}")


def theta(x):
    return standard_omega().theta(x)


# ---------------------------------------------------------------------------
# relation suites


def row_relations(om, rng, degree, report, start=0):
    c1 = om.charge.c1
    for d in range(-rng, rng + 1):
        if d == 0:
            continue
        for l in range(-rng, rng + 1):
            lhs = op_commutator(om.u((0, d)), om.u((1, l)))
            rhs = om.u((1, l + d)) if d > 0 else om.u((1, l + d)).scale(-(c1 ** d))
            compare(report, "row-commutator", {"d": d, "l": l}, lhs, rhs, degree, start)
        for k in range(-rng, rng + 1):
            lhs = op_commutator(om.u((-1, k)), om.u((0, d)))
            rhs = om.u((-1, k + d)).scale(c1 ** (-d)) if d > 0 else om.u((-1, k + d)).scale(-1)
            compare(report, "row-graded", {"d": d, "k": k}, lhs, rhs, degree, start)


def mixed_relations(om, rng, degree, report, start=0):
    c1, c2 = om.charge.c1, om.charge.c2
    a1 = alpha_n(1)
    for k in range(-rng, rng + 1):
        for l in range(-rng, rng + 1):
            lhs = op_commutator(om.u((-1, k)), om.u((1, l)))
            m = k + l
            if m > 0:
                rhs = om.theta((0, m)).scale(c2 * c1 ** (-k) / a1)
            elif m == 0:
                rhs = scalar_op((c1 ** (-k) * c2 - c1 ** k / c2) / a1, om.space)
            else:
                rhs = om.theta((0, m)).scale(-(c1 ** (-l)) / c2 / a1)
            compare(report, "mixed", {"k": k, "l": l}, lhs, rhs, degree, start)


def plane_relations(om, bound, degree, report, start=0):
    pts = [(a, b) for a in range(-bound, bound + 1) for b in range(-bound, bound + 1) if (a, b) != (0, 0)]
    for x in pts:
        for y in pts:
            if det(x, y) == 0:
                lhs = op_commutator(om.u(y), om.u(x))
                if x == (-y[0], -y[1]):
                    kx = kappa(om.charge, x)
                    rhs = scalar_op((kx - 1 / kx) / alpha_n(gcd_d(x)), om.space)
                else:
                    rhs = zero_op(lhs.shift, om.space)
                compare(report, "b", {"x": list(x), "y": list(y)}, lhs, rhs, degree, start)
            elif gcd_d(x) == 1 and interior_points(x, y) == 0:
                lhs = op_commutator(om.u(y), om.u(x))
                s = (x[0] + y[0], x[1] + y[1])
                c = eps_pair(x, y) * kappa(om.charge, alpha_vec(x, y)) / alpha_n(1)
                rhs = om.theta(s).scale(c)
                compare(report, "c", {"x": list(x), "y": list(y)}, lhs, rhs, degree, start)


def verify_row_relations(rng, degree):
    rep = Report("row-relations", {"range": rng}, degree)
    row_relations(standard_omega(), rng, degree, rep)
    return rep


def verify_mixed_relations(rng, degree):
    rep = Report("mixed-relations", {"range": rng}, degree)
    mixed_relations(standard_omega(), rng, degree, rep)
    return rep


def verify_plane_relations(coord_bound, degree):
    if coord_bound < 1:
        raise ValueError("coord_bound must be at least 1")
    rep = Report("plane-b-c", {"coord_bound": coord_bound}, degree)
    plane_relations(standard_omega(), coord_bound, degree, rep)
    return rep


def alternative_decompositions(z, limit=3):
    """Several w with det(w, z) = 1 whose both pieces are simpler than z."""
    a, b = z
    out = []
    for p in range(-abs(a) - 1, abs(a) + 2):
        for s in range(-abs(b) - 3, abs(b) + 4):
            w = (p, s)
            if det(w, z) != 1:
                continue
            y = (a - p, b - s)
            if w == (0, 0) or y == (0, 0):
                continue
            if abs(p) < abs(a) and abs(a - p) < abs(a):
                out.append(w)
    out.sort(key=lambda w: (abs(w[0]) + abs(w[1]), w))
    return out[:limit]


def verify_decomposition_independence(bound, degree):
    """For primitive x with |coords| <= bound and |x_1| >= 2, compare decompositions."""
    om = standard_omega()
    rep = Report("omega-decomposition", {"coord_bound": bound}, degree)
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            x = (a, b)
            if abs(a) < 2 or gcd(a, b) != 1:
                continue
            ws = alternative_decompositions(x)
            ref = om.u(x)
            for w in ws:
                other = om.u_via(x, w)
                compare(rep, "decomposition", {"x": list(x), "w": list(w)}, ref, other, degree)
    return rep


# ---------------------------------------------------------------------------
# Heisenberg subalgebras and Casimir operators


def _slope(mu_num, mu_den):
    if mu_den <= 0:
        raise ValueError("only finite slopes d/r with r >= 1 are supported")
    g = gcd(mu_num, mu_den)
    return mu_den // g, mu_num // g


def heisenberg_u(mu_num, mu_den, l, om=None):
    r, d = _slope(mu_num, mu_den)
    if l == 0:
        raise ValueError("l must be nonzero")
    om = om or standard_omega()
    return HallElement(om.u((l * r, l * d)), f"u^({mu_num}/{mu_den})_{l}")


def _mults(lam):
    out = {}
    for p in lam:
        out[p] = out.get(p, 0) + 1
    return out


def casimir(mu_num, mu_den, max_degree, om=None):
    """C^mu = sum_lam u_lam u_{-lam} / <u_lam, u_lam>, exact on degrees <= max_degree."""
    r, d = _slope(mu_num, mu_den)
    om = om or standard_omega()
    terms = []
    for size in range(0, max_degree // r + 1):
        for lam in partitions_of(size):
            coef = K.one()
            for part, m in _mults(lam).items():
                coef = coef * alpha_n(part) ** m / factorial(m)
            up = om.one
            down = om.one
            for part in lam:
                up = up * om.u((part * r, part * d))
                down = down * om.u((-part * r, -part * d))
            terms.append((size * r, (up * down).scale(coef)))

    def rule(key):
        n = om.space.size(key)
        if n > max_degree:
            raise ValueError(f"Casimir built only up to degree {max_degree}")
        out = {}
        for low, op in terms:
            if low > n:
                continue
            for k, v in op.column(key).items():
                out[k] = out[k] + v if k in out else v
        return out

    return FockOperator(0, rule, om.space, f"C^({mu_num}/{mu_den})")


def nabla_conjugate(A):
    return nabla() * A * nabla_inv()


def verify_casimir(max_degree=4):
    """C^0 on H-tilde_(1), C^1 against nabla C^0 nabla^-1, and the slope-0 Heisenberg bracket."""
    from .partitions import Partition

    rep = Report("casimir", {}, max_degree)
    qt_half = K.mono(q=Fraction(1, 2), t=Fraction(1, 2))
    c0 = casimir(0, 1, max_degree)
    one = Partition((1,))
    expected = 1 + qt_half - 1 / qt_half
    got = c0.entry(one, one)
    rep.add("C0-eigenvalue", {"lam": [1]}, got == expected,
            None if got == expected else {"lhs": to_text(got), "rhs": to_text(expected)})
    compare(rep, "C1-nabla", {"mu": 1}, casimir(1, 1, max_degree), nabla_conjugate(c0), max_degree)
    u1 = heisenberg_u(0, 1, 1).realization
    um = heisenberg_u(0, 1, -1).realization
    bracket = scalar_op((1 / qt_half - qt_half) / alpha_n(1))
    compare(rep, "heisenberg", {"mu": 0}, op_commutator(u1, um), bracket, max_degree)
    return rep
