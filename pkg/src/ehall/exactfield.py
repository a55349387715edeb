"""Exact rational functions in half-integer powers of named generators.

A FieldElement is a reduced fraction num/den of integer polynomials.  Every
generator g is stored through its square root, so the polynomial variable
called ``q`` internally stands for q^(1/2) and an exponent n means q^(n/2).
Negative powers live in the denominator.  Numerator and denominator are kept
coprime (integer content included) with the denominator's leading
coefficient positive under the graded lexicographic order, so two elements
are equal exactly when their stored polynomials are equal.

Polynomial gcds are delegated to FLINT through python-flint.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

import flint

Rational = Fraction


def _terms(p):
    """Terms of a flint polynomial as (tuple of int exponents, int coefficient)."""
    return [(tuple(int(e) for e in m), int(c)) for m, c in p.terms()]


class ExactFieldError(ArithmeticError):
    pass


class DivisionByZero(ExactFieldError, ZeroDivisionError):
    """Raised when inverting the zero element."""


class PoleError(ExactFieldError):
    """Raised when an evaluation hits a zero of the denominator."""


class SeriesError(ValueError):
    """Raised when a formal series violates a precondition."""


class ParseError(ValueError):
    def __init__(self, message, pos):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


# ---------------------------------------------------------------------------
# rings

_NAME_RE = re.compile(r"^([A-Za-z_]+?)_?(\d*)$")


def _name_key(name):
    if name == "q":
        return (0, "", 0)
    if name == "t":
        return (1, "", 0)
    m = _NAME_RE.match(name)
    prefix, idx = m.group(1), m.group(2)
    rank = 2 if prefix == "e" else 3
    return (rank, prefix, int(idx) if idx else -1, name)


class Ring:
    """Polynomial context for a fixed ordered tuple of generator names."""

    def __init__(self, names):
        self.names = tuple(names)
        self.ctx = flint.fmpz_mpoly_ctx.get(self.names, "deglex")
        self.index = {n: i for i, n in enumerate(self.names)}
        self._one = self.ctx.constant(1)
        self._zero = self.ctx.constant(0)

    def __repr__(self):
        return f"Ring{self.names}"

    def poly_const(self, c):
        return self.ctx.constant(c)

    def monomial(self, exps):
        """Monomial with the given half-step exponents (all nonnegative)."""
        return self.ctx.term(1, tuple(exps))

    def element(self, num, den=None):
        if den is None:
            return FieldElement._raw(num, self._one, self)
        return FieldElement._make(num, den, self)

    def zero(self):
        return FieldElement._raw(self._zero, self._one, self)

    def one(self):
        return FieldElement._raw(self._one, self._one, self)

    def const(self, c):
        c = Fraction(c)
        return FieldElement._make(self.ctx.constant(c.numerator), self.ctx.constant(c.denominator), self)

    def gen(self, name, half_steps=2):
        """The monomial name^(half_steps/2)."""
        i = self.index[name]
        e = [0] * len(self.names)
        e[i] = abs(half_steps)
        m = self.monomial(e)
        if half_steps >= 0:
            return FieldElement._raw(m, self._one, self)
        return FieldElement._raw(self._one, m, self)

    def mono(self, **powers):
        """Monomial from keyword powers, e.g. mono(q=1, t=Fraction(-1, 2))."""
        num = [0] * len(self.names)
        den = [0] * len(self.names)
        for name, p in powers.items():
            h = Fraction(p) * 2
            if h.denominator != 1:
                raise ValueError(f"exponent {p} is not a half-integer")
            h = int(h)
            if h >= 0:
                num[self.index[name]] += h
            else:
                den[self.index[name]] -= h
        return FieldElement._raw(self.monomial(num), self.monomial(den), self)

    def mono_half(self, exps):
        """Monomial from a half-step exponent vector that may be negative."""
        num = [max(e, 0) for e in exps]
        den = [max(-e, 0) for e in exps]
        return FieldElement._raw(self.monomial(num), self.monomial(den), self)


@lru_cache(maxsize=None)
def ring(names=("q", "t")):
    names = tuple(names)
    if len(set(names)) != len(names):
        raise ValueError("duplicate generator names")
    return Ring(names)


def ordered_names(names):
    return tuple(sorted(set(names), key=_name_key))


@lru_cache(maxsize=None)
def _union(r1, r2):
    return ring(ordered_names(r1.names + r2.names))


def ring_with(*names):
    """Ring on q, t and the given extra generator names."""
    return ring(ordered_names(("q", "t") + tuple(names)))


# ---------------------------------------------------------------------------
# elements


class FieldElement:
    __slots__ = ("num", "den", "ring", "_hash")

    def __init__(self, value=0, base=None):
        base = base or ring()
        if isinstance(value, FieldElement):
            other = value.to_ring(base)
            self.num, self.den, self.ring = other.num, other.den, other.ring
        else:
            c = Fraction(value)
            self.num = base.ctx.constant(c.numerator)
            self.den = base.ctx.constant(c.denominator)
            self.ring = base
        self._hash = None

    @classmethod
    def _raw(cls, num, den, base):
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        obj.ring = base
        obj._hash = None
        return obj

    @classmethod
    def _make(cls, num, den, base):
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if num.is_zero():
            return cls._raw(num, base._one, base)
        if not den.is_one():
            g = num.gcd(den)
            if not g.is_one():
                num = num / g
                den = den / g
            if den.leading_coefficient() < 0:
                num = -num
                den = -den
        return cls._raw(num, den, base)

    # -- coercion ---------------------------------------------------------

    def to_ring(self, target):
        if target is self.ring:
            return self
        missing = [n for n in self.used_names() if n not in target.index]
        if missing:
            raise ValueError(f"generators {missing} not in {target}")
        ctx = target.ctx
        return FieldElement._raw(self.num.project_to_context(ctx), self.den.project_to_context(ctx), target)

    def used_names(self):
        out = set()
        for p in (self.num, self.den):
            for k, d in enumerate(p.degrees()):
                if d:
                    out.add(self.ring.names[k])
        return out

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.ring is self.ring:
                return self, other
            u = _union(self.ring, other.ring)
            return self.to_ring(u), other.to_ring(u)
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            r = self.ring
            return self, FieldElement._raw(r.ctx.constant(c.numerator), r.ctx.constant(c.denominator), r)
        return NotImplemented, NotImplemented

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        if b.num.is_zero():
            return a
        if a.num.is_zero():
            return b
        r = a.ring
        if a.den == b.den:
            return FieldElement._make(a.num + b.num, a.den, r)
        if a.den.is_one():
            return FieldElement._raw(a.num * b.den + b.num, b.den, r)
        if b.den.is_one():
            return FieldElement._raw(b.num * a.den + a.num, a.den, r)
        g = a.den.gcd(b.den)
        if g.is_one():
            num = a.num * b.den + b.num * a.den
            return FieldElement._make_sign(num, a.den * b.den, r)
        ad = a.den / g
        bd = b.den / g
        num = a.num * bd + b.num * ad
        if num.is_zero():
            return r.zero()
        h = num.gcd(g)
        if not h.is_one():
            num = num / h
            g = g / h
        return FieldElement._make_sign(num, ad * bd * g, r)

    @classmethod
    def _make_sign(cls, num, den, base):
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return cls._raw(num, den, base)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement._raw(-self.num, self.den, self.ring)

    def __pos__(self):
        return self

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return b + (-a)

    def __mul__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        r = a.ring
        if a.num.is_zero() or b.num.is_zero():
            return r.zero()
        if a.den.is_one() and b.den.is_one():
            return FieldElement._raw(a.num * b.num, r._one, r)
        g1 = a.num.gcd(b.den)
        g2 = b.num.gcd(a.den)
        an, bd = (a.num, b.den) if g1.is_one() else (a.num / g1, b.den / g1)
        bn, ad = (b.num, a.den) if g2.is_one() else (b.num / g2, a.den / g2)
        return FieldElement._make_sign(an * bn, ad * bd, r)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise DivisionByZero("inverse of zero")
        return FieldElement._make_sign(self.den, self.num, self.ring)

    def __truediv__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return b * a.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("integer exponents only")
        if n < 0:
            return self.inverse() ** (-n)
        return FieldElement._raw(self.num ** n, self.den ** n, self.ring)

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return self.den.is_constant() and self.num.is_constant() and \
                Fraction(int(self.num.leading_coefficient()) if not self.num.is_zero() else 0,
                         int(self.den.leading_coefficient())) == c
        if not isinstance(other, FieldElement):
            return NotImplemented
        a, b = self._coerce(other)
        return a.num == b.num and a.den == b.den

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash((tuple(self.trimmed_terms(self.num)), tuple(self.trimmed_terms(self.den))))
        return self._hash

    def trimmed_terms(self, p):
        used = sorted(self.used_names(), key=_name_key)
        idx = [self.ring.index[n] for n in used]
        return [(tuple(zip(used, (m[i] for i in idx))), int(c)) for m, c in _terms(p)]

    def __bool__(self):
        return not self.num.is_zero()

    def is_zero(self):
        return self.num.is_zero()

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        n = 0 if self.num.is_zero() else int(self.num.leading_coefficient())
        return Fraction(n, int(self.den.leading_coefficient()))

    def is_laurent(self):
        """True when the denominator is a single monomial."""
        return len(_terms(self.den)) == 1

    def laurent_terms(self):
        """Map half-step exponent vector -> Fraction for a Laurent element."""
        dterms = _terms(self.den)
        if len(dterms) != 1:
            raise ValueError("not a Laurent polynomial")
        (dm, dc), = dterms
        out = {}
        for m, c in _terms(self.num):
            out[tuple(a - b for a, b in zip(m, dm))] = Fraction(int(c), int(dc))
        return out

    def inverted(self):
        """Apply every generator g -> g^(-1)."""
        return _invert_generators(self)

    # -- evaluation -------------------------------------------------------

    def eval(self, assignment):
        """Exact rational value at generator values (name -> Rational).

        Odd half-steps need the assigned value to be a rational square.
        """
        roots = {}
        for name in self.used_names():
            if name not in assignment:
                raise ValueError(f"no value for generator {name}")
            v = Fraction(assignment[name])
            if v == 0:
                raise ValueError(f"generator {name} assigned zero")
            roots[name] = v
        names = self.ring.names

        def ev(p):
            total = Fraction(0)
            for m, c in _terms(p):
                term = Fraction(int(c))
                for k, e in enumerate(m):
                    if e:
                        v = roots[names[k]]
                        if e % 2:
                            term *= _rational_sqrt(v, names[k]) ** e
                        else:
                            term *= v ** (e // 2)
                total += term
            return total

        d = ev(self.den)
        if d == 0:
            raise PoleError("denominator vanishes at the assignment")
        return ev(self.num) / d

    # -- text -------------------------------------------------------------

    def __str__(self):
        return to_text(self)

    def __repr__(self):
        return f"FieldElement({to_text(self)!r})"


def _rational_sqrt(v, name):
    if v < 0:
        raise ValueError(f"half power of negative value for {name}")
    n, d = v.numerator, v.denominator
    rn, rd = flint.fmpz(n).isqrt(), flint.fmpz(d).isqrt()
    if rn * rn != n or rd * rd != d:
        raise ValueError(f"half power of {name} needs a rational square, got {v}")
    return Fraction(int(rn), int(rd))


def _invert_generators(a):
    """g -> g^-1 for every generator (monomials inverted)."""
    r = a.ring
    n = len(r.names)
    degs = [max(x, y) for x, y in zip(a.num.degrees(), a.den.degrees())]

    def flip(p):
        return r.ctx.from_dict({tuple(degs[k] - m[k] for k in range(n)): c for m, c in _terms(p)})

    return FieldElement._make(flip(a.num), flip(a.den), r)


def invert_monomials(a):
    """Apply g -> g^(-1) to all generators of a FieldElement."""
    if isinstance(a, (int, Fraction)):
        return a
    return _invert_generators(a)


def substitute(a, images):
    """Substitute generators by FieldElements: images maps name -> value of name^(1/2)."""
    r = a.ring
    names = r.names
    half = [images.get(nm) for nm in names]
    for k, nm in enumerate(names):
        if half[k] is None:
            half[k] = r.gen(nm, 1)

    def ev(p):
        total = 0
        for m, c in _terms(p):
            term = Fraction(int(c))
            for k, e in enumerate(m):
                if e:
                    term = term * half[k] ** e
            total = total + term
        return total

    return ev(a.num) / ev(a.den)


# ---------------------------------------------------------------------------
# printing and parsing


def _fmt_exp(h):
    if h % 2 == 0:
        e = h // 2
        return "" if e == 1 else f"^{e}" if e > 0 else f"^{e}"
    return f"^({h}/2)"


def _fmt_poly(terms, names):
    """terms: list of (exponent tuple, int coeff) possibly with negative exps."""
    if not terms:
        return "0"
    pieces = []
    for m, c in terms:
        factors = [f"{names[k]}{_fmt_exp(e)}" for k, e in enumerate(m) if e]
        mag = abs(c)
        if factors:
            body = "*".join(factors)
            if mag != 1:
                body = f"{mag}*{body}"
        else:
            body = str(mag)
        pieces.append((c < 0, body))
    out = ("-" if pieces[0][0] else "") + pieces[0][1]
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out


def to_text(a):
    """Canonical text form, e.g. '(q^2*t - 1)/(q - 1)'."""
    if isinstance(a, (int, Fraction)):
        return str(Fraction(a))
    names = a.ring.names
    mono = a.den.term_content()
    (dm, dc), = _terms(mono)
    mono = mono / dc
    rest = a.den / mono
    num_terms = [(tuple(x - y for x, y in zip(m, dm)), c) for m, c in _terms(a.num)]
    num_s = _fmt_poly(num_terms, names)
    if rest.is_one():
        return num_s
    if len(num_terms) > 1:
        num_s = f"({num_s})"
    if rest.is_constant():
        return f"{num_s}/{int(rest.leading_coefficient())}"
    den_s = _fmt_poly(_terms(rest), names)
    return f"{num_s}/({den_s})"


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text):
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(("num", int(m.group(1)), start))
        elif m.group(2):
            toks.append(("id", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", start)
            toks.append(("op", ch, start))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text, base):
        self.toks = _tokenize(text)
        self.i = 0
        names = {v for k, v, _ in self.toks if k == "id"}
        self.ring = ring(ordered_names(tuple(base.names) + tuple(names)))

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None):
        tok = self.toks[self.i]
        if (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            raise ParseError(f"expected {want!r}", tok[2])
        self.i += 1
        return tok

    def parse(self):
        v = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected token {tok[1]!r}", tok[2])
        return v

    def expr(self):
        v = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()[1]
            w = self.unary()
            if op == "*":
                v = v * w
            else:
                if w.is_zero():
                    raise DivisionByZero("division by zero in text")
                v = v / w
        return v

    def unary(self):
        if self.peek()[0] == "op" and self.peek()[1] == "-":
            self.take()
            return -self.unary()
        if self.peek()[0] == "op" and self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        tok = self.peek()
        if tok[0] == "num":
            self.take()
            base = self.ring.const(tok[1])
            is_gen = None
        elif tok[0] == "id":
            self.take()
            base = None
            is_gen = tok[1]
        elif tok[0] == "op" and tok[1] == "(":
            self.take()
            base = self.expr()
            self.take("op", ")")
            is_gen = None
        else:
            raise ParseError("expected a number, generator or '('", tok[2])
        exp = Fraction(1)
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            exp = self.exponent()
        if is_gen is not None:
            h = exp * 2
            if h.denominator != 1:
                raise ParseError("generator exponents must be half-integers", tok[2])
            return self.ring.gen(is_gen, int(h))
        if exp.denominator != 1:
            raise ParseError("fractional power of a compound expression", tok[2])
        return base ** int(exp)

    def exponent(self):
        tok = self.peek()
        sign = 1
        if tok[0] == "op" and tok[1] == "-":
            self.take()
            sign = -1
            tok = self.peek()
        if tok[0] == "num":
            self.take()
            return Fraction(sign * tok[1])
        self.take("op", "(")
        s2 = 1
        if self.peek()[0] == "op" and self.peek()[1] == "-":
            self.take()
            s2 = -1
        n = self.take("num")[1]
        d = 1
        if self.peek()[0] == "op" and self.peek()[1] == "/":
            self.take()
            d = self.take("num")[1]
            if d == 0:
                raise ParseError("zero exponent denominator", self.peek()[2])
        self.take("op", ")")
        return Fraction(sign * s2 * n, d)


def parse(text, base=None):
    """Parse the canonical text grammar into a FieldElement."""
    return _Parser(text, base or ring()).parse()


# ---------------------------------------------------------------------------
# convenience constructors over the base field K = Q(q^(1/2), t^(1/2))

K = ring(("q", "t"))


def q_pow(n):
    return K.mono(q=n)


def t_pow(n):
    return K.mono(t=n)


def qt_mono(a, b):
    """q^a t^b with a, b integers or half-integers."""
    return K.mono(q=a, t=b)


def fe(value):
    if isinstance(value, FieldElement):
        return value
    if isinstance(value, str):
        return parse(value)
    return K.const(value)


def fe_add(a, b):
    return fe(a) + fe(b)


def fe_mul(a, b):
    return fe(a) * fe(b)


def fe_neg(a):
    return -fe(a)


def fe_inv(a):
    return fe(a).inverse()


def fe_eval(a, assignment):
    a = fe(a)
    return a.eval(assignment)


# ---------------------------------------------------------------------------
# truncated formal power series


def _is_zero_coeff(c):
    if isinstance(c, (int, Fraction, FieldElement)):
        return c == 0
    if hasattr(c, "is_zero_operator"):
        return c.is_zero_operator()
    raise SeriesError("cannot decide whether the constant term vanishes")


def _is_one_coeff(c):
    if isinstance(c, (int, Fraction, FieldElement)):
        return c == 1
    if hasattr(c, "is_identity_operator"):
        return c.is_identity_operator()
    raise SeriesError("cannot decide whether the constant term is one")


class FormalSeries:
    """c_0 + c_1 z + ... + c_order z^order with ring-valued coefficients.

    Products keep the left-to-right order of factors, so operator
    coefficients need not commute.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs, order=None):
        coeffs = list(coeffs)
        if order is not None:
            if len(coeffs) > order + 1:
                coeffs = coeffs[: order + 1]
            while len(coeffs) < order + 1:
                coeffs.append(0)
        if not coeffs:
            raise SeriesError("a series needs at least one coefficient")
        self.coeffs = coeffs

    @property
    def order(self):
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        return self.coeffs[k]

    def __add__(self, other):
        n = min(self.order, other.order)
        return FormalSeries([self.coeffs[i] + other.coeffs[i] for i in range(n + 1)])

    def __sub__(self, other):
        n = min(self.order, other.order)
        return FormalSeries([self.coeffs[i] - other.coeffs[i] for i in range(n + 1)])

    def scale(self, c):
        return FormalSeries([c * x for x in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, FormalSeries):
            return FormalSeries([x * other for x in self.coeffs])
        n = min(self.order, other.order)
        out = []
        for k in range(n + 1):
            acc = 0
            for i in range(k + 1):
                a, b = self.coeffs[i], other.coeffs[k - i]
                if _is_plain_zero(a) or _is_plain_zero(b):
                    continue
                acc = _acc(acc, a * b)
            out.append(acc)
        return FormalSeries(out)

    def __repr__(self):
        return f"FormalSeries({self.coeffs!r})"


def _is_plain_zero(c):
    return isinstance(c, (int, Fraction)) and c == 0


def _acc(acc, x):
    if _is_plain_zero(acc):
        return x
    return acc + x


def _powers_sum(x, weights, one):
    """sum_k weights[k] * x^k for a series x with zero constant term."""
    n = x.order
    result = [0] * (n + 1)
    if weights[0]:
        result[0] = one if weights[0] == 1 else weights[0] * one
    power = x
    for k in range(1, n + 1):
        w = weights[k]
        if w:
            for i in range(n + 1):
                c = power.coeffs[i]
                if not _is_plain_zero(c):
                    result[i] = _acc(result[i], w * c)
        if k < n:
            power = power * x
    return FormalSeries(result)


def ps_exp(s, one=1):
    """exp(s) to the order of s; the constant term of s must vanish."""
    if not _is_zero_coeff(s.coeffs[0]):
        raise SeriesError("ps_exp needs a zero constant term")
    x = FormalSeries([0] + s.coeffs[1:])
    weights = [Fraction(1)]
    for k in range(1, s.order + 1):
        weights.append(weights[-1] / k)
    return _powers_sum(x, weights, one)


def ps_log(s):
    """log(s) to the order of s; the constant term of s must be one."""
    c0 = s.coeffs[0]
    if not _is_one_coeff(c0):
        raise SeriesError("ps_log needs constant term one")
    x = FormalSeries([0] + s.coeffs[1:])
    weights = [Fraction(0)] + [Fraction((-1) ** (k + 1), k) for k in range(1, s.order + 1)]
    out = _powers_sum(x, weights, c0)
    return out
