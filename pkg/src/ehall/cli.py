"""Command-line front end: expand, matrix and verify.

Exit codes: 0 on success, 1 when a verified identity fails, 2 on a bad
invocation (unknown suite, malformed expression, out-of-range bounds).
Output is deterministic: JSON keys are sorted and no timings are printed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from fractions import Fraction

from . import __version__

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# partitions and expressions


def parse_partition(text):
    try:
        value = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"bad partition literal at position {exc.pos}: {text!r}") from None
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        raise UsageError(f"partition must be a list of integers: {text!r}")
    if any(x <= 0 for x in value) or any(a < b for a, b in zip(value, value[1:])):
        raise UsageError(f"partition must be weakly decreasing and positive: {text!r}")
    from .partitions import Partition
    return Partition(value)


_TOKEN = re.compile(r"\s*(?:(f[+\-0]\()|(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _tokens(text):
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("call", m.group(1)[:-1], start))
            out.append(("sym", "(", m.end() - 1))
        elif m.group(2):
            out.append(("num", int(m.group(2)), start))
        elif m.group(3):
            out.append(("name", m.group(3), start))
        else:
            out.append(("sym", m.group(4), start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class ExpressionParser:
    """Recursive descent over the operator grammar.

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := '-' factor | atom
    atom   := '[' expr ',' expr ']' | '(' expr ')' | number ['/' number]
            | 'q' | 't' | 'nabla' | call
    call   := f+(l) | f-(l) | f0(l) | h(i,l) | u(r,d) | casimir(mu,N)
    """

    def __init__(self, text, rank=1):
        self.text = text
        self.toks = _tokens(text)
        self.i = 0
        self.rank = rank

    # -- token helpers

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise UsageError(f"{msg} at position {tok[2]} in {self.text!r}")

    def expect(self, sym):
        tok = self.take()
        if tok[0] != "sym" or tok[1] != sym:
            self.error(f"expected {sym!r}", tok)

    def integer(self):
        sign = 1
        if self.peek()[:2] == ("sym", "-"):
            self.take()
            sign = -1
        tok = self.take()
        if tok[0] != "num":
            self.error("expected an integer", tok)
        return sign * tok[1]

    # -- grammar

    def parse(self):
        value = self.expr()
        if self.peek()[0] != "end":
            self.error("unexpected input")
        return value

    def expr(self):
        value = self.term()
        while self.peek()[0] == "sym" and self.peek()[1] in "+-":
            tok = self.take()
            rhs = self.term()
            value = self.combine(value, rhs if tok[1] == "+" else _neg(rhs), tok)
        return value

    def term(self):
        value = self.factor()
        while self.peek()[:2] == ("sym", "*"):
            tok = self.take()
            rhs = self.factor()
            value = _mul(value, rhs)
        return value

    def factor(self):
        if self.peek()[:2] == ("sym", "-"):
            self.take()
            return _neg(self.factor())
        return self.atom()

    def atom(self):
        tok = self.take()
        kind, val, _ = tok
        if kind == "sym" and val == "[":
            a = self.expr()
            self.expect(",")
            b = self.expr()
            self.expect("]")
            return self.commutator(a, b, tok)
        if kind == "sym" and val == "(":
            a = self.expr()
            self.expect(")")
            return a
        if kind == "num":
            if self.peek()[:2] == ("sym", "/"):
                self.take()
                den = self.take()
                if den[0] != "num" or den[1] == 0:
                    self.error("expected a nonzero integer denominator", den)
                return _scalar(Fraction(val, den[1]))
            return _scalar(val)
        if kind == "name" and val in ("q", "t"):
            from .exactfield import K
            return K.gen(val)
        if kind == "name" and val == "nabla":
            self.rank_one(tok)
            from .fock import nabla
            return nabla()
        if kind == "call":
            self.expect("(")
            l = self.integer()
            self.expect(")")
            return self.generator(val, l, tok)
        if kind == "name" and val in ("h", "u", "casimir"):
            self.expect("(")
            if val == "casimir":
                num = self.integer()
                den = 1
                if self.peek()[:2] == ("sym", "/"):
                    self.take()
                    den = self.integer()
                self.expect(",")
                n = self.integer()
                self.expect(")")
                return self.casimir(num, den, n, tok)
            a = self.integer()
            self.expect(",")
            b = self.integer()
            self.expect(")")
            return self.hall(val, a, b, tok)
        self.error(f"unexpected token {val!r}", tok)

    # -- semantics

    def rank_one(self, tok):
        if self.rank != 1:
            self.error("only available in rank 1", tok)

    def generator(self, name, l, tok):
        try:
            if self.rank == 1:
                from .fock import f_plus, f_minus, f_zero
                table = {"f+": f_plus, "f-": f_minus, "f0": f_zero}
                return table[name](l)
            from .rankr import rr_f_plus, rr_f_minus, rr_f_zero
            table = {"f+": rr_f_plus, "f-": rr_f_minus, "f0": rr_f_zero}
            return table[name](l, self.rank)
        except ValueError as exc:
            self.error(str(exc), tok)

    def hall(self, name, a, b, tok):
        try:
            if name == "h":
                if self.rank == 1:
                    from .fock import h_op
                    return h_op(a, b)
                from .rankr import rr_h
                return rr_h(a, b, self.rank)
            if (a, b) == (0, 0):
                self.error("u(0,0) is not a generator", tok)
            if self.rank == 1:
                from .hall import omega
                return omega((a, b))
            from .rankr import rank_omega
            return rank_omega(self.rank).u((a, b))
        except ValueError as exc:
            self.error(str(exc), tok)

    def casimir(self, num, den, n, tok):
        self.rank_one(tok)
        if n < 0:
            self.error("Casimir degree bound must be nonnegative", tok)
        from .hall import casimir
        try:
            return casimir(num, den, n)
        except ValueError as exc:
            self.error(str(exc), tok)

    def combine(self, a, b, tok):
        from .fock import DegreeError
        try:
            return _add(a, b, self.space())
        except DegreeError as exc:
            self.error(str(exc), tok)

    def commutator(self, a, b, tok):
        from .fock import FockOperator, zero_op
        if not isinstance(a, FockOperator) or not isinstance(b, FockOperator):
            return _scalar(0)
        return self.combine(a * b, _neg(b * a), tok)

    def space(self):
        if self.rank == 1:
            from .fock import FOCK
            return FOCK
        from .rankr import space
        return space(self.rank)


def _scalar(c):
    from .exactfield import K
    return K.const(c)


def _neg(a):
    return a.scale(-1) if hasattr(a, "column") else -a


def _mul(a, b):
    from .fock import FockOperator
    if isinstance(a, FockOperator):
        return a * b
    if isinstance(b, FockOperator):
        return b.scale(a)
    return a * b


def _add(a, b, space):
    from .fock import FockOperator, scalar_op
    if not isinstance(a, FockOperator) and not isinstance(b, FockOperator):
        return a + b
    if not isinstance(a, FockOperator):
        a = scalar_op(a, space)
    if not isinstance(b, FockOperator):
        b = scalar_op(b, space)
    return a + b


def parse_expression(text, rank=1):
    from .fock import FockOperator, scalar_op
    value = ExpressionParser(text, rank).parse()
    if not isinstance(value, FockOperator):
        p = ExpressionParser(text, rank)
        value = scalar_op(value, p.space())
    return value


# ---------------------------------------------------------------------------
# commands


def _header(command, config):
    return {"tool": "ehall", "version": __version__, "command": command, "config": config}


def cmd_expand(args):
    from .exactfield import to_text
    from .symfunc import tilde_H, to_monomial

    lam = parse_partition(args.partition)
    H = tilde_H(lam)
    mono = to_monomial(H)
    keys = sorted(mono, key=lambda k: tuple(-x for x in k))
    doc = _header("expand", {"partition": list(lam)})
    doc["power_sum"] = H.serialize()
    doc["monomial"] = [[list(k), to_text(mono[k])] for k in keys]
    doc["text"] = _power_text(H)
    if args.format == "csv":
        rows = [["basis", "index", "coefficient"]]
        rows += [["p", json.dumps(k), v] for k, v in doc["power_sum"]]
        rows += [["m", json.dumps(k), v] for k, v in doc["monomial"]]
        return EXIT_OK, _csv(rows)
    return EXIT_OK, _json(doc)


def _power_text(H):
    if not H.terms:
        return "0"
    parts = []
    for k, v in H.serialize():
        mon = "*".join(f"p{x}" for x in k)
        if not mon:
            parts.append(v)
        elif v == "1":
            parts.append(mon)
        else:
            parts.append(f"({v})*{mon}")
    return " + ".join(parts)


def cmd_matrix(args):
    if args.degree < 0:
        raise UsageError("degree must be nonnegative")
    from .fock import matrix_dump, DegreeError

    op = parse_expression(args.expression, args.rank)
    try:
        dump = matrix_dump(op, args.degree)
    except (DegreeError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    doc = _header("matrix", {"expression": args.expression, "degree": args.degree, "rank": args.rank})
    doc["matrix"] = dump
    if args.format == "csv":
        rows = [["row", "col", "entry"]]
        for i, r in enumerate(dump["row_basis"]):
            for j, c in enumerate(dump["col_basis"]):
                rows.append([json.dumps(r), json.dumps(c), dump["entries"][i][j]])
        return EXIT_OK, _csv(rows)
    return EXIT_OK, _json(doc)


def _opt(value, default):
    return default if value is None else value


def _suite_reports(name, a):
    """Run one named suite; returns (config, list of reports)."""
    from . import appendix, fock, hall, partitions, rankr, shuffle, symfunc

    if name == "pieri":
        d = _opt(a.degree, 6)
        return {"degree": d}, [symfunc.verify_pieri(d)]
    if name == "relations":
        rng, d = _opt(a.range, 2), _opt(a.degree, 5)
        return {"range": rng, "degree": d}, [
            hall.verify_row_relations(rng, d), hall.verify_mixed_relations(rng, d),
            hall.verify_plane_relations(rng, d)]
    if name == "decomposition":
        rng, d = _opt(a.range, 3), _opt(a.degree, 5)
        return {"range": rng, "degree": d}, [hall.verify_decomposition_independence(rng, d)]
    if name == "virtual":
        order, d = _opt(a.order, 4), _opt(a.degree, 6)
        return {"order": order, "degree": d}, [
            fock.verify_virtual(order, d), symfunc.nakajima_check(min(order, 3), min(d, 5))]
    if name == "characters":
        n = _opt(a.size, 6)
        return {"size": n}, [partitions.verify_virtual_characters(n), partitions.verify_tangent_dimension(n)]
    if name == "gt-identities":
        n, trials, seed = _opt(a.size, 8), _opt(a.trials, 100), _opt(a.seed, 0)
        return {"size": n, "trials": trials, "seed": seed}, [
            appendix.verify_gt(n), appendix.verify_kop(2, 4, trials, seed),
            appendix.verify_vert8(2, 4, trials, seed), appendix.verify_partial_fractions(5)]
    if name == "gamma":
        order, d = _opt(a.order, 5), _opt(a.degree, 6)
        return {"order": order, "degree": d}, [
            fock.verify_zero_modes(3, d), fock.verify_gamma(2, d), fock.verify_gamma_series(order, d),
            fock.verify_newton(_opt(a.size, 8))]
    if name == "macdonald":
        n, d = _opt(a.size, 5), _opt(a.degree, 5)
        return {"size": n, "degree": d}, [symfunc.verify_macdonald(n), symfunc.verify_intertwiner(d)]
    if name == "hecke":
        rng, d = _opt(a.range, 2), _opt(a.degree, 5)
        return {"range": rng, "degree": d}, [fock.verify_hecke(rng, d), fock.verify_torsion_shadow(rng, d)]
    if name == "casimir":
        d = _opt(a.degree, 4)
        return {"degree": d}, [hall.verify_casimir(d)]
    if name == "shuffle":
        n, d, seed = _opt(a.size, 4), _opt(a.degree, 6), _opt(a.seed, 0)
        return {"size": n, "degree": d, "seed": seed}, [
            shuffle.verify_diagram(n), shuffle.verify_associativity(n),
            shuffle.upsilon_rank_check((-1, 0, 1), d, seed),
            shuffle.verify_hecke_compatibility((-1, 0, 1), (-1, 1, 2), min(d, 5))]
    if name == "rank-r":
        r, rng, d = _opt(a.rank, 2), _opt(a.range, 2), _opt(a.degree, 3)
        return {"rank": r, "range": rng, "degree": d}, [
            rankr.verify_rankr_relations(r, rng, d), rankr.verify_tangent_relation(r, d),
            rankr.verify_rank_one_reduction(min(d + 1, 4))]
    raise UsageError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")


SUITES = ("pieri", "relations", "decomposition", "virtual", "characters", "gt-identities", "gamma",
          "macdonald", "hecke", "casimir", "shuffle", "rank-r")


def cmd_verify(args):
    for field in ("degree", "range", "order", "trials", "size"):
        v = getattr(args, field)
        if v is not None and v < 0:
            raise UsageError(f"--{field} must be nonnegative")
    if args.rank is not None and args.rank < 1:
        raise UsageError("--rank must be at least 1")
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    config, reports = _suite_reports(args.suite, args)
    docs = [r.to_json() for r in reports]
    ok = all(r.ok for r in reports)
    doc = _header("verify", dict(config, suite=args.suite, seed=_opt(args.seed, 0)))
    doc["status"] = "pass" if ok else "fail"
    doc["reports"] = docs
    code = EXIT_OK if ok else EXIT_FAILED
    if args.format == "csv":
        rows = [["relation", "identity", "params", "status", "witness"]]
        for r in reports:
            for e in r.entries:
                rows.append([r.relation, e["identity"], json.dumps(e["params"], sort_keys=True), e["status"],
                             json.dumps(e["witness"], sort_keys=True) if e["witness"] is not None else ""])
        return code, _csv(rows)
    return code, _json(doc)


def _json(doc):
    return json.dumps(doc, sort_keys=True, indent=2, default=str) + "\n"


def _csv(rows):
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# entry point


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    p = _Parser(prog="ehall", description="Exact elliptic Hall algebra computations on the Fock space.")
    p.add_argument("--version", action="version", version=f"ehall {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--out", help="write output to this file instead of stdout")

    e = sub.add_parser("expand", help="power-sum and monomial expansion of H-tilde_lambda")
    e.add_argument("partition", help="partition literal such as [2,1]")
    common(e)

    m = sub.add_parser("matrix", help="exact matrix of an operator expression on one degree")
    m.add_argument("expression")
    m.add_argument("degree", type=int)
    m.add_argument("--rank", type=int, default=1)
    common(m)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", help="one of: " + ", ".join(SUITES))
    for flag in ("--degree", "--range", "--rank", "--order", "--trials", "--seed", "--size"):
        v.add_argument(flag, type=int)
    common(v)
    return p


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "rank", None) is not None and args.rank < 1:
            raise UsageError("--rank must be at least 1")
        handler = {"expand": cmd_expand, "matrix": cmd_matrix, "verify": cmd_verify}[args.command]
        code, text = handler(args)
    except UsageError as exc:
        print(f"ehall: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
