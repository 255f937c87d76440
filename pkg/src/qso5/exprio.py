"""Parsing, canonical printing and JSON serialization of algebra elements."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from gmpy2 import mpq

from .errors import NegativePowerNotInvertible, ParseError, SchemaError, UnknownGenerator


def _fmt_rational(c: mpq) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _fmt_qpow(e: int) -> str:
    if e == 0:
        return ""
    if e == 1:
        return "q"
    return f"q^{e}"


def format_poly(p) -> str:
    """Print a coefficient tuple as a polynomial in q, highest degree first."""
    if not p:
        return "0"
    parts = []
    for e in range(len(p) - 1, -1, -1):
        c = p[e]
        if not c:
            continue
        neg = c < 0
        a = -c if neg else c
        qp = _fmt_qpow(e)
        if not qp:
            body = _fmt_rational(a)
        elif a == 1:
            body = qp
        else:
            body = f"{_fmt_rational(a)}*{qp}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


def _nterms(p) -> int:
    return sum(1 for c in p if c)


def format_ratq(r) -> str:
    num = format_poly(r.num)
    if r.den == (1,):
        return num
    den = format_poly(r.den)
    if _nterms(r.num) > 1:
        num = f"({num})"
    if _nterms(r.den) > 1:
        den = f"({den})"
    return f"{num}/{den}"


def _coeff_and_sign(c):
    """Split a RatQ into (is_negative, text of |c|, needs_parens_before_product)."""
    from .coeffq import RatQ
    neg = c.num[-1] < 0
    if neg:
        c = -c
    text = format_ratq(c)
    wrap = c.den == (1,) and _nterms(c.num) > 1
    return neg, text, wrap, c == RatQ.from_int(1)


def format_terms(terms, mono_text) -> str:
    """Join ``(monomial, coeff)`` pairs, already in print order."""
    parts = []
    for m, c in terms:
        neg, ctext, wrap, unit = _coeff_and_sign(c)
        mtext = mono_text(m)
        if not mtext:
            # a negated polynomial constant needs parens: -(q + 1), not -q + 1
            body = f"({ctext})" if neg and wrap else ctext
        elif unit:
            body = mtext
        else:
            body = f"({ctext})*{mtext}" if wrap else f"{ctext}*{mtext}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts) if parts else "0"


def _pbw_mono_text(names):
    def text(m):
        out = []
        for g, e in enumerate(m):
            if e == 1:
                out.append(names[g])
            elif e:
                out.append(f"{names[g]}^{e}")
        return "*".join(out)
    return text


def gwa_mono_text(key) -> str:
    i, j = key
    out = []
    if i == 1:
        out.append("h")
    elif i:
        out.append(f"h^{i}")
    if j:
        g = "x" if j > 0 else "y"
        out.append(g if abs(j) == 1 else f"{g}^{abs(j)}")
    return "*".join(out)


def print_canonical(e) -> str:
    """Deterministic text of an element, highest graded-lex term first."""
    from .pbw import Elem
    if isinstance(e, Elem):
        terms = list(reversed(e.items()))
        return format_terms(terms, _pbw_mono_text(e.alg.names))
    from .gwa import GwaElem
    if isinstance(e, GwaElem):
        return format_terms(list(reversed(e.items())), gwa_mono_text)
    raise TypeError(f"cannot print {type(e).__name__}")


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Gen:
    name: str


@dataclass(frozen=True)
class Scalar:
    value: object  # RatQ


@dataclass(frozen=True)
class Power:
    base: object
    exp: int


@dataclass(frozen=True)
class Product:
    factors: tuple  # ((op, node), ...) with op in "*", "/"


@dataclass(frozen=True)
class Sum:
    terms: tuple  # ((sign, node), ...) with sign in +1, -1


@dataclass
class Context:
    """What a parser may see: generator symbols, which are invertible, params."""

    tag: str
    generators: tuple
    invertible: frozenset = frozenset()
    params: object = None
    algebra: object = None
    resolve: dict = field(default_factory=dict)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text: str) -> list:
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        num, ident, op = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            toks.append(("int", int(num), start))
        elif ident is not None:
            toks.append(("ident", ident, start))
        else:
            if op not in "+-*/^()":
                raise ParseError(f"unexpected character {op!r}", start)
            toks.append(("op", op, start))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, ctx: Context):
        self.toks = _tokenize(text)
        self.i = 0
        self.ctx = ctx

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, op):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            raise ParseError(f"expected {op!r}", t[2])
        return t

    def parse(self):
        node = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise ParseError(f"unexpected token {t[1]!r}", t[2])
        return node

    def expr(self):
        terms = []
        sign = 1
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            sign = -1 if t[1] == "-" else 1
        terms.append((sign, self.term()))
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                terms.append((-1 if t[1] == "-" else 1, self.term()))
            else:
                break
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Sum(tuple(terms))

    def term(self):
        factors = [("*", self.factor())]
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "*/":
                self.take()
                factors.append((t[1], self.factor()))
            else:
                break
        if len(factors) == 1:
            return factors[0][1]
        return Product(tuple(factors))

    def _int(self):
        t = self.peek()
        sign = 1
        if t[0] == "op" and t[1] in "+-":
            self.take()
            sign = -1 if t[1] == "-" else 1
            t = self.peek()
        if t[0] != "int":
            raise ParseError("expected an integer exponent", t[2])
        self.take()
        return sign * t[1]

    def factor(self):
        start = self.peek()[2]
        base = self.atom()
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            t = self.peek()
            if t[0] == "op" and t[1] == "(":
                self.take()
                e = self._int()
                self.expect(")")
            else:
                e = self._int()
            if e < 0 and isinstance(base, Gen) and base.name not in self.ctx.invertible:
                raise NegativePowerNotInvertible(
                    f"{base.name}^{e}: {base.name} is not invertible in {self.ctx.tag} "
                    f"(at position {start})")
            return Power(base, e)
        return base

    def atom(self):
        from .coeffq import RatQ
        t = self.take()
        kind, val, pos = t
        if kind == "int":
            return Scalar(RatQ.from_int(val))
        if kind == "ident":
            if val == "q":
                return Scalar(RatQ.q())
            if val in ("alpha", "beta"):
                if self.ctx.params is None:
                    raise UnknownGenerator(f"{val} has no value in {self.ctx.tag} (at position {pos})")
                return Scalar(getattr(self.ctx.params, val))
            if val not in self.ctx.generators:
                raise UnknownGenerator(
                    f"{val!r} is not a generator of {self.ctx.tag} (at position {pos})")
            return Gen(val)
        if kind == "op" and val == "(":
            node = self.expr()
            self.expect(")")
            return node
        raise ParseError(f"unexpected token {val!r}" if val is not None else "unexpected end",
                         pos)


def parse(text: str, context: Context):
    """Parse ``text`` into an expression tree for the given context."""
    return _Parser(text, context).parse()


def context_for(alg) -> Context:
    """Build the parsing context of a presentation, a B/R algebra, or a GWA."""
    from .gwa import GwaAlgebra
    if isinstance(alg, GwaAlgebra):
        return Context("gwa", ("h", "x", "y"), frozenset({"h"}), algebra=alg)
    params = getattr(alg, "params", None)
    inv = {alg.names[i] for i in alg.invertible}
    if params is None:
        return Context(alg.name, alg.names, frozenset(inv), algebra=alg)
    gens = ("e1", "e2", "e3", "e4")
    if "e4" in inv:
        gens = gens + ("f1", "f2")
        inv.add("f2")
    return Context(alg.name, gens, frozenset(inv), params=params, algebra=alg)


SCALAR_CONTEXT = Context("scalar", ())


def _generator_value(ctx: Context, name: str, e: int):
    from .gwa import GwaAlgebra
    alg = ctx.algebra
    if isinstance(alg, GwaAlgebra):
        if name == "h":
            return alg.h(e)
        base = alg.x() if name == "x" else alg.y()
        return base ** e
    if ctx.params is not None:
        from .bquot import b_generators, f_elements
        if name in ("e1", "e2", "e4"):
            return alg.gen(name, e)
        if name == "e3":
            return b_generators(alg)[2] ** e
        f1, f2 = f_elements(alg)
        if name == "f1":
            return f1 ** e
        if e >= 0:
            return f2 ** e
        return alg.gen("e4", -e).scale(ctx.params.beta ** e)
    return alg.gen(name, e)


def evaluate(node, ctx: Context):
    """Evaluate a tree to a RatQ (scalar-only trees) or an algebra element."""
    from .coeffq import RatQ
    if isinstance(node, Scalar):
        return node.value
    if isinstance(node, Gen):
        return _generator_value(ctx, node.name, 1)
    if isinstance(node, Power):
        if isinstance(node.base, Gen):
            return _generator_value(ctx, node.base.name, node.exp)
        base = evaluate(node.base, ctx)
        if isinstance(base, RatQ):
            return base ** node.exp
        if node.exp < 0:
            raise NegativePowerNotInvertible("negative power of a non-generator element")
        return base ** node.exp
    if isinstance(node, Product):
        acc = None
        for op, sub in node.factors:
            v = evaluate(sub, ctx)
            if acc is None:
                acc = v
            elif op == "/":
                if not isinstance(v, RatQ):
                    raise ParseError("division is only allowed by scalars")
                acc = acc * v.inverse() if isinstance(acc, RatQ) else acc.scale(v.inverse())
            elif isinstance(acc, RatQ) and not isinstance(v, RatQ):
                acc = v.scale(acc)
            else:
                acc = acc * v
        return acc
    if isinstance(node, Sum):
        acc = None
        for sign, sub in node.terms:
            v = evaluate(sub, ctx)
            if sign < 0:
                v = -v
            if acc is None:
                acc = v
            elif isinstance(acc, RatQ) and isinstance(v, RatQ):
                acc = acc + v
            else:
                acc = _as_elem(ctx, acc) + _as_elem(ctx, v)
        return acc
    raise TypeError(f"unknown node {node!r}")


def _as_elem(ctx: Context, v):
    from .coeffq import RatQ
    if isinstance(v, RatQ):
        return ctx.algebra.scalar(v)
    return v


def parse_element(text: str, alg):
    """Parse and normalize ``text`` as an element of ``alg``."""
    ctx = context_for(alg)
    v = evaluate(parse(text, ctx), ctx)
    return _as_elem(ctx, v)


def parse_ratq(text: str, params=None):
    """Parse a scalar expression in q (and alpha/beta when params are given)."""
    from .coeffq import RatQ
    ctx = Context("scalar", (), params=params)
    v = evaluate(parse(text, ctx), ctx)
    if not isinstance(v, RatQ):
        raise ParseError("expected a scalar expression")
    return v


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def ratq_to_json(c) -> dict:
    return {"num": format_poly(c.num), "den": format_poly(c.den)}


def ratq_from_json(obj):
    if not isinstance(obj, dict) or set(obj) != {"num", "den"}:
        raise SchemaError(f"coefficient must be {{'num', 'den'}}, got {obj!r}")
    try:
        return parse_ratq(obj["num"]) / parse_ratq(obj["den"])
    except (ParseError, UnknownGenerator, TypeError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad coefficient {obj!r}: {exc}") from exc


def element_to_obj(e) -> dict:
    return {"terms": [{"exp": list(m), "coeff": ratq_to_json(c)} for m, c in e.items()]}


def element_to_json(e) -> str:
    return json.dumps(element_to_obj(e))


def element_from_obj(obj, alg):
    from .gwa import GwaAlgebra
    if not isinstance(obj, dict) or "terms" not in obj or not isinstance(obj["terms"], list):
        raise SchemaError("element must be an object with a 'terms' list")
    width = 2 if isinstance(alg, GwaAlgebra) else alg.ngens
    terms = {}
    for t in obj["terms"]:
        if not isinstance(t, dict) or set(t) != {"exp", "coeff"}:
            raise SchemaError(f"term must have exactly 'exp' and 'coeff': {t!r}")
        exp = t["exp"]
        if (not isinstance(exp, list) or len(exp) != width
                or not all(isinstance(v, int) and not isinstance(v, bool) for v in exp)):
            raise SchemaError(f"'exp' must be a list of {width} integers: {exp!r}")
        key = tuple(exp)
        if key in terms:
            raise SchemaError(f"duplicate monomial {exp}")
        terms[key] = ratq_from_json(t["coeff"])
    try:
        return alg.element(terms)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def element_from_json(text: str, alg):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    return element_from_obj(obj, alg)


def report_entry(identity: str, anchor: str, residual) -> dict:
    status = "pass" if residual is None or not residual else "fail"
    entry = {"identity": identity, "anchor": anchor, "status": status}
    if residual is not None and hasattr(residual, "items"):
        entry["residual"] = element_to_obj(residual)
    return entry
