"""Expression trees for surface profiles and field coefficients.

Grammar (ASCII)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := "-" unary | power
    power  := atom ("^" unary)?
    atom   := integer | name | func "(" expr ")" | "(" expr ")"

Names are the chart variables, ``i`` and parameters.  Rationals are
written ``p/q`` and parse as a division of integers; the printer emits the
same text back, so parse followed by serialize is the identity on
canonically written input.
"""

from fractions import Fraction
import re

from .series import (
    GaussianRational,
    I,
    SeriesError,
    TruncatedSeries,
    apply_elementary,
    rational_power,
)

FUNCTIONS = ("exp", "log", "sin", "cos", "sinh", "cosh", "sqrt", "arcsin", "arctan")

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class ExprError(ValueError):
    pass


class Node:
    __slots__ = ()


class Num(Node):
    __slots__ = ("value",)

    def __init__(self, value):
        self.value = int(value)

    def __eq__(self, o):
        return isinstance(o, Num) and o.value == self.value

    def __repr__(self):
        return f"Num({self.value})"


class Name(Node):
    __slots__ = ("name",)

    def __init__(self, name):
        self.name = name

    def __eq__(self, o):
        return isinstance(o, Name) and o.name == self.name

    def __repr__(self):
        return f"Name({self.name})"


class BinOp(Node):
    __slots__ = ("op", "left", "right")

    def __init__(self, op, left, right):
        self.op, self.left, self.right = op, left, right

    def __eq__(self, o):
        return isinstance(o, BinOp) and (o.op, o.left, o.right) == (self.op, self.left, self.right)

    def __repr__(self):
        return f"BinOp({self.op!r}, {self.left!r}, {self.right!r})"


class Neg(Node):
    __slots__ = ("arg",)

    def __init__(self, arg):
        self.arg = arg

    def __eq__(self, o):
        return isinstance(o, Neg) and o.arg == self.arg

    def __repr__(self):
        return f"Neg({self.arg!r})"


class Call(Node):
    __slots__ = ("func", "arg")

    def __init__(self, func, arg):
        self.func, self.arg = func, arg

    def __eq__(self, o):
        return isinstance(o, Call) and (o.func, o.arg) == (self.func, self.arg)

    def __repr__(self):
        return f"Call({self.func}, {self.arg!r})"


# ---------------------------------------------------------------- parsing
def _tokens(text):
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        pos = m.end()
        if m.group(1):
            out.append(("num", m.group(1)))
        elif m.group(2):
            out.append(("name", m.group(2)))
        elif m.group(3):
            if m.group(3) not in "+-*/^()":
                raise ExprError(f"unexpected character {m.group(3)!r}")
            out.append(("op", m.group(3)))
    return out


class _Parser:
    def __init__(self, text, extra_functions=()):
        self.toks = _tokens(text)
        self.pos = 0
        self.functions = set(FUNCTIONS) | set(extra_functions)

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ExprError(f"expected {value or kind}, got {tok[1]!r}")
        self.pos += 1
        return tok

    def expr(self):
        node = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            return BinOp("^", base, self.unary())
        return base

    def atom(self):
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return Num(val)
        if kind == "name":
            self.take()
            if val in self.functions:
                self.take("op", "(")
                arg = self.expr()
                self.take("op", ")")
                return Call(val, arg)
            return Name(val)
        if (kind, val) == ("op", "("):
            self.take()
            node = self.expr()
            self.take("op", ")")
            return node
        raise ExprError(f"unexpected token {val!r}")


def parse(text, extra_functions=()):
    p = _Parser(text, extra_functions)
    if not p.toks:
        raise ExprError("empty expression")
    node = p.expr()
    if p.pos != len(p.toks):
        raise ExprError(f"trailing input at token {p.toks[p.pos][1]!r}")
    return node


# ---------------------------------------------------------------- printing
_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4}


def serialize(node) -> str:
    return _ser(node, 0)


def _ser(node, ctx):
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Name):
        return node.name
    if isinstance(node, Call):
        return f"{node.func}({_ser(node.arg, 0)})"
    if isinstance(node, Neg):
        s = "-" + _ser(node.arg, _PREC["neg"])
        return f"({s})" if ctx > _PREC["neg"] else s
    if isinstance(node, BinOp):
        p = _PREC[node.op]
        if node.op == "^":
            left = _ser(node.left, p + 1)
            right = _ser(node.right, _PREC["neg"])
            s = f"{left}^{right}"
        else:
            left = _ser(node.left, p)
            right = _ser(node.right, p + 1)
            sep = f" {node.op} " if node.op in "+-" else node.op
            s = f"{left}{sep}{right}"
        return f"({s})" if ctx > p else s
    raise ExprError(f"cannot serialize {node!r}")


def free_names(node, acc=None):
    acc = set() if acc is None else acc
    if isinstance(node, Name):
        acc.add(node.name)
    elif isinstance(node, BinOp):
        free_names(node.left, acc)
        free_names(node.right, acc)
    elif isinstance(node, (Neg, Call)):
        free_names(node.arg, acc)
    return acc


# ---------------------------------------------------------------- evaluation
def evaluate(node, env, cutoff=None):
    """Evaluate to a TruncatedSeries.

    ``env`` maps names to TruncatedSeries (chart variables, already shifted
    to the base point) or to scalars (parameters).  Elementary functions of
    exact polynomials are expanded to ``cutoff``.
    """
    proto = next((v for v in env.values() if isinstance(v, TruncatedSeries)), None)
    if proto is None:
        raise ExprError("environment needs at least one series variable")
    return _eval(node, env, proto.vars, cutoff)


def _const(vars, value):
    return TruncatedSeries.constant(vars, value)


def _as_scalar(s):
    """The constant value of a series that has no other terms, else None."""
    if not isinstance(s, TruncatedSeries):
        return GaussianRational.coerce(s)
    if all(not any(e) for e in s.coeffs):
        return s.constant_term()
    return None


def _eval(node, env, vars, cutoff):
    if isinstance(node, Num):
        return _const(vars, node.value)
    if isinstance(node, Name):
        if node.name == "i" and "i" not in env:
            return _const(vars, I)
        if node.name not in env:
            raise ExprError(f"unbound name {node.name!r}")
        v = env[node.name]
        if isinstance(v, TruncatedSeries):
            return v
        return _const(vars, GaussianRational.coerce(v))
    if isinstance(node, Neg):
        return -_eval(node.arg, env, vars, cutoff)
    if isinstance(node, Call):
        arg = _eval(node.arg, env, vars, cutoff)
        if arg.cutoff is None:
            if cutoff is None:
                raise ExprError(f"{node.func} of a polynomial needs a cutoff")
            arg = arg.truncate(cutoff)
        if node.func == "sqrt":
            return apply_elementary("pow", arg, Fraction(1, 2))
        return apply_elementary(node.func, arg)
    if isinstance(node, BinOp):
        a = _eval(node.left, env, vars, cutoff)
        if node.op == "^":
            return _power(a, node.right, env, vars, cutoff)
        b = _eval(node.right, env, vars, cutoff)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if node.op == "/":
            bs = _as_scalar(b)
            if bs is not None:
                if not bs:
                    raise ExprError("division by zero")
                return a * TruncatedSeries.constant(vars, bs.inverse(), b.cutoff)
            if b.cutoff is None:
                if cutoff is None:
                    raise ExprError("division by a polynomial needs a cutoff")
                b = b.truncate(cutoff)
            return a * b.inverse()
    raise ExprError(f"cannot evaluate {node!r}")


def _power(a, exp_node, env, vars, cutoff):
    e = _eval(exp_node, env, vars, cutoff)
    es = _as_scalar(e)
    if es is None:
        # a^e = exp(e log a)
        if a.cutoff is None:
            if cutoff is None:
                raise ExprError("non-constant exponent needs a cutoff")
            a = a.truncate(cutoff)
        return apply_elementary("exp", e * apply_elementary("log", a.scale(a.constant_term().inverse()))
                                + _log_const(a.constant_term(), vars))
    if not es.is_real():
        raise ExprError("complex exponents are not supported")
    r = es.re
    if r.denominator == 1 and r >= 0:
        return a ** int(r)
    c0 = a.constant_term()
    if a.cutoff is None:
        if all(not any(x) for x in a.coeffs):
            v = rational_power(c0.re, r) if c0.is_real() else None
            if v is None:
                raise ExprError(f"{c0}^{r} is not rational")
            return _const(vars, v)
        if cutoff is None:
            raise ExprError("fractional power of a polynomial needs a cutoff")
        a = a.truncate(cutoff)
    if r.denominator == 1:
        return a.inverse() ** int(-r)
    return apply_elementary("pow", a, r)


def _log_const(c, vars):
    if c != 1:
        raise SeriesError(f"log({c}) is not rational")
    return _const(vars, 0)


def evaluate_scalar(node, env):
    """Exact value of an expression at a point (names bound to scalars)."""
    from .series import VariableTable

    dummy = VariableTable(("_",))
    senv = {k: TruncatedSeries.constant(dummy, GaussianRational.coerce(v), 0) for k, v in env.items()}
    senv["_"] = TruncatedSeries.variable(dummy, "_", 0)
    s = _eval(node, senv, dummy, 0)
    return s.constant_term()


def series_to_text(s: TruncatedSeries) -> str:
    """Canonical expression text of a polynomial (catalog grammar)."""
    if s.is_zero():
        return "0"
    terms = []
    for e, c in sorted(s.coeffs.items(), key=lambda kv: (s.vars.weight_of(kv[0]), tuple(-p for p in kv[0]))):
        mono = "*".join(n if p == 1 else f"{n}^{p}" for n, p in zip(s.vars.names, e) if p)
        cs = gaussian_to_text(c)
        if not mono:
            terms.append(cs)
        elif cs == "1":
            terms.append(mono)
        elif cs == "-1":
            terms.append("-" + mono)
        else:
            terms.append(f"{cs}*{mono}")
    text = terms[0]
    for t in terms[1:]:
        text += " - " + t[1:] if t.startswith("-") else " + " + t
    return serialize(parse(text))


def gaussian_to_text(c: GaussianRational) -> str:
    def q(v):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"

    if not c.im:
        return q(c.re)
    im = "i" if c.im == 1 else f"{q(c.im)}*i"
    if c.im == -1:
        im = "-i"
    elif c.im < 0:
        im = f"-{q(-c.im)}*i"
    if not c.re:
        return im
    sign = " + " if c.im > 0 else " - "
    imabs = im[1:] if im.startswith("-") else im
    return f"({q(c.re)}{sign}{imabs})"
