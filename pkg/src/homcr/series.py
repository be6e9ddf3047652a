"""Exact weighted truncated power series over the Gaussian rationals.

Everything downstream (surface jets, vector-field coefficients, normal
form computations) is built on :class:`TruncatedSeries`.  Coefficients are
:class:`GaussianRational` values, so no rounding ever happens.

A series carries a :class:`VariableTable` (names plus positive integer
weights) and a ``cutoff``: every monomial of weighted degree greater than
the cutoff is unknown and therefore dropped.  ``cutoff=None`` marks an
exact polynomial, which is what the affine vector fields of the catalog
are.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

Rational = Fraction

Exponent = Tuple[int, ...]


class SeriesError(ValueError):
    """Invalid series operation (table mismatch, bad substitution, ...)."""


class NonRationalExpansion(SeriesError):
    """An elementary function was asked for a Taylor expansion whose
    coefficients are not Gaussian rational."""


class GaussianRational:
    """Complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im:
                raise TypeError("imaginary part given twice")
            self.re, self.im = re.re, re.im
            return
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        g = object.__new__(cls)
        g.re = re
        g.im = im
        return g

    @staticmethod
    def coerce(value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, complex):
            raise TypeError("floating point complex values are not exact")
        if isinstance(value, float):
            raise TypeError("floating point values are not exact")
        return GaussianRational(value)

    def __add__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return GaussianRational._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return GaussianRational._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        if not self.im and not o.im:
            return GaussianRational._raw(self.re * o.re, Fraction(0))
        return GaussianRational._raw(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("only integer powers are exact")
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "GaussianRational":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return GaussianRational._raw(self.re / n, -self.im / n)

    def conj(self) -> "GaussianRational":
        return GaussianRational._raw(self.re, -self.im)

    def norm(self) -> Fraction:
        """|x|^2 as a rational."""
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        im = "i" if self.im == 1 else "-i" if self.im == -1 else f"{self.im}*i"
        if not self.re:
            return im
        sign = "+" if self.im > 0 else "-"
        mag = "i" if abs(self.im) == 1 else f"{abs(self.im)}*i"
        return f"({self.re}{sign}{mag})"


def _coerce_or_none(value) -> Optional[GaussianRational]:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational._raw(Fraction(value), Fraction(0))
    return None


ZERO = GaussianRational._raw(Fraction(0), Fraction(0))
ONE = GaussianRational._raw(Fraction(1), Fraction(0))
I = GaussianRational._raw(Fraction(0), Fraction(1))


class VariableTable:
    """Ordered variable names with positive integer weights."""

    __slots__ = ("names", "weights", "_index")

    def __init__(self, names: Sequence[str], weights: Optional[Sequence[int]] = None):
        names = tuple(names)
        if weights is None:
            weights = (1,) * len(names)
        weights = tuple(int(w) for w in weights)
        if len(names) != len(weights):
            raise SeriesError("names and weights differ in length")
        if len(set(names)) != len(names):
            raise SeriesError("duplicate variable name")
        if any(w <= 0 for w in weights):
            raise SeriesError("weights must be positive")
        if len(names) > 6:
            raise SeriesError("at most 6 variables are supported")
        self.names = names
        self.weights = weights
        self._index = {n: k for k, n in enumerate(names)}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise SeriesError(f"unknown variable {name!r}") from None

    def __contains__(self, name):
        return name in self._index

    def __len__(self):
        return len(self.names)

    def weight_of(self, exp: Exponent) -> int:
        return sum(e * w for e, w in zip(exp, self.weights))

    def __eq__(self, other):
        if not isinstance(other, VariableTable):
            return NotImplemented
        return self.names == other.names and self.weights == other.weights

    def __hash__(self):
        return hash((self.names, self.weights))

    def __repr__(self):
        inner = ", ".join(f"{n}:{w}" for n, w in zip(self.names, self.weights))
        return f"VariableTable({inner})"


# canonical holomorphic chart and the realified charts
CR_CHART = VariableTable(("z", "w2", "w3"), (1, 2, 3))
REAL_CHART = VariableTable(("x", "y", "u2", "v2", "u3", "v3"), (1, 1, 2, 2, 3, 3))
GRAPH_CHART = VariableTable(("x", "y", "u2", "u3"), (1, 1, 2, 3))


def _min_cutoff(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


Scalar = Union[int, Fraction, GaussianRational]


class TruncatedSeries:
    """Immutable weighted truncated multivariate power series."""

    __slots__ = ("vars", "coeffs", "cutoff", "_hash")

    def __init__(
        self,
        vars: VariableTable,
        coeffs: Mapping[Exponent, Scalar] = (),
        cutoff: Optional[int] = None,
    ):
        if cutoff is not None and cutoff < 0:
            # nothing is known; the series is the unknown O(0)
            cutoff = -1
        self.vars = vars
        self.cutoff = cutoff
        clean: Dict[Exponent, GaussianRational] = {}
        n = len(vars)
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for exp, c in items:
            exp = tuple(exp)
            if len(exp) != n:
                raise SeriesError("exponent length does not match variable table")
            c = GaussianRational.coerce(c)
            if not c:
                continue
            if cutoff is not None and vars.weight_of(exp) > cutoff:
                continue
            clean[exp] = c
        self.coeffs = clean
        self._hash = None

    @classmethod
    def _trusted(cls, vars, coeffs, cutoff) -> "TruncatedSeries":
        s = object.__new__(cls)
        s.vars = vars
        s.coeffs = coeffs
        s.cutoff = cutoff
        s._hash = None
        return s

    # ------------------------------------------------------------------ builders
    @classmethod
    def zero(cls, vars: VariableTable, cutoff: Optional[int] = None):
        return cls._trusted(vars, {}, cutoff)

    @classmethod
    def constant(cls, vars: VariableTable, value: Scalar, cutoff: Optional[int] = None):
        return cls(vars, {(0,) * len(vars): value}, cutoff)

    @classmethod
    def variable(cls, vars: VariableTable, name: str, cutoff: Optional[int] = None):
        exp = [0] * len(vars)
        exp[vars.index(name)] = 1
        return cls(vars, {tuple(exp): 1}, cutoff)

    @classmethod
    def monomial(cls, vars, exp: Exponent, coeff: Scalar = 1, cutoff=None):
        return cls(vars, {tuple(exp): coeff}, cutoff)

    # ------------------------------------------------------------------ basics
    def weight(self, exp: Exponent) -> int:
        return self.vars.weight_of(exp)

    def __iter__(self):
        return iter(sorted(self.coeffs.items()))

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, exp: Exponent) -> GaussianRational:
        return self.coeffs.get(tuple(exp), ZERO)

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def exact(self) -> bool:
        return self.cutoff is None

    def constant_term(self) -> GaussianRational:
        return self.coeffs.get((0,) * len(self.vars), ZERO)

    def valuation(self) -> Optional[int]:
        """Lowest weighted degree present; None for the zero series."""
        if not self.coeffs:
            return None
        return min(self.vars.weight_of(e) for e in self.coeffs)

    def max_weight(self) -> int:
        if not self.coeffs:
            return -1
        return max(self.vars.weight_of(e) for e in self.coeffs)

    def homogeneous_part(self, w: int) -> "TruncatedSeries":
        wt = self.vars.weight_of
        return TruncatedSeries._trusted(
            self.vars, {e: c for e, c in self.coeffs.items() if wt(e) == w}, None
        )

    def truncate(self, cutoff: Optional[int]) -> "TruncatedSeries":
        c = _min_cutoff(self.cutoff, cutoff)
        if c is None:
            return self
        wt = self.vars.weight_of
        return TruncatedSeries._trusted(
            self.vars, {e: v for e, v in self.coeffs.items() if wt(e) <= c}, c
        )

    def with_cutoff_none(self) -> "TruncatedSeries":
        """Reinterpret the stored terms as an exact polynomial."""
        return TruncatedSeries._trusted(self.vars, dict(self.coeffs), None)

    def is_real(self) -> bool:
        return all(c.im == 0 for c in self.coeffs.values())

    def real_part(self) -> "TruncatedSeries":
        return TruncatedSeries(self.vars, {e: c.re for e, c in self.coeffs.items()}, self.cutoff)

    def imag_part(self) -> "TruncatedSeries":
        return TruncatedSeries(self.vars, {e: c.im for e, c in self.coeffs.items()}, self.cutoff)

    def conj_coeffs(self) -> "TruncatedSeries":
        return TruncatedSeries._trusted(
            self.vars, {e: c.conj() for e, c in self.coeffs.items()}, self.cutoff
        )

    def require_real(self, what: str = "series") -> "TruncatedSeries":
        if not self.is_real():
            raise SeriesError(f"{what} has non-real coefficients")
        return self

    # ------------------------------------------------------------------ ring ops
    def _check(self, other: "TruncatedSeries"):
        if self.vars != other.vars:
            raise SeriesError(f"variable table mismatch: {self.vars} vs {other.vars}")

    def _lift(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            self._check(other)
            return other
        c = _coerce_or_none(other)
        if c is None:
            raise TypeError(f"cannot combine series with {type(other).__name__}")
        return TruncatedSeries.constant(self.vars, c)

    def __add__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        cut = _min_cutoff(self.cutoff, o.cutoff)
        out = dict(self.coeffs)
        for e, c in o.coeffs.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                s = v + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        if cut is not None and (cut != self.cutoff or cut != o.cutoff):
            wt = self.vars.weight_of
            out = {e: c for e, c in out.items() if wt(e) <= cut}
        return TruncatedSeries._trusted(self.vars, out, cut)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries._trusted(
            self.vars, {e: -c for e, c in self.coeffs.items()}, self.cutoff
        )

    def __sub__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return o + (-self)

    def scale(self, k: Scalar) -> "TruncatedSeries":
        k = GaussianRational.coerce(k)
        if not k:
            return TruncatedSeries._trusted(self.vars, {}, self.cutoff)
        return TruncatedSeries._trusted(
            self.vars, {e: c * k for e, c in self.coeffs.items()}, self.cutoff
        )

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            c = _coerce_or_none(other)
            if c is None:
                return NotImplemented
            return self.scale(c)
        self._check(other)
        return _mul(self, other, _min_cutoff(self.cutoff, other.cutoff))

    def __rmul__(self, other):
        c = _coerce_or_none(other)
        if c is None:
            return NotImplemented
        return self.scale(c)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise SeriesError("only non-negative integer powers; use inverse() for negatives")
        result = TruncatedSeries.constant(self.vars, 1, self.cutoff)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return (
                self.vars == other.vars
                and self.cutoff == other.cutoff
                and self.coeffs == other.coeffs
            )
        c = _coerce_or_none(other)
        if c is None:
            return NotImplemented
        return self.coeffs == ({(0,) * len(self.vars): c} if c else {})

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, self.cutoff, frozenset(self.coeffs.items())))
        return self._hash

    def agrees_with(self, other: "TruncatedSeries", upto: Optional[int] = None) -> bool:
        """Coefficientwise equality of all terms of weight <= upto (default:
        the smaller cutoff)."""
        self._check(other)
        if upto is None:
            upto = _min_cutoff(self.cutoff, other.cutoff)
        diff = self - other
        wt = self.vars.weight_of
        return all(upto is not None and wt(e) > upto for e in diff.coeffs)

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; needs an invertible constant term and a
        finite cutoff unless the series is a nonzero constant."""
        c0 = self.constant_term()
        if not c0:
            raise SeriesError("series with zero constant term is not invertible")
        rest = self - c0
        if rest.is_zero():
            return TruncatedSeries.constant(self.vars, c0.inverse(), self.cutoff)
        if self.cutoff is None:
            raise SeriesError("inverse of a non-constant polynomial needs a cutoff")
        inv0 = c0.inverse()
        t = rest.scale(-inv0)
        # 1/(c0 (1 - t)) = inv0 * sum t^k
        return compose_univariate([inv0] * (self.cutoff + 1), t)

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return self * other.inverse()
        c = _coerce_or_none(other)
        if c is None:
            return NotImplemented
        return self.scale(c.inverse())

    # ------------------------------------------------------------------ calculus
    def differentiate(self, name: str) -> "TruncatedSeries":
        k = self.vars.index(name)
        w = self.vars.weights[k]
        out = {}
        for e, c in self.coeffs.items():
            p = e[k]
            if p == 0:
                continue
            ne = list(e)
            ne[k] = p - 1
            out[tuple(ne)] = c * p
        cut = None if self.cutoff is None else self.cutoff - w
        return TruncatedSeries._trusted(self.vars, out, cut)

    def substitute(
        self,
        bindings: Mapping[str, "TruncatedSeries"],
        target: Optional[VariableTable] = None,
    ) -> "TruncatedSeries":
        """Compose: replace each bound variable by its binding series.

        Unbound variables are kept as themselves, which requires the target
        table to be this series' own table.  The result cutoff is the largest
        weight up to which the composition is determined by the known terms.
        """
        return substitute(self, bindings, target)

    def evaluate(self, point: Mapping[str, Scalar]) -> GaussianRational:
        """Exact value of a polynomial (cutoff None) at a point."""
        if self.cutoff is not None:
            raise SeriesError("only exact polynomials can be evaluated away from the center")
        vals = [GaussianRational.coerce(point[n]) for n in self.vars.names]
        total = ZERO
        for e, c in self.coeffs.items():
            term = c
            for v, p in zip(vals, e):
                if p:
                    term = term * v ** p
            total = total + term
        return total

    def map_coeffs(self, fn) -> "TruncatedSeries":
        return TruncatedSeries(self.vars, {e: fn(c) for e, c in self.coeffs.items()}, self.cutoff)

    def retable(self, vars: VariableTable, mapping: Optional[Mapping[str, str]] = None):
        """Re-express in another table by renaming/embedding variables (no
        weight-changing substitution: target weights must not be smaller)."""
        mapping = dict(mapping or {})
        idx = []
        for n in self.vars.names:
            tn = mapping.get(n, n)
            idx.append(vars.index(tn))
        out = {}
        for e, c in self.coeffs.items():
            ne = [0] * len(vars)
            for k, p in zip(idx, e):
                ne[k] += p
            out[tuple(ne)] = c
        # a monomial's weight can only grow when target weights are larger
        for k, n in enumerate(self.vars.names):
            if vars.weights[idx[k]] < self.vars.weights[k]:
                raise SeriesError("retable would lower a weight; use substitute")
        return TruncatedSeries(vars, out, self.cutoff)

    # ------------------------------------------------------------------ display
    def __repr__(self):
        return f"TruncatedSeries({self.to_str()}, cutoff={self.cutoff})"

    def to_str(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        items = sorted(self.coeffs.items(), key=lambda kv: (self.weight(kv[0]), kv[0]))
        for e, c in items:
            mono = "*".join(
                n if p == 1 else f"{n}^{p}" for n, p in zip(self.vars.names, e) if p
            )
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif c == ONE:
                parts.append(mono)
            elif c == -ONE:
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts)


# ---------------------------------------------------------------------- kernels
def _buckets(s: TruncatedSeries):
    wt = s.vars.weight_of
    b: Dict[int, list] = {}
    for e, c in s.coeffs.items():
        b.setdefault(wt(e), []).append((e, c.re, c.im))
    return b


def _mul(a: TruncatedSeries, b: TruncatedSeries, cut: Optional[int]) -> TruncatedSeries:
    if not a.coeffs or not b.coeffs:
        return TruncatedSeries._trusted(a.vars, {}, cut)
    ba = _buckets(a)
    bb = _buckets(b)
    acc_re: Dict[Exponent, Fraction] = {}
    acc_im: Dict[Exponent, Fraction] = {}
    wb_sorted = sorted(bb)
    for wa, terms_a in ba.items():
        if cut is not None and wa > cut:
            continue
        for wb in wb_sorted:
            if cut is not None and wa + wb > cut:
                break
            for ea, ar, ai in terms_a:
                for eb, br, bi in bb[wb]:
                    e = tuple(x + y for x, y in zip(ea, eb))
                    if ai or bi:
                        r = ar * br - ai * bi
                        im = ar * bi + ai * br
                        if im:
                            acc_im[e] = acc_im.get(e, 0) + im
                    else:
                        r = ar * br
                    if r:
                        acc_re[e] = acc_re.get(e, 0) + r
    out = {}
    for e in set(acc_re) | set(acc_im):
        r = acc_re.get(e, 0)
        im = acc_im.get(e, 0)
        if r or im:
            out[e] = GaussianRational._raw(Fraction(r), Fraction(im))
    return TruncatedSeries._trusted(a.vars, out, cut)


def _knapsack_cutoff(weights: Sequence[int], valuations: Sequence[Optional[int]], cutoff: int) -> Optional[int]:
    """Largest N such that every monomial of weight > cutoff maps to image
    valuation > N.  valuations[i] is None when the binding is zero."""
    need = cutoff + 1
    INF = float("inf")
    best = [0] + [INF] * need
    for r in range(1, need + 1):
        m = INF
        for w, v in zip(weights, valuations):
            if v is None:
                continue
            prev = best[max(0, r - w)]
            if prev + v < m:
                m = prev + v
        best[r] = m
    if best[need] == INF:
        return None
    return int(best[need]) - 1


def substitute(
    a: TruncatedSeries,
    bindings: Mapping[str, TruncatedSeries],
    target: Optional[VariableTable] = None,
) -> TruncatedSeries:
    tables = {b.vars for b in bindings.values()}
    if len(tables) > 1:
        raise SeriesError("all bindings must share one variable table")
    if target is None:
        target = next(iter(tables)) if tables else a.vars
    if tables and next(iter(tables)) != target:
        raise SeriesError("bindings are not in the target table")
    for name in bindings:
        a.vars.index(name)
    full = []
    for k, name in enumerate(a.vars.names):
        if name in bindings:
            full.append(bindings[name])
        else:
            if target != a.vars:
                raise SeriesError(f"variable {name!r} left unbound in a table change")
            full.append(TruncatedSeries.variable(target, name))
    used = [any(e[k] for e in a.coeffs) for k in range(len(full))]
    if a.cutoff is not None:
        for k, b in enumerate(full):
            if b.constant_term():
                raise SeriesError(
                    f"binding for {a.vars.names[k]!r} has a constant term; re-center first"
                )
    # determine the result cutoff
    cut: Optional[int] = None
    if a.cutoff is not None:
        vals = [b.valuation() for b in full]
        cut = _knapsack_cutoff(a.vars.weights, vals, a.cutoff)
    for k, b in enumerate(full):
        if used[k] and b.cutoff is not None:
            cut = _min_cutoff(cut, b.cutoff)
    if cut is None and a.cutoff is not None:
        # all bindings vanish: only the constant term survives, exactly
        pass
    full = [b.truncate(cut) for b in full]
    one = TruncatedSeries.constant(target, 1, cut)
    powers = [[one] for _ in full]

    def power(k: int, p: int) -> TruncatedSeries:
        lst = powers[k]
        while len(lst) <= p:
            lst.append(_mul(lst[-1], full[k], cut))
        return lst[p]

    # Horner-like: group by exponent prefix, caching partial products
    cache: Dict[Exponent, TruncatedSeries] = {(): one}

    def prefix(e: Exponent) -> TruncatedSeries:
        got = cache.get(e)
        if got is not None:
            return got
        head = prefix(e[:-1])
        k = len(e) - 1
        res = head if e[-1] == 0 else _mul(head, power(k, e[-1]), cut)
        cache[e] = res
        return res

    acc: Dict[Exponent, GaussianRational] = {}
    for e, c in sorted(a.coeffs.items()):
        term = prefix(e)
        for te, tc in term.coeffs.items():
            v = acc.get(te)
            nv = tc * c if v is None else v + tc * c
            acc[te] = nv
    return TruncatedSeries(target, acc, cut)


def compose_univariate(coeffs: Sequence[Scalar], t: TruncatedSeries) -> TruncatedSeries:
    """sum_k coeffs[k] * t^k for a series t with zero constant term (Horner)."""
    if t.constant_term():
        raise SeriesError("inner series must have zero constant term")
    cut = t.cutoff
    result = TruncatedSeries.zero(t.vars, cut)
    for c in reversed(list(coeffs)):
        result = _mul(result, t, cut) + TruncatedSeries.constant(t.vars, c, cut)
    return result


# ------------------------------------------------------------------ elementary
T_TABLE = VariableTable(("t",), (1,))

ELEMENTARY = ("exp", "log", "sin", "cos", "sinh", "cosh", "sqrt", "arcsin", "arctan", "pow")


def rational_root(q: Fraction, n: int) -> Optional[Fraction]:
    """Exact n-th root of a non-negative rational, or None."""
    q = Fraction(q)
    if q < 0:
        return None
    if q == 0:
        return Fraction(0)

    def iroot(k: int) -> Optional[int]:
        r = round(k ** (1.0 / n))
        for c in (r - 1, r, r + 1):
            if c >= 0 and c ** n == k:
                return c
        # large numbers: integer Newton iteration
        x = 1 << ((k.bit_length() + n - 1) // n)
        while True:
            y = ((n - 1) * x + k // x ** (n - 1)) // n
            if y >= x:
                break
            x = y
        return x if x ** n == k else None

    a = iroot(q.numerator)
    b = iroot(q.denominator)
    if a is None or b is None:
        return None
    return Fraction(a, b)


def rational_power(c: Fraction, r: Fraction) -> Optional[Fraction]:
    """c**r when it is rational (c > 0), else None."""
    c = Fraction(c)
    r = Fraction(r)
    if c <= 0:
        return None
    root = rational_root(c, r.denominator)
    if root is None:
        return None
    return root ** r.numerator


def _binomial(r: Fraction, k: int) -> Fraction:
    out = Fraction(1)
    for j in range(k):
        out = out * (r - j) / (j + 1)
    return out


def elementary_coefficients(func: str, center, cutoff: int, power=None) -> list:
    """Taylor coefficients c_0..c_cutoff of func around center, exactly."""
    center = GaussianRational.coerce(center)
    if not center.is_real():
        raise NonRationalExpansion(f"{func} expansion center must be real")
    c = center.re
    n = cutoff
    if func == "exp":
        if c != 0:
            raise NonRationalExpansion("exp only expands rationally at 0")
        return [Fraction(1, factorial(k)) for k in range(n + 1)]
    if func == "log":
        if c != 1:
            raise NonRationalExpansion("log only expands rationally at 1")
        return [Fraction(0)] + [Fraction((-1) ** (k + 1), k) for k in range(1, n + 1)]
    if func in ("sin", "cos", "sinh", "cosh", "arcsin", "arctan"):
        if c != 0:
            raise NonRationalExpansion(f"{func} only expands rationally at 0")
        out = [Fraction(0)] * (n + 1)
        for k in range(n + 1):
            if func == "sin" and k % 2 == 1:
                out[k] = Fraction((-1) ** (k // 2), factorial(k))
            elif func == "cos" and k % 2 == 0:
                out[k] = Fraction((-1) ** (k // 2), factorial(k))
            elif func == "sinh" and k % 2 == 1:
                out[k] = Fraction(1, factorial(k))
            elif func == "cosh" and k % 2 == 0:
                out[k] = Fraction(1, factorial(k))
            elif func == "arctan" and k % 2 == 1:
                out[k] = Fraction((-1) ** (k // 2), k)
            elif func == "arcsin" and k % 2 == 1:
                m = k // 2
                out[k] = Fraction(factorial(2 * m), 4 ** m * factorial(m) ** 2 * (2 * m + 1))
        return out
    if func in ("sqrt", "pow"):
        r = Fraction(1, 2) if func == "sqrt" else Fraction(power)
        if c == 0:
            if r.denominator == 1 and r >= 0:
                out = [Fraction(0)] * (n + 1)
                if r <= n:
                    out[int(r)] = Fraction(1)
                return out
            raise NonRationalExpansion(f"{func} is not analytic at 0")
        lead = rational_power(c, r)
        if lead is None:
            raise NonRationalExpansion(f"{c}^{r} is not rational")
        return [lead * _binomial(r, k) / c ** k for k in range(n + 1)]
    raise SeriesError(f"unknown elementary function {func!r}")


def elementary_expand(func: str, center=0, cutoff: int = 6, power=None) -> TruncatedSeries:
    """Exact Taylor expansion of an elementary function as a series in t,
    where the function is evaluated at center + t."""
    if func.startswith("pow(") and func.endswith(")"):
        power = Fraction(func[4:-1])
        func = "pow"
    coeffs = elementary_coefficients(func, center, cutoff, power)
    return TruncatedSeries(T_TABLE, {(k,): c for k, c in enumerate(coeffs)}, cutoff)


def apply_elementary(func: str, s: TruncatedSeries, power=None) -> TruncatedSeries:
    """f(s) for a series s whose constant term is a rational expansion center."""
    if s.cutoff is None:
        raise SeriesError("applying an elementary function needs a finite cutoff")
    c0 = s.constant_term()
    coeffs = elementary_coefficients(func, c0, max(s.cutoff, 0), power)
    return compose_univariate(coeffs, s - c0)


# ------------------------------------------------------------------ implicit
def implicit_solve(
    equation: TruncatedSeries,
    solve_for: str,
    base: Optional[Mapping[str, Scalar]] = None,
    cutoff: Optional[int] = None,
) -> TruncatedSeries:
    """Solve equation(..., s) = 0 for s as a series in the other variables.

    The equation is given in local coordinates centered at the base point
    unless it is an exact polynomial and ``base`` supplies the point, in which
    case it is re-centered first.  The returned series includes the base
    value of s as its constant term and lives in the table of the remaining
    variables (same names and weights).
    """
    vars = equation.vars
    k = vars.index(solve_for)
    others = [n for n in vars.names if n != solve_for]
    if not others:
        raise SeriesError("implicit_solve needs at least one independent variable")
    s0 = ZERO
    if base:
        s0 = GaussianRational.coerce(base.get(solve_for, 0))
        if any(GaussianRational.coerce(v) for v in base.values()):
            if equation.cutoff is not None:
                raise SeriesError("a truncated equation must already be centered at the base")
            shift = {
                n: TruncatedSeries.variable(vars, n) + GaussianRational.coerce(base.get(n, 0))
                for n in vars.names
            }
            equation = substitute(equation, shift, vars)
    if cutoff is not None:
        equation = equation.truncate(cutoff)
    elif equation.cutoff is None:
        raise SeriesError("implicit_solve needs a cutoff")
    if equation.constant_term():
        raise SeriesError("base point is not on the zero set of the equation")
    ds = equation.differentiate(solve_for).constant_term()
    if not ds:
        raise SeriesError("implicit derivative is singular at the base point")
    out_vars = VariableTable(others, [vars.weights[vars.index(n)] for n in others])
    inv = ds.inverse()
    cut = equation.cutoff
    sigma = TruncatedSeries.zero(out_vars, cut)
    ident = {n: TruncatedSeries.variable(out_vars, n, cut) for n in others}
    for _ in range(cut + 2):
        resid = substitute(equation, dict(ident, **{solve_for: sigma}), out_vars)
        nxt = (sigma - resid.scale(inv)).truncate(resid.cutoff)
        if nxt == sigma:
            break
        sigma = nxt
    return sigma + s0
