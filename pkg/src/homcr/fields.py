"""Holomorphic vector fields on C^3 with series coefficients.

A field f1 d/dz + f2 d/dw2 + f3 d/dw3 stands for its real part (the
factor 2Re is left implicit).  Coefficients live in the unit-weight chart
``CR_UNIT`` and are centered at whatever point the caller chose; exact
polynomial coefficients (cutoff None) are the common case.
"""

from fractions import Fraction

from . import expr as _expr
from . import linalg
from .series import (
    I,
    ZERO,
    GaussianRational,
    SeriesError,
    TruncatedSeries,
    VariableTable,
)

CR_UNIT = VariableTable(("z", "w2", "w3"))
GRAPH_UNIT = VariableTable(("x", "y", "u2", "u3"))
COMPONENTS = ("z", "w2", "w3")


class FieldError(ValueError):
    pass


class HoloVectorField:
    __slots__ = ("coeffs",)

    def __init__(self, coeff_z, coeff_w2, coeff_w3):
        cs = (coeff_z, coeff_w2, coeff_w3)
        tables = {c.vars for c in cs}
        if len(tables) != 1:
            raise FieldError("coefficients must share one variable table")
        cut = _min_cut(*(c.cutoff for c in cs))
        self.coeffs = tuple(c.truncate(cut) for c in cs)

    @property
    def vars(self):
        return self.coeffs[0].vars

    @property
    def cutoff(self):
        return self.coeffs[0].cutoff

    @classmethod
    def from_exprs(cls, texts, params=None, center=(0, 0, 0), cutoff=None, vars=CR_UNIT):
        """Build from three coefficient expressions in z, w2, w3 written in
        absolute coordinates, re-centered at ``center``."""
        env = dict(params or {})
        for name, c in zip(COMPONENTS, center):
            env[name] = TruncatedSeries.variable(vars, name) + GaussianRational.coerce(c)
        cs = []
        for t in texts:
            node = _expr.parse(t) if isinstance(t, str) else t
            cs.append(_expr.evaluate(node, env, cutoff))
        return cls(*cs)

    def apply(self, g: TruncatedSeries) -> TruncatedSeries:
        """Directional derivative sum_k f_k dg/dxi_k."""
        out = TruncatedSeries.zero(g.vars, None)
        for c, name in zip(self.coeffs, COMPONENTS):
            if c.is_zero():
                continue
            out = out + c * g.differentiate(name)
        return out

    def __add__(self, other):
        return HoloVectorField(*(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return HoloVectorField(*(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return HoloVectorField(*(-a for a in self.coeffs))

    def scale(self, k):
        return HoloVectorField(*(a.scale(k) for a in self.coeffs))

    def __eq__(self, other):
        return isinstance(other, HoloVectorField) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def truncate(self, cutoff):
        return HoloVectorField(*(c.truncate(cutoff) for c in self.coeffs))

    def recenter(self, point):
        """Same field written in coordinates centered at ``point`` (exact
        polynomial coefficients only)."""
        if self.cutoff is not None:
            raise FieldError("only polynomial fields can be re-centered")
        b = {
            n: TruncatedSeries.variable(self.vars, n) + GaussianRational.coerce(p)
            for n, p in zip(COMPONENTS, point)
        }
        return HoloVectorField(*(c.substitute(b) for c in self.coeffs))

    def __repr__(self):
        parts = []
        for c, n in zip(self.coeffs, COMPONENTS):
            if not c.is_zero():
                parts.append(f"({c.to_str()})*d/d{n}")
        return "HoloVectorField(" + (" + ".join(parts) or "0") + ")"


def _min_cut(*cuts):
    known = [c for c in cuts if c is not None]
    return min(known) if known else None


def lie_bracket(X: HoloVectorField, Y: HoloVectorField, need=None) -> HoloVectorField:
    """[X, Y] = X(Y) - Y(X).  ``need`` is the verification order the caller
    relies on; an error is raised if the result is truncated below it."""
    if X.vars != Y.vars:
        raise FieldError("variable table mismatch")
    out = HoloVectorField(*(X.apply(b) - Y.apply(a) for a, b in zip(X.coeffs, Y.coeffs)))
    if need is not None and out.cutoff is not None and out.cutoff < need:
        raise FieldError(f"cutoff exhausted: bracket known to {out.cutoff} < {need}")
    return out


def evaluate_at(X: HoloVectorField, p=None):
    """Value at a point as a complex 3-vector.  Without ``p`` the series
    center is used; other points require polynomial coefficients."""
    if p is None or not any(GaussianRational.coerce(v) for v in p):
        return tuple(c.constant_term() for c in X.coeffs)
    if X.cutoff is not None:
        raise FieldError("re-centering a truncated field would exceed its cutoff")
    env = {n: v for n, v in zip(COMPONENTS, p)}
    return tuple(c.evaluate(env) for c in X.coeffs)


def _realify(v):
    out = []
    for x in v:
        x = GaussianRational.coerce(x)
        out.extend([x.re, x.im])
    return out


def rank_over_R(values) -> int:
    return linalg.rank([_realify(v) for v in values])


def rank_over_C(values) -> int:
    return linalg.rank([[GaussianRational.coerce(x) for x in v] for v in values])


# ---------------------------------------------------------------- tangency
class TangencyResult:
    def __init__(self, tangent, residuals, order):
        self.tangent = tangent
        self.residuals = residuals
        self.order = order

    @property
    def residual(self):
        """First nonzero residual (or the zero series)."""
        for r in self.residuals:
            if not r.is_zero():
                return r
        return self.residuals[0]

    def __bool__(self):
        return self.tangent

    def __repr__(self):
        return f"TangencyResult(tangent={self.tangent}, order={self.order})"


def restrict_to_graph(c: TruncatedSeries, F: TruncatedSeries, G: TruncatedSeries) -> TruncatedSeries:
    """Substitute z = x + iy, w2 = u2 + iF, w3 = u3 + iG (centered charts)."""
    vars = F.vars
    x, y, u2, u3 = (TruncatedSeries.variable(vars, n) for n in vars.names)
    b = {"z": x + y.scale(I), "w2": u2 + F.scale(I), "w3": u3 + G.scale(I)}
    return c.substitute(b, vars)


def tangency_residuals(X: HoloVectorField, F, G):
    """Re(X rho_j) restricted to the graph for rho_1 = v2 - F, rho_2 = v3 - G."""
    f1, f2, f3 = (restrict_to_graph(c, F, G) for c in X.coeffs)
    a1, b1 = f1.real_part(), f1.imag_part()
    a2, b2 = f2.real_part(), f2.imag_part()
    a3, b3 = f3.real_part(), f3.imag_part()
    out = []
    for H, b in ((F, b2), (G, b3)):
        r = b - (a1 * H.differentiate("x") + b1 * H.differentiate("y")
                 + a2 * H.differentiate("u2") + a3 * H.differentiate("u3"))
        out.append(r)
    return tuple(out)


def tangency_check(X: HoloVectorField, surface, order: int = 8) -> TangencyResult:
    """``surface`` is a compiled surface (centered jets F, G in the
    unit-weight graph chart, fields centered at the same base point)."""
    F, G = surface.F, surface.G
    if F.cutoff is not None and F.cutoff < order + 1:
        raise FieldError(f"surface jets known to {F.cutoff}, need {order + 1}")
    res = tuple(r.truncate(order) for r in tangency_residuals(X, F, G))
    known = _min_cut(*(r.cutoff for r in res))
    if known is not None and known < order:
        raise FieldError(f"residual only known to order {known} < {order}")
    return TangencyResult(all(r.is_zero() for r in res), res, order)


# ---------------------------------------------------------------- structure constants
def _span_coefficients(target: HoloVectorField, basis, upto):
    """Real coefficients c with target = sum c_k basis_k, or None."""
    keys = set()
    for fld in list(basis) + [target]:
        for comp, c in enumerate(fld.coeffs):
            for e in c.coeffs:
                if upto is None or c.vars.weight_of(e) <= upto:
                    keys.add((comp, e))
    keys = sorted(keys)
    rows, rhs = [], []
    for comp, e in keys:
        vals = [b.coeffs[comp][e] for b in basis]
        t = target.coeffs[comp][e]
        rows.append([v.re for v in vals])
        rhs.append(t.re)
        rows.append([v.im for v in vals])
        rhs.append(t.im)
    if not rows:
        return [Fraction(0)] * len(basis)
    sol = linalg.solve(rows, rhs)
    if sol is None:
        return None
    x, kernel = sol
    if kernel:
        raise FieldError("basis fields are linearly dependent over R")
    return x


def structure_constants_of(basis, upto=None):
    """LieAlgebra4 of four fields closed under the bracket."""
    from .lie import LieAlgebra4

    if len(basis) != 4:
        raise FieldError("need exactly four fields")
    cut = _min_cut(*(b.cutoff for b in basis))
    if cut is not None:
        upto = cut - 1 if upto is None else min(upto, cut - 1)
    c = [[[Fraction(0)] * 4 for _ in range(4)] for _ in range(4)]
    for i in range(4):
        for j in range(i + 1, 4):
            br = lie_bracket(basis[i], basis[j])
            coeffs = _span_coefficients(br, basis, upto)
            if coeffs is None:
                raise FieldError(f"basis not closed: [X{i+1},X{j+1}] is not in the span")
            for k in range(4):
                c[i][j][k] = coeffs[k]
                c[j][i][k] = -coeffs[k]
    return LieAlgebra4(c)


# ---------------------------------------------------------------- real frames
class RealVectorField:
    """Real field sum a_k d/dvar_k on a real chart (series coefficients)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = tuple(coeffs)

    @property
    def vars(self):
        return self.coeffs[0].vars

    def apply(self, g):
        out = TruncatedSeries.zero(g.vars, None)
        for c, name in zip(self.coeffs, g.vars.names):
            if not c.is_zero():
                out = out + c * g.differentiate(name)
        return out

    def value(self):
        return [c.constant_term().re for c in self.coeffs]


def real_bracket(V: RealVectorField, W: RealVectorField) -> RealVectorField:
    return RealVectorField([V.apply(b) - W.apply(a) for a, b in zip(V.coeffs, W.coeffs)])


class RealTangentFrame:
    """Sections of the complex tangent bundle of a graph surface in the
    parameter chart (x, y, u2, u3), with their brackets."""

    def __init__(self, fields):
        self.fields = list(fields)


def complex_tangent_frame(F, G) -> RealTangentFrame:
    """V1 = d/dx + a2 d/du2 + a3 d/du3 and V2 = J V1 in parameter
    coordinates, with (a2, a3) solved from the J-invariance conditions."""
    d = {n: (F.differentiate(n), G.differentiate(n)) for n in ("x", "y", "u2", "u3")}
    Fx, Gx = d["x"]
    Fy, Gy = d["y"]
    Fu2, Gu2 = d["u2"]
    Fu3, Gu3 = d["u3"]
    A00 = 1 + Fu2 * Fu2 + Fu3 * Gu2
    A01 = Fu2 * Fu3 + Fu3 * Gu3
    A10 = Gu2 * Fu2 + Gu3 * Gu2
    A11 = 1 + Gu2 * Fu3 + Gu3 * Gu3
    b0 = Fy - Fu2 * Fx - Fu3 * Gx
    b1 = Gy - Gu2 * Fx - Gu3 * Gx
    det = A00 * A11 - A01 * A10
    inv = det.inverse() if not (det - 1).is_zero() else det
    a2 = (A11 * b0 - A01 * b1) * inv
    a3 = (A00 * b1 - A10 * b0) * inv
    # V2 = (0, 1, -dF(V1), -dG(V1))
    c2 = Fx + a2 * Fu2 + a3 * Fu3
    c3 = Gx + a2 * Gu2 + a3 * Gu3
    zero = TruncatedSeries.zero(F.vars, None)
    one = TruncatedSeries.constant(F.vars, 1)
    V1 = RealVectorField([one, zero, a2, a3])
    V2 = RealVectorField([zero, one, -c2, -c3])
    return RealTangentFrame([V1, V2])


def nondegeneracy_rank(F, G) -> int:
    """Rank at the base point of T^C + [T^C, T^C] + [T^C, [T^C, T^C]]."""
    V1, V2 = complex_tangent_frame(F, G).fields
    B = real_bracket(V1, V2)
    vecs = [V1, V2, B, real_bracket(V1, B), real_bracket(V2, B)]
    return linalg.rank([v.value() for v in vecs])
