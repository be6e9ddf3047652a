"""Sphericity test: is a totally non-degenerate surface locally the cubic?

Pipeline
--------
Step 0 brings the compiled jets to the prepared shape

    v2 = |z|^2 + F3 + F4 + F5 + O(6),  v3 = 2|z|^2 Re z + G4 + G5 + G6 + O(7)

with a handful of explicit polynomial maps (unit-weight chart).  Steps
1-3 then look for z -> z + f_{k+1}, w2 -> w2 + g_{k+2}, w3 -> w3 + h_{k+3}
killing F_{k+2} and G_{k+3}.  At pure weight the effect of such a map is
linear in its coefficients:

    F_{k+2} += Im g(model) - 2 Re(conj(z) f)
    G_{k+3} += Im h(model) - 2 Re((2|z|^2 + conj(z)^2) f)

where "model" means w2 = u2 + i|z|^2, w3 = u3 + 2i|z|^2 Re z.  Each step is
an exact rational linear system; an inconsistent system at step 2 or 3
certifies non-sphericity.  Solutions are applied with ``jet_transport``
(a full substitution, not the linearization), and the composed list of
maps is the certificate.

Weighted polynomials here live in the real chart (x, y, u2, u3) with
weights (1, 1, 2, 3); ``to_zzbar`` rewrites them in z, conj(z).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Tuple

from . import expr as _expr
from .expr import series_to_text
from . import linalg
from .catalog import SurfaceSpec
from .fields import CR_UNIT, GRAPH_UNIT
from .series import (
    CR_CHART,
    GRAPH_CHART,
    I,
    ONE,
    GaussianRational,
    SeriesError,
    TruncatedSeries,
    VariableTable,
)
from .surfaces import compile as compile_surface, total_nondegeneracy

ZZB_CHART = VariableTable(("z", "zb", "u2", "u3"), (1, 1, 2, 3))

STEP_WEIGHTS = {1: (3, 4), 2: (4, 5), 3: (5, 6)}
STATED_DIMENSIONS = {1: (17, 18), 2: (26, 24), 3: (39, 32)}
JET_CUTOFF = 7


class SphericityError(ValueError):
    pass


# ---------------------------------------------------------------- helpers
def _var(vars, name, cutoff=None):
    return TruncatedSeries.variable(vars, name, cutoff)


def _monomials(vars: VariableTable, weight: int):
    """Exponent vectors of the given weighted degree, sorted."""
    out = []
    n = len(vars)

    def rec(i, left, cur):
        if i == n:
            if left == 0:
                out.append(tuple(cur))
            return
        w = vars.weights[i]
        for e in range(left // w + 1):
            rec(i + 1, left - e * w, cur + [e])

    rec(0, weight, [])
    return sorted(out, reverse=True)


def to_zzbar(s: TruncatedSeries) -> TruncatedSeries:
    """Rewrite a polynomial in (x, y, u2, u3) in terms of (z, zb, u2, u3)."""
    z, zb = _var(ZZB_CHART, "z"), _var(ZZB_CHART, "zb")
    half = Fraction(1, 2)
    b = {
        "x": (z + zb).scale(half),
        "y": (z - zb).scale(GaussianRational(0, -half)),
        "u2": _var(ZZB_CHART, "u2"),
        "u3": _var(ZZB_CHART, "u3"),
    }
    return s.with_cutoff_none().substitute(b, ZZB_CHART)


def invert_map(P, vars: VariableTable, cutoff: int):
    """Compositional inverse of a map given by series P_k(s) with zero
    constant terms and invertible degree-one part."""
    n = len(vars)
    L = [[P[i][tuple(int(j == k) for k in range(n))].re for j in range(n)] for i in range(n)]
    try:
        Linv = linalg.inverse(L)
    except ZeroDivisionError:
        raise SphericityError("map has a singular linear part") from None
    ident = [_var(vars, nm, cutoff) for nm in vars.names]
    lin = [sum((ident[j].scale(L[i][j]) for j in range(n) if L[i][j]), TruncatedSeries.zero(vars, cutoff))
           for i in range(n)]
    N = [(P[i] - lin[i]).truncate(cutoff) for i in range(n)]
    Q = [TruncatedSeries.zero(vars, cutoff) for _ in range(n)]
    Q = [sum((ident[j].scale(Linv[i][j]) for j in range(n) if Linv[i][j]), TruncatedSeries.zero(vars, cutoff))
         for i in range(n)]
    for _ in range(cutoff + 2):
        bind = dict(zip(vars.names, Q))
        NQ = [Ni.substitute(bind, vars).truncate(cutoff) for Ni in N]
        rhs = [ident[i] - NQ[i] for i in range(n)]
        new = [sum((rhs[j].scale(Linv[i][j]) for j in range(n) if Linv[i][j]),
                   TruncatedSeries.zero(vars, cutoff)).truncate(cutoff) for i in range(n)]
        if new == Q:
            break
        Q = new
    return Q


def push(F, G, H, cutoff: int):
    """Image of the graph {v2 = F, v3 = G} under the holomorphic map H
    (three series in z, w2, w3 with zero constant terms).  F and G live in
    a real chart (x, y, u2, u3); the result is in the same chart."""
    vars = F.vars
    F = F.truncate(cutoff)
    G = G.truncate(cutoff)
    x, y, u2, u3 = (_var(vars, n, cutoff) for n in vars.names)
    bind = {"z": x + y.scale(I), "w2": u2 + F.scale(I), "w3": u3 + G.scale(I)}
    T = [h.truncate(cutoff).substitute(bind, vars).truncate(cutoff) for h in H]
    for t in T:
        if t.constant_term():
            raise SphericityError("map does not preserve the origin")
    P = [T[0].real_part(), T[0].imag_part(), T[1].real_part(), T[2].real_part()]
    Q = invert_map(P, vars, cutoff)
    bq = dict(zip(vars.names, Q))
    Fn = T[1].imag_part().substitute(bq, vars).truncate(cutoff)
    Gn = T[2].imag_part().substitute(bq, vars).truncate(cutoff)
    return Fn, Gn


# ---------------------------------------------------------------- data types
@dataclass
class PreparedJets:
    """F3..F5, G4..G6 as weighted-homogeneous real polynomials in the
    chart (x, y, u2, u3) with weights (1, 1, 2, 3)."""

    F: Dict[int, TruncatedSeries]
    G: Dict[int, TruncatedSeries]

    @classmethod
    def from_graph(cls, Fs: TruncatedSeries, Gs: TruncatedSeries):
        model2, model3 = model_terms()
        if Fs.vars != GRAPH_CHART:
            raise SphericityError("prepared jets live in the weighted chart")
        low2 = sum((Fs.homogeneous_part(w) for w in (0, 1, 2)), TruncatedSeries.zero(GRAPH_CHART))
        low3 = sum((Gs.homogeneous_part(w) for w in (0, 1, 2, 3)), TruncatedSeries.zero(GRAPH_CHART))
        if low2 != model2 or low3 != model3:
            raise SphericityError(
                "leading terms do not match the model: v2 ~ " + low2.to_str() + ", v3 ~ " + low3.to_str()
            )
        return cls({w: Fs.homogeneous_part(w) for w in (3, 4, 5)},
                   {w: Gs.homogeneous_part(w) for w in (4, 5, 6)})

    def graph(self):
        model2, model3 = model_terms()
        Fs = model2 + sum(self.F.values(), TruncatedSeries.zero(GRAPH_CHART))
        Gs = model3 + sum(self.G.values(), TruncatedSeries.zero(GRAPH_CHART))
        return Fs.truncate(JET_CUTOFF), Gs.truncate(JET_CUTOFF)

    def is_zero(self, upto_step=3):
        wf = range(3, 3 + upto_step)
        wg = range(4, 4 + upto_step)
        return all(self.F[w].is_zero() for w in wf) and all(self.G[w].is_zero() for w in wg)

    def __eq__(self, other):
        return isinstance(other, PreparedJets) and self.F == other.F and self.G == other.G

    def describe(self):
        lines = []
        for w in (3, 4, 5):
            lines.append(f"F{w} = {to_zzbar(self.F[w]).to_str()}")
        for w in (4, 5, 6):
            lines.append(f"G{w} = {to_zzbar(self.G[w]).to_str()}")
        return "\n".join(lines)


def model_terms():
    x, y = _var(GRAPH_CHART, "x"), _var(GRAPH_CHART, "y")
    r2 = x * x + y * y
    return r2, (r2 * x).scale(2)


@dataclass
class JetMapping:
    """z -> z + sum f_j, w2 -> w2 + sum g_j, w3 -> w3 + sum h_j; each
    component a weighted-homogeneous polynomial in (z, w2, w3)."""

    f: Dict[int, TruncatedSeries] = field(default_factory=dict)
    g: Dict[int, TruncatedSeries] = field(default_factory=dict)
    h: Dict[int, TruncatedSeries] = field(default_factory=dict)

    def components(self):
        z, w2, w3 = (_var(CR_CHART, n) for n in CR_CHART.names)
        tot = lambda d: sum(d.values(), TruncatedSeries.zero(CR_CHART))
        return [z + tot(self.f), w2 + tot(self.g), w3 + tot(self.h)]

    def check_weights(self):
        for name, d, shift in (("f", self.f, 0), ("g", self.g, 1), ("h", self.h, 2)):
            for w, s in d.items():
                if any(CR_CHART.weight_of(e) != w for e in s.coeffs):
                    raise SphericityError(f"{name}{w} is not of pure weight {w}")

    def is_identity(self):
        return all(s.is_zero() for d in (self.f, self.g, self.h) for s in d.values())


def jet_transport(m: JetMapping, P: PreparedJets) -> PreparedJets:
    """Prepared jets of the image of the prepared surface under m."""
    m.check_weights()
    F, G = P.graph()
    Fn, Gn = push(F, G, m.components(), JET_CUTOFF)
    return PreparedJets.from_graph(Fn, Gn)


# ---------------------------------------------------------------- step 0
@dataclass
class Step0Result:
    jets: PreparedJets
    maps: List[Tuple[TruncatedSeries, TruncatedSeries, TruncatedSeries]]


def _coeff(s, **powers):
    exp = tuple(powers.get(n, 0) for n in s.vars.names)
    return s[exp].re


def _cr_unit(text_or_series):
    return text_or_series


def normalize_step0(F: TruncatedSeries, G: TruncatedSeries, cutoff: int = JET_CUTOFF) -> Step0Result:
    """Bring centered unit-chart jets to the prepared shape."""
    if F.vars != GRAPH_UNIT:
        raise SphericityError("step 0 expects jets in the unit-weight graph chart")
    F, G = F.truncate(cutoff), G.truncate(cutoff)
    z, w2, w3 = (_var(CR_UNIT, n) for n in CR_UNIT.names)
    maps = []

    def apply(H):
        nonlocal F, G
        F, G = push(F, G, H, cutoff)
        maps.append(tuple(H))

    # (a) linear terms: w_k -> w_k - i * lhat_k with Re lhat_k = linear part
    lins = []
    for S in (F, G):
        a, b = _coeff(S, x=1), _coeff(S, y=1)
        c2, c3 = _coeff(S, u2=1), _coeff(S, u3=1)
        lins.append(z.scale(GaussianRational(a, -b)) + w2.scale(c2) + w3.scale(c3))
    if any(not l.is_zero() for l in lins):
        apply([z, w2 - lins[0].scale(I), w3 - lins[1].scale(I)])
    # (b) harmonic quadratic terms
    harm = []
    herm = []
    for S in (F, G):
        a, b, c = _coeff(S, x=2), _coeff(S, x=1, y=1), _coeff(S, y=2)
        alpha = GaussianRational((a - c) / 2, -b / 2)
        harm.append((z * z).scale(alpha))
        herm.append((a + c) / 2)
    if any(not h.is_zero() for h in harm):
        apply([z, w2 - harm[0].scale(I), w3 - harm[1].scale(I)])
    # (c) real mixing so that the Levi form is |z|^2 in v2 and 0 in v3
    b2, b3 = herm
    nrm = b2 * b2 + b3 * b3
    if nrm == 0:
        raise SphericityError("Levi form vanishes: the surface is degenerate")
    if (b2, b3) != (1, 0):
        apply([z, w2.scale(b2 / nrm) + w3.scale(b3 / nrm), w2.scale(-b3) + w3.scale(b2)])
    # (d) u2 * (linear in z) in v3: w3 -> w3 + c z w2
    ex, ey = _coeff(G, x=1, u2=1), _coeff(G, y=1, u2=1)
    if ex or ey:
        # u2*(ex x + ey y) = u2 * Re(e z) with e = ex - i ey; Im(c z w2) = u2 Im(c z) + ...
        e = GaussianRational(ex, -ey)
        c = -(e * I)  # Im(-i e z) = -Re(e z)
        apply([z, w2, w3 + (z * w2).scale(c)])
    # (e) harmonic cubic part of v3 and normalization of the hermitian part
    c30, c21, c12, c03 = (_coeff(G, x=3), _coeff(G, x=2, y=1), _coeff(G, x=1, y=2), _coeff(G, y=3))
    # cubic = Re(a z^3) + |z|^2 Re(b z); solve for a, b
    # Re(a z^3) = ar(x^3 - 3xy^2) - ai(3x^2y - y^3); |z|^2 Re(bz) = (x^2+y^2)(br x - bi y)
    rows = [
        [1, 0, 1, 0],   # x^3: ar + br
        [0, -3, 0, -1],  # x^2 y: -3ai - bi
        [-3, 0, 1, 0],  # x y^2: -3ar + br
        [0, 1, 0, -1],  # y^3: ai - bi
    ]
    sol = linalg.solve([[Fraction(v) for v in r] for r in rows], [c30, c21, c12, c03])
    ar, ai, br, bi = sol[0]
    a3 = GaussianRational(ar, ai)
    if a3:
        apply([z, w2, w3 - (z * z * z).scale(a3 * I)])
    bb = GaussianRational(br, bi)
    if not bb:
        raise SphericityError("cubic term of v3 vanishes: the surface is not totally non-degenerate")
    # z_old = mu z_new with b mu = 2; w2_old = |mu|^2 w2_new; w3_old = s w3_new
    mu = bb.inverse() * 2
    s = mu.norm()
    if (mu, s) != (ONE, 1):
        apply([z.scale(mu.inverse()), w2.scale(Fraction(1) / mu.norm()), w3.scale(Fraction(1) / s)])
    Fw = F.retable(GRAPH_CHART)
    Gw = G.retable(GRAPH_CHART)
    return Step0Result(PreparedJets.from_graph(Fw, Gw), maps)


# ---------------------------------------------------------------- steps 1-3
@dataclass
class RealLinearSystem:
    step: int
    matrix: List[List[Fraction]]
    rhs: List[Fraction]
    unknowns: List[str]
    equations: List[str]

    @property
    def shape(self):
        """(equations, unknowns)."""
        return len(self.equations), len(self.unknowns)

    def solve(self):
        return linalg.solve(self.matrix, self.rhs)

    def rank(self):
        return linalg.rank(self.matrix)


def _holo_basis(weight):
    """Real basis of weighted-homogeneous holomorphic polynomials: each
    monomial with coefficient 1 and with coefficient i."""
    out = []
    for e in _monomials(CR_CHART, weight):
        mono = TruncatedSeries.monomial(CR_CHART, e)
        name = "*".join(f"{n}^{p}" if p > 1 else n for n, p in zip(CR_CHART.names, e) if p) or "1"
        out.append((f"Re[{name}]", mono))
        out.append((f"Im[{name}]", mono.scale(I)))
    return out


def _model_bindings():
    x, y, u2, u3 = (_var(GRAPH_CHART, n) for n in GRAPH_CHART.names)
    r2 = x * x + y * y
    return {"z": x + y.scale(I), "w2": u2 + r2.scale(I), "w3": u3 + (r2 * x).scale(2 * I)}


def linear_effect(part: str, s: TruncatedSeries):
    """Contribution of one map component to (F_{k+2}, G_{k+3})."""
    b = _model_bindings()
    zero = TruncatedSeries.zero(GRAPH_CHART)
    if part == "g":
        return s.substitute(b, GRAPH_CHART).imag_part(), zero
    if part == "h":
        return zero, s.substitute(b, GRAPH_CHART).imag_part()
    x, y = _var(GRAPH_CHART, "x"), _var(GRAPH_CHART, "y")
    zbar = x - y.scale(I)
    r2 = x * x + y * y
    fs = s.substitute(b, GRAPH_CHART)
    dF = -(zbar * fs).scale(2).real_part()
    dG = -((r2.scale(2) + zbar * zbar) * fs).scale(2).real_part()
    return dF, dG


def build_step_system(k: int, P: PreparedJets) -> RealLinearSystem:
    if k not in STEP_WEIGHTS:
        raise SphericityError("steps are 1, 2, 3")
    for j in range(1, k):
        wf, wg = STEP_WEIGHTS[j]
        if not (P.F[wf].is_zero() and P.G[wg].is_zero()):
            raise SphericityError(f"step {k} needs the jets normalized through step {j}")
    wf, wg = STEP_WEIGHTS[k]
    unknowns, cols = [], []
    for part, w in (("f", k + 1), ("g", k + 2), ("h", k + 3)):
        for label, s in _holo_basis(w):
            dF, dG = linear_effect(part, s)
            unknowns.append(f"{part}{w}.{label}")
            cols.append((dF, dG))
    eq_monos = [("F", e) for e in _monomials(GRAPH_CHART, wf)] + [("G", e) for e in _monomials(GRAPH_CHART, wg)]
    matrix, rhs, labels = [], [], []
    for which, e in eq_monos:
        row = []
        for dF, dG in cols:
            src = dF if which == "F" else dG
            c = src[e]
            if c.im:
                raise SphericityError("linearized effect is not real")
            row.append(c.re)
        target = (P.F[wf] if which == "F" else P.G[wg])[e]
        matrix.append(row)
        rhs.append(-target.re)
        mono = "*".join(f"{n}^{p}" if p > 1 else n for n, p in zip(GRAPH_CHART.names, e) if p)
        labels.append(f"{which}{wf if which == 'F' else wg}[{mono}]")
    return RealLinearSystem(k, matrix, rhs, unknowns, labels)


def mapping_from_solution(k: int, x) -> JetMapping:
    m = JetMapping()
    idx = 0
    for part, w in (("f", k + 1), ("g", k + 2), ("h", k + 3)):
        acc = TruncatedSeries.zero(CR_CHART)
        for _label, s in _holo_basis(w):
            if x[idx]:
                acc = acc + s.scale(x[idx])
            idx += 1
        getattr(m, part)[w] = acc
    return m


# ---------------------------------------------------------------- driver
@dataclass
class SphericityResult:
    verdict: str  # "spherical" | "non_spherical"
    stage: Optional[int] = None
    step0_maps: list = field(default_factory=list)
    steps: List[JetMapping] = field(default_factory=list)
    systems: Dict[int, Tuple[int, int]] = field(default_factory=dict)
    ranks: Dict[int, int] = field(default_factory=dict)
    kernels: Dict[int, int] = field(default_factory=dict)
    witness: Optional[str] = None
    prepared: Optional[PreparedJets] = None
    notes: List[str] = field(default_factory=list)

    @property
    def spherical(self):
        return self.verdict == "spherical"


def prepared_jets(spec: SurfaceSpec, cutoff: int = JET_CUTOFF):
    comp = compile_surface(spec, cutoff)
    return normalize_step0(comp.F, comp.G, cutoff)


def is_spherical(spec: SurfaceSpec, cutoff: int = JET_CUTOFF) -> SphericityResult:
    for v in spec.params.values():
        if not isinstance(v, Fraction):
            raise SphericityError("parameters must be rational")
    if total_nondegeneracy(spec) != "totally_nondegenerate":
        raise SphericityError(f"{spec.id} is degenerate; sphericity is not defined")
    s0 = prepared_jets(spec, cutoff)
    P = s0.jets
    res = SphericityResult("spherical", step0_maps=s0.maps, prepared=P)
    for k in (1, 2, 3):
        system = build_step_system(k, P)
        res.systems[k] = system.shape
        res.ranks[k] = system.rank()
        sol = system.solve()
        if sol is None:
            res.verdict = "non_spherical"
            res.stage = k
            res.witness = _witness(system)
            if k == 1:
                res.notes.append("step 1 inconsistent, contrary to the expected solvability")
            return res
        x, kernel = sol
        res.kernels[k] = len(kernel)
        if kernel:
            # the greedy reading takes the particular solution; with a
            # nonzero kernel later steps could depend on the choice
            res.notes.append(f"step {k} kernel has dimension {len(kernel)}; particular solution used")
        m = mapping_from_solution(k, x)
        P = jet_transport(m, P)
        wf, wg = STEP_WEIGHTS[k]
        if not (P.F[wf].is_zero() and P.G[wg].is_zero()):
            raise SphericityError(f"step {k} solution did not clear F{wf}, G{wg}")
        res.steps.append(m)
    res.prepared = P
    return res


def _witness(system: RealLinearSystem) -> str:
    """A left-null vector y with y A = 0 but y b != 0, as text."""
    At = linalg.transpose(system.matrix)
    for y in linalg.nullspace(At, len(system.matrix)):
        val = sum((a * b for a, b in zip(y, system.rhs)), Fraction(0))
        if val:
            text = ""
            for c, lab in zip(y, system.equations):
                if c:
                    sign = "-" if c < 0 else "+"
                    text += f" {sign} {abs(c)}*{lab}" if text else f"{c}*{lab}"
            return f"combination {text} of the equations has zero left side and right side {val}"
    return "inconsistent"


# ---------------------------------------------------------------- certificates
def replay_certificate(spec: SurfaceSpec, step0_maps, steps, cutoff: int = JET_CUTOFF) -> PreparedJets:
    """Independent re-check: compile afresh and push through every map."""
    comp = compile_surface(spec, cutoff)
    F, G = comp.F.truncate(cutoff), comp.G.truncate(cutoff)
    for H in step0_maps:
        F, G = push(F, G, list(H), cutoff)
    P = PreparedJets.from_graph(F.retable(GRAPH_CHART), G.retable(GRAPH_CHART))
    for m in steps:
        P = jet_transport(m, P)
    return P


def text_to_series(text: str, vars: VariableTable) -> TruncatedSeries:
    env = {n: _var(vars, n) for n in vars.names}
    return _expr.evaluate(_expr.parse(text), env)


def certificate_text(spec: SurfaceSpec, res: SphericityResult) -> str:
    lines = [f"id: {spec.id}", "params:" + (" " + spec.param_string() if spec.params else ""),
             f"verdict: {res.verdict}"]
    if res.stage:
        lines.append(f"stage: {res.stage}")
        lines.append(f"witness: {res.witness}")
    for i, H in enumerate(res.step0_maps, 1):
        lines.append(f"step0.{i}: " + " | ".join(series_to_text(h) for h in H))
    for k, m in enumerate(res.steps, 1):
        for part, d in (("f", m.f), ("g", m.g), ("h", m.h)):
            for w, s in sorted(d.items()):
                lines.append(f"step{k}.{part}{w}: {series_to_text(s)}")
    return "\n".join(lines) + "\n"


def parse_certificate(text: str):
    """Inverse of certificate_text: (step0 maps, step mappings)."""
    step0, steps = [], {}
    for line in text.strip("\n").split("\n"):
        key, _, val = line.partition(": ")
        if key.startswith("step0."):
            step0.append(tuple(text_to_series(p.strip(), CR_UNIT) for p in val.split("|")))
        elif key.startswith("step") and "." in key:
            k = int(key[4:key.index(".")])
            part = key[key.index(".") + 1]
            w = int(key[key.index(".") + 2:])
            m = steps.setdefault(k, JetMapping())
            getattr(m, part)[w] = text_to_series(val, CR_CHART)
    return step0, [steps[k] for k in sorted(steps)]


# ---------------------------------------------------------------- tube cross-check
def tube_profile(spec: SurfaceSpec, order: int = 8):
    """Taylor coefficients (orders 1..order) of the curve y -> (v2, v3) at
    the base point, or None when the surface is not an explicit tube."""
    if spec.implicit or not spec.eq_v2:
        return None
    allowed = {"y"} | set(spec.params)
    nodes = [_expr.parse(spec.eq_v2), _expr.parse(spec.eq_v3)]
    if any(not _expr.free_names(n) <= allowed for n in nodes):
        return None
    line = VariableTable(("y",))
    env = dict(spec.params)
    env["y"] = _var(line, "y") + spec.base[1]
    out = []
    for n in nodes:
        s = _expr.evaluate(n, env, order)
        out.append([s[(k,)].re for k in range(1, order + 1)])
    return out


def tube_cross_check(spec: SurfaceSpec, order: int = 8) -> Optional[bool]:
    """For a tube over the curve (y, psi2(y), psi3(y)): is there a linear
    coordinate s = a y + b psi2 + c psi3 with s^2 and s^3 in the span of
    y, psi2, psi3 (to the given order)?  That is the statement that the
    curve is affinely the twisted cubic.  None when not a tube."""
    import sympy

    prof = tube_profile(spec, order)
    if prof is None:
        return None
    t = sympy.Symbol("t")
    b, c = sympy.symbols("b c")
    Y = t
    P2 = sum(sympy.Rational(v.numerator, v.denominator) * t ** (k + 1) for k, v in enumerate(prof[0]))
    P3 = sum(sympy.Rational(v.numerator, v.denominator) * t ** (k + 1) for k, v in enumerate(prof[1]))
    # normalize the linear coefficient of s to 1
    a = 1 - b * P2.coeff(t, 1) - c * P3.coeff(t, 1)
    s = sympy.expand(a * Y + b * P2 + c * P3)
    basis = [Y, P2, P3]
    M = sympy.Matrix([[sympy.expand(v).coeff(t, k) for v in basis] for k in (1, 2, 3)])
    if M.det() == 0:
        return False
    eqs = []
    for p in (2, 3):
        target = sympy.expand(s ** p)
        coef = M.LUsolve(sympy.Matrix([target.coeff(t, k) for k in (1, 2, 3)]))
        rest = sympy.expand(target - sum(cf * v for cf, v in zip(coef, basis)))
        eqs += [sympy.numer(sympy.together(rest.coeff(t, k))) for k in range(4, order + 1)]
    eqs = [sympy.expand(e) for e in eqs if sympy.expand(e) != 0]
    if not eqs:
        return True
    G = sympy.groebner(eqs, b, c, order="lex")
    if list(G.exprs) == [1]:
        return False
    for sol in sympy.solve(list(G.exprs), [b, c], dict=True):
        if all(v.is_real for v in sol.values()):
            return True
    return False
