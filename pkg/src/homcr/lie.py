"""Four-dimensional real Lie algebras given by structure constants.

Basis vectors are indexed 0..3 internally (X1..X4 in the usual naming).
``c[i][j][k]`` is the coefficient of e_k in [e_i, e_j].

The classifier follows the eight-way split I..VIII: non-solvable algebras
are told apart by the Killing form, an abelian 3-dimensional ideal means
type VI, and the remaining solvable families are separated by how a
complement of the derived algebra acts on it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple

from . import linalg
from .series import rational_root

N = 4


class LieAlgebraError(ValueError):
    pass


def _zero_tensor():
    return [[[Fraction(0)] * N for _ in range(N)] for _ in range(N)]


@dataclass(frozen=True)
class TypeTag:
    """Classification tag such as I(1/2), II, VI.  ``q`` is None for the
    parameter-free types and for I/III algebras whose parameter is not
    rational."""

    name: str
    q: Optional[Fraction] = None

    def __str__(self):
        if self.name in ("I", "III") and self.q is not None:
            return f"{self.name}({self.q})"
        return self.name

    @classmethod
    def parse(cls, text: str) -> "TypeTag":
        text = text.strip()
        if "(" in text:
            name, rest = text.split("(", 1)
            if not rest.endswith(")"):
                raise LieAlgebraError(f"bad type tag {text!r}")
            tag = cls(name.strip(), Fraction(rest[:-1]))
        else:
            tag = cls(text)
        if tag.name not in TYPE_NAMES:
            raise LieAlgebraError(f"unknown type {tag.name!r}")
        if tag.name in ("I", "III") and tag.q is None:
            raise LieAlgebraError(f"type {tag.name} needs a parameter, e.g. {tag.name}(1)")
        if tag.name not in ("I", "III") and tag.q is not None:
            raise LieAlgebraError(f"type {tag.name} takes no parameter")
        return tag


TYPE_NAMES = ("I", "II", "III", "IV", "V", "VI", "VII", "VIII")


class LieAlgebra4:
    """Structure constants of a 4-dimensional real Lie algebra."""

    def __init__(self, c=None, params=None):
        t = _zero_tensor()
        if c is not None:
            for i in range(N):
                for j in range(N):
                    for k in range(N):
                        t[i][j][k] = Fraction(c[i][j][k])
        self.c = t
        self.params = dict(params or {})

    @classmethod
    def from_brackets(cls, brackets, params=None):
        """Build from {(i, j): {k: coeff}} with 1-based indices; the
        antisymmetric partner is filled in."""
        c = _zero_tensor()
        for (i, j), out in brackets.items():
            for k, v in out.items():
                c[i - 1][j - 1][k - 1] = Fraction(v)
                c[j - 1][i - 1][k - 1] = -Fraction(v)
        return cls(c, params)

    def bracket(self, x, y):
        """Bracket of two coordinate vectors."""
        out = [Fraction(0)] * N
        for i in range(N):
            if not x[i]:
                continue
            for j in range(N):
                if not y[j]:
                    continue
                f = x[i] * y[j]
                cij = self.c[i][j]
                for k in range(N):
                    if cij[k]:
                        out[k] += f * cij[k]
        return out

    def ad(self, x):
        """Matrix of Y -> [x, Y]; column j is [x, e_j]."""
        cols = [self.bracket(x, _unit(j)) for j in range(N)]
        return linalg.transpose(cols)

    def right_ad(self, x):
        """Matrix of Y -> [Y, x]."""
        return [[-v for v in row] for row in self.ad(x)]

    def change_basis(self, p):
        """Constants in the basis f_i = sum_a p[i][a] e_a (p invertible)."""
        pinv = linalg.inverse([[Fraction(v) for v in row] for row in p])
        c = _zero_tensor()
        for i in range(N):
            for j in range(N):
                b = self.bracket(p[i], p[j])  # in e-coordinates
                # b = sum_n c'_ij^n f_n = sum_n c'_n p[n] -> c' = b p^{-1}
                for n in range(N):
                    c[i][j][n] = sum((b[a] * pinv[a][n] for a in range(N)), Fraction(0))
        return LieAlgebra4(c, self.params)

    def __eq__(self, other):
        return isinstance(other, LieAlgebra4) and self.c == other.c

    def nonzero_brackets(self):
        out = {}
        for i in range(N):
            for j in range(i + 1, N):
                v = {k + 1: self.c[i][j][k] for k in range(N) if self.c[i][j][k]}
                if v:
                    out[(i + 1, j + 1)] = v
        return out

    def __repr__(self):
        parts = []
        for (i, j), v in self.nonzero_brackets().items():
            rhs = " + ".join(f"{c}*X{k}" for k, c in v.items())
            parts.append(f"[X{i},X{j}]={rhs}")
        return "LieAlgebra4(" + ", ".join(parts) + ")"


def _unit(j):
    return [Fraction(int(i == j)) for i in range(N)]


# ---------------------------------------------------------------- validation
@dataclass
class ValidationReport:
    ok: bool
    violation: Optional[str] = None


def validate(alg: LieAlgebra4) -> ValidationReport:
    c = alg.c
    for i in range(N):
        for j in range(N):
            for k in range(N):
                if c[i][j][k] != -c[j][i][k]:
                    return ValidationReport(False, f"antisymmetry fails at ({i+1},{j+1})")
    for i in range(N):
        for j in range(i + 1, N):
            for k in range(j + 1, N):
                ei, ej, ek = _unit(i), _unit(j), _unit(k)
                s = [
                    a + b + d
                    for a, b, d in zip(
                        alg.bracket(ei, alg.bracket(ej, ek)),
                        alg.bracket(ej, alg.bracket(ek, ei)),
                        alg.bracket(ek, alg.bracket(ei, ej)),
                    )
                ]
                if any(s):
                    return ValidationReport(False, f"Jacobi identity fails at ({i+1},{j+1},{k+1})")
    return ValidationReport(True)


# ---------------------------------------------------------------- subspaces
def _span_brackets(alg, a, b):
    vecs = [alg.bracket(x, y) for x in a for y in b]
    return linalg.column_space([v for v in vecs if any(v)])


def derived(alg, sub=None):
    basis = sub if sub is not None else [_unit(i) for i in range(N)]
    return _span_brackets(alg, basis, basis)


def center(alg):
    # x central iff ad(x) = 0: linear conditions sum_i x_i c[i][j][k] = 0
    rows = [[alg.c[i][j][k] for i in range(N)] for j in range(N) for k in range(N)]
    return linalg.nullspace(rows, N)


def _complement(sub):
    """Coordinate vectors completing ``sub`` to a basis (lowest indices first)."""
    cur = [list(v) for v in sub]
    out = []
    for j in range(N):
        e = _unit(j)
        if linalg.rank(cur + [e]) > len(cur):
            cur.append(e)
            out.append(e)
    return out


def _coords_in(basis, v):
    """Coordinates of v in the given (row) basis of a subspace."""
    sol = linalg.solve(linalg.transpose(basis), v)
    if sol is None:
        raise LieAlgebraError("vector not in subspace")
    return sol[0]


def _restricted(alg, x, basis):
    """Matrix of Y -> [Y, x] on the invariant subspace spanned by basis."""
    cols = [_coords_in(basis, alg.bracket(b, x)) for b in basis]
    return linalg.transpose(cols)


def is_solvable(alg):
    cur = [_unit(i) for i in range(N)]
    while cur:
        nxt = derived(alg, cur)
        if len(nxt) == len(cur):
            return False
        cur = nxt
    return True


def has_abelian_3_ideal(alg) -> bool:
    d = derived(alg)
    dim = len(d)
    if dim == 0:
        return True
    if dim == 4:
        return False
    if dim == 3:
        return not any(any(alg.bracket(a, b)) for a in d for b in d)
    if dim == 2:
        if any(any(alg.bracket(d[0], d[1])) for _ in [0]):
            return False
        comp = _complement(d)
        # [s*c0 + t*c1, D] = 0 for some (s, t) != 0
        rows = []
        for b in d:
            r0 = alg.bracket(comp[0], b)
            r1 = alg.bracket(comp[1], b)
            rows.extend([[r0[k], r1[k]] for k in range(N)])
        return linalg.rank(rows) < 2
    # dim == 1: bracket is omega(x, y) * d
    dvec = d[0]
    k0 = next(k for k in range(N) if dvec[k])

    def omega(x, y):
        return alg.bracket(x, y)[k0] / dvec[k0]

    rows = [[omega(dvec, _unit(j)) for j in range(N)]]
    cent = linalg.nullspace(rows, N)
    gram = [[omega(a, b) for b in cent] for a in cent]
    r = linalg.rank(gram) if gram else 0
    return len(cent) - r // 2 >= 3


def killing_form(alg):
    ads = [alg.ad(_unit(i)) for i in range(N)]
    return [[sum(linalg.matmul(ads[i], ads[j])[k][k] for k in range(N)) for j in range(N)]
            for i in range(N)]


def killing_signature(alg):
    return linalg.signature(killing_form(alg))


def _normalize_scaled(coeffs):
    """Scale-invariant form of a characteristic polynomial whose k-th
    coefficient scales like lambda^k under x -> lambda x."""
    n = len(coeffs) - 1
    c = [coeffs[n - k] for k in range(n + 1)]  # c[k] multiplies t^(n-k)
    if c[1]:
        return tuple(c[k] / c[1] ** k for k in range(n + 1))
    if n >= 2 and c[2]:
        a2 = c[2]
        inv = [("sign2", 1 if a2 > 0 else -1)]
        if n >= 3:
            inv.append(("c3^2/|c2|^3", c[3] ** 2 / abs(a2) ** 3))
        if n >= 4:
            inv.append(("c4/c2^2", c[4] / a2 ** 2))
        return tuple(inv)
    if n >= 4 and c[3]:
        return (("c4^3/c3^4", c[4] ** 3 / c[3] ** 4),)
    if n >= 4 and c[4]:
        return (("sign4", 1 if c[4] > 0 else -1),)
    return ("nilpotent",)


def _semisimple_2x2(m) -> bool:
    """True when a 2x2 rational matrix is diagonalizable over C."""
    tr = m[0][0] + m[1][1]
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if tr * tr - 4 * det != 0:
        return True
    return m[0][1] == 0 and m[1][0] == 0


@dataclass(frozen=True)
class AlgebraFingerprint:
    dim_derived: int
    dim_second_derived: int
    dim_center: int
    solvable: bool
    has_abelian_3_ideal: bool
    ad_char_polys: Tuple
    killing_signature: Tuple[int, int, int]


def fingerprint(alg: LieAlgebra4) -> AlgebraFingerprint:
    d = derived(alg)
    d2 = derived(alg, d) if d else []
    return AlgebraFingerprint(
        dim_derived=len(d),
        dim_second_derived=len(d2),
        dim_center=len(center(alg)),
        solvable=is_solvable(alg),
        has_abelian_3_ideal=has_abelian_3_ideal(alg),
        ad_char_polys=_ad_invariants(alg, d, d2),
        killing_signature=killing_signature(alg),
    )


def _ad_invariants(alg, d, d2):
    """Basis-independent data about how a complement of the derived algebra
    acts: for codimension 1 the normalized characteristic polynomials of
    ad x on the algebra and on D/[D,D] plus semisimplicity there; for
    codimension 2 the discriminant sign of the pencil det(s A + t B) on D."""
    codim = N - len(d)
    if len(d2) == len(d) and d:
        return ()  # non-solvable: D = [D, D], nothing canonical to record
    if codim == 1 and len(d) == 3:
        x = _complement(d)[0]
        full = _normalize_scaled(linalg.charpoly(alg.right_ad(x)))
        quot = _quotient_action(alg, x, d, d2)
        inv = [("ad", full)]
        if quot is not None:
            inv.append(("ad_on_D/D'", _normalize_scaled(linalg.charpoly(quot))))
            if len(quot) == 2:
                inv.append(("semisimple", _semisimple_2x2(quot)))
        return tuple(inv)
    if codim == 2 and len(d2) == 0:
        form = _pencil_form(alg, d)
        if form is None:
            return (("pencil", "degenerate"),)
        a, b, c = form
        if a == b == c == 0:
            return (("pencil", "singular"),)
        disc = b * b - 4 * a * c
        return (("pencil", (disc > 0) - (disc < 0)),)
    return ()


def _quotient_action(alg, x, d, d2):
    """Matrix of Y -> [Y, x] on D / [D, D]."""
    if len(d) - len(d2) == 0:
        return None
    comp = _complement_in(d, d2)
    basis = list(d2) + comp
    m = len(d2)
    cols = []
    for b in comp:
        coords = _coords_in(basis, alg.bracket(b, x))
        cols.append(coords[m:])
    return linalg.transpose(cols)


def _complement_in(big, small):
    cur = [list(v) for v in small]
    out = []
    for v in big:
        if linalg.rank(cur + [v]) > len(cur):
            cur.append(v)
            out.append(v)
    return out


def _pencil_form(alg, d):
    """det(s A + t B) = a s^2 + b s t + c t^2 where A, B are the actions of
    two complement vectors on the 2-dimensional abelian derived algebra."""
    comp = _complement(d)
    if len(comp) != 2:
        return None
    A = _restricted(alg, comp[0], d)
    B = _restricted(alg, comp[1], d)

    def det(s, t):
        m = [[s * A[i][j] + t * B[i][j] for j in range(2)] for i in range(2)]
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]

    a = det(1, 0)
    c = det(0, 1)
    b = det(1, 1) - a - c
    return a, b, c


# ---------------------------------------------------------------- classifier
@dataclass
class Classification:
    tag: Optional[TypeTag]
    fingerprint: AlgebraFingerprint
    note: str = ""

    @property
    def known(self):
        return self.tag is not None

    def __str__(self):
        return str(self.tag) if self.tag else "unknown"


def classify_type(alg: LieAlgebra4) -> Classification:
    rep = validate(alg)
    if not rep.ok:
        raise LieAlgebraError(rep.violation)
    fp = fingerprint(alg)
    if not fp.solvable:
        sig = fp.killing_signature
        if sig == (2, 1, 1):
            return Classification(TypeTag("VII"), fp)
        if sig == (0, 3, 1):
            return Classification(TypeTag("VIII"), fp)
        return Classification(None, fp, "non-solvable with unexpected Killing signature")
    if fp.has_abelian_3_ideal:
        return Classification(TypeTag("VI"), fp)
    d = derived(alg)
    if len(d) == 3:
        d2 = derived(alg, d)
        if len(d2) != 1:
            return Classification(None, fp, "derived algebra is not a Heisenberg algebra")
        x = _complement(d)[0]
        m = _quotient_action(alg, x, d, d2)
        return _classify_heisenberg(m, fp)
    if len(d) == 2:
        form = _pencil_form(alg, d)
        a, b, c = form
        if a == b == c == 0:
            return Classification(None, fp, "pencil identically singular")
        disc = b * b - 4 * a * c
        if disc < 0:
            return Classification(TypeTag("V"), fp)
        if disc > 0:
            return Classification(TypeTag("IV"), fp)
        # double root: the singular member of the pencil must be a nonzero
        # nilpotent map
        comp = _complement(d)
        A = _restricted(alg, comp[0], d)
        B = _restricted(alg, comp[1], d)
        s, t = (-b / (2 * a), Fraction(1)) if a else (Fraction(1), Fraction(0))
        sing = [[s * A[i][j] + t * B[i][j] for j in range(2)] for i in range(2)]
        if any(any(r) for r in sing) and sing[0][0] + sing[1][1] == 0:
            return Classification(TypeTag("I", Fraction(0)), fp)
        return Classification(None, fp, "pencil with a repeated non-nilpotent root")
    return Classification(None, fp, "no template matches")


def _classify_heisenberg(m, fp):
    tr = m[0][0] + m[1][1]
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if det == 0:
        return Classification(None, fp, "action on D/[D,D] is singular")
    disc = tr * tr - 4 * det
    if disc < 0:
        # eigenvalues a +- b i, q = |a| / b
        a = tr / 2
        b2 = det - a * a
        b = rational_root(b2, 2)
        if b is None:
            return Classification(TypeTag("III", None), fp, "q is irrational")
        return Classification(TypeTag("III", abs(a) / b), fp)
    if disc == 0:
        if _semisimple_2x2(m):
            return Classification(TypeTag("I", Fraction(1)), fp)
        return Classification(TypeTag("II"), fp)
    root = rational_root(disc, 2)
    if root is None:
        return Classification(TypeTag("I", None), fp, "q is irrational")
    l1, l2 = (tr + root) / 2, (tr - root) / 2
    small, big = sorted((l1, l2), key=abs)
    if abs(small) == abs(big):
        small, big = min(l1, l2), max(l1, l2)
    return Classification(TypeTag("I", small / big), fp)


# ---------------------------------------------------------------- templates
def template(tag) -> LieAlgebra4:
    """Structure constants of the normal form for a type tag."""
    if isinstance(tag, str):
        tag = TypeTag.parse(tag)
    q = tag.q
    name = tag.name
    if name == "I":
        return LieAlgebra4.from_brackets({
            (2, 3): {1: 1}, (1, 4): {1: q + 1}, (2, 4): {2: 1}, (3, 4): {3: q},
        }, {"q": q})
    if name == "II":
        return LieAlgebra4.from_brackets({
            (2, 3): {1: 1}, (1, 4): {1: 2}, (2, 4): {2: 1}, (3, 4): {2: 1, 3: 1},
        })
    if name == "III":
        return LieAlgebra4.from_brackets({
            (2, 3): {1: 1}, (1, 4): {1: 2 * q}, (2, 4): {2: q, 3: -1}, (3, 4): {2: 1, 3: q},
        }, {"q": q})
    if name == "IV":
        return LieAlgebra4.from_brackets({(2, 3): {2: 1}, (1, 4): {1: 1}})
    if name == "V":
        return LieAlgebra4.from_brackets({
            (1, 3): {1: 1}, (2, 3): {2: 1}, (1, 4): {2: 1}, (2, 4): {1: -1},
        })
    if name == "VI":
        return type_vi([[0] * 3 for _ in range(3)])
    if name == "VII":
        return LieAlgebra4.from_brackets({(1, 2): {1: 1}, (1, 3): {2: 2}, (2, 3): {3: 1}})
    if name == "VIII":
        return LieAlgebra4.from_brackets({(1, 2): {3: 1}, (1, 3): {2: -1}, (2, 3): {1: 1}})
    raise LieAlgebraError(f"unknown type {name!r}")


def type_vi(C) -> LieAlgebra4:
    """Abelian ideal span{X1, X2, X3} with [X_j, X4] = sum_k C[k][j] X_k."""
    br = {}
    for j in range(3):
        out = {k + 1: Fraction(C[k][j]) for k in range(3) if C[k][j]}
        if out:
            br[(j + 1, 4)] = out
    return LieAlgebra4.from_brackets(br, {"C": tuple(tuple(Fraction(v) for v in r) for r in C)})


def abelian_3_subalgebras_unique(alg) -> bool:
    """True when the algebra has exactly one abelian 3-dimensional ideal and
    no other abelian 3-dimensional subalgebra through it, checked via
    rank(ad x restricted) >= 2 for x outside the ideal.  Only meaningful
    when has_abelian_3_ideal holds and the derived algebra sits inside."""
    d = derived(alg)
    if len(d) != 3:
        return False
    x = _complement(d)[0]
    return linalg.rank(_restricted(alg, x, d)) >= 2


# ---------------------------------------------------------------- text format
def dumps_algebra(alg: LieAlgebra4, name: str = "") -> str:
    """Record in the catalog's "key: value" style.  One line per nonzero
    bracket [X_i, X_j] (i < j) listing its four coordinates."""
    lines = [f"algebra: {name}" if name else "algebra:"]
    for (i, j), v in alg.nonzero_brackets().items():
        coords = " ".join(str(v.get(k, 0)) for k in range(1, N + 1))
        lines.append(f"bracket.{i}.{j}: {coords}")
    return "\n".join(lines) + "\n"


def loads_algebra(text: str) -> LieAlgebra4:
    """Inverse of dumps_algebra.  Brackets with i > j are accepted and
    flipped; a pair given twice is an error."""
    brackets = {}
    for line in text.strip("\n").split("\n"):
        if not line.strip() or line.startswith("#"):
            continue
        key, sep, val = line.partition(":")
        if not sep:
            raise LieAlgebraError(f"malformed line {line!r}")
        key = key.strip()
        if key == "algebra":
            continue
        parts = key.split(".")
        if len(parts) != 3 or parts[0] != "bracket":
            raise LieAlgebraError(f"unknown key {key!r}")
        i, j = int(parts[1]), int(parts[2])
        if not (1 <= i <= N and 1 <= j <= N) or i == j:
            raise LieAlgebraError(f"bad bracket indices {i}, {j}")
        coords = [Fraction(t) for t in val.split()]
        if len(coords) != N:
            raise LieAlgebraError(f"{key} needs {N} coordinates")
        if i > j:
            i, j, coords = j, i, [-c for c in coords]
        if (i, j) in brackets:
            raise LieAlgebraError(f"bracket [{i},{j}] given twice")
        brackets[(i, j)] = {k + 1: c for k, c in enumerate(coords) if c}
    return LieAlgebra4.from_brackets(brackets)
