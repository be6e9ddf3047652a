"""Affine vector-field realizations of the eight algebra types.

``realize_algebra`` returns four affine holomorphic fields whose bracket
relations are exactly the normal form of the tag, together with a point
where their values are linearly independent over R.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import expr as _expr
from .fields import CR_UNIT, HoloVectorField, evaluate_at, rank_over_R, structure_constants_of
from .lie import LieAlgebraError, TypeTag, template, type_vi
from .series import GaussianRational, TruncatedSeries


@dataclass
class Realization:
    tag: TypeTag
    fields: list
    point: tuple
    texts: list


def _fields(texts, params=None):
    return [HoloVectorField.from_exprs(t, params or {}) for t in texts]


def _linear_texts(m):
    """Coefficient texts of the linear field xi -> m xi."""
    names = ("z", "w2", "w3")
    out = []
    for row in m:
        terms = []
        for c, n in zip(row, names):
            c = Fraction(c)
            if not c:
                continue
            if c == 1:
                terms.append(n)
            elif c == -1:
                terms.append("-" + n)
            else:
                terms.append(f"{_frac_text(c)}*{n}")
        s = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        out.append(s)
    return tuple(out)


def _frac_text(c):
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"({c.numerator}/{c.denominator})"


SEARCH = (0, 1, -1, 2)


def find_sample_point(fields, preferred=()):
    """First point (preferred ones, then a fixed grid of Gaussian integers)
    where the four values have real rank 4."""
    for p in preferred:
        if rank_over_R([evaluate_at(X, p) for X in fields]) == 4:
            return tuple(GaussianRational.coerce(v) for v in p)
    for a, b, c, d, e, f in product(SEARCH, repeat=6):
        p = (GaussianRational(a, b), GaussianRational(c, d), GaussianRational(e, f))
        if rank_over_R([evaluate_at(X, p) for X in fields]) == 4:
            return p
    raise LieAlgebraError("no sample point with real rank 4 found")


I_ = GaussianRational(0, 1)


def realize_algebra(tag, C=None) -> Realization:
    """Affine realization of a type tag.  For type VI pass the 3x3 matrix
    C of the action of X4 on the abelian ideal ([X_j, X4] = sum_k C[k][j] X_k)."""
    if isinstance(tag, str):
        tag = TypeTag.parse(tag)
    name, q = tag.name, tag.q
    if q is not None:
        q = Fraction(q)
        if name == "I" and abs(q) > 1:
            raise LieAlgebraError("type I needs |q| <= 1")
        if name == "III" and q < 0:
            raise LieAlgebraError("type III needs q >= 0")
    qs = _frac_text(q) if q is not None else None
    pref = ()
    if name == "I":
        texts = [("0", "1", "0"), ("0", "0", "1"), ("1", "w3", "0"),
                 (f"{qs}*z", f"({qs} + 1)*w2", "w3")]
        pref = ((I_, 0, I_),)
    elif name == "II":
        texts = [("0", "2", "0"), ("0", "-z", "1"), ("1", "w3", "0"), ("z", "2*w2", "z + w3")]
    elif name == "III":
        texts = [("0", "2", "0"), ("0", "-z", "1"), ("1", "w3", "0"),
                 (f"{qs}*z - w3", f"2*{qs}*w2", f"z + {qs}*w3")]
    elif name == "IV":
        texts = [("0", "1", "0"), ("0", "0", "1"), ("1", "0", "w3"), ("i", "w2", "0")]
        pref = ((0, I_, I_),)
    elif name == "V":
        texts = [("0", "1", "0"), ("0", "0", "1"), ("z", "w2", "w3"), ("i*z", "i*z - w3", "z + w2")]
        pref = ((1, 0, 0),)
    elif name == "VI":
        C = [[Fraction(v) for v in row] for row in (C or [[0] * 3] * 3)]
        if any(any(r) for r in C):
            x4 = _linear_texts(C)
            j = next(j for j in range(3) if any(C[k][j] for k in range(3)))
            pt = [0, 0, 0]
            pt[j] = I_
            pref = (tuple(pt),)
        else:
            x4 = ("i", "0", "0")
            pref = ((0, 0, 0),)
        texts = [("1", "0", "0"), ("0", "1", "0"), ("0", "0", "1"), x4]
    elif name in ("VII", "VIII"):
        alg = template(tag)
        texts = []
        for i in range(3):
            # linear field of the transposed ad matrix on span{X1, X2, X3}
            ad = [[alg.c[i][j][k] for k in range(3)] for j in range(3)]
            texts.append(_linear_texts(ad))
        texts.append(("z", "w2", "w3"))
        if name == "VIII":
            pref = ((0, 1, I_),)
    else:
        raise LieAlgebraError(f"unknown type {name!r}")
    fields = _fields(texts)
    point = find_sample_point(fields, pref)
    return Realization(tag, fields, point, texts)


def realize_template(tag, C=None):
    """The structure constants the realization is meant to have."""
    if isinstance(tag, str):
        tag = TypeTag.parse(tag)
    if tag.name == "VI" and C is not None:
        return type_vi(C)
    return template(tag)


def format_realization(r: Realization, C=None) -> str:
    """Catalog-style record: type, sample point, the four fields with
    canonical coefficient texts, and the matrix C for type VI."""
    lines = [f"type: {r.tag}"]
    if C is not None:
        lines.append("matrix: " + " ; ".join(" ".join(str(Fraction(v)) for v in row) for row in C))
    lines.append("point: " + " | ".join(_expr.gaussian_to_text(GaussianRational.coerce(p)) for p in r.point))
    for k, X in enumerate(r.fields, 1):
        lines.append(f"field.{k}: " + " | ".join(_expr.series_to_text(c) for c in X.coeffs))
    return "\n".join(lines) + "\n"


def parse_realization(text: str):
    """(tag, C or None, point, field texts) from format_realization output."""
    rec = {}
    for line in text.strip("\n").split("\n"):
        key, sep, val = line.partition(": ")
        if not sep:
            raise LieAlgebraError(f"malformed line {line!r}")
        rec[key] = val
    tag = TypeTag.parse(rec["type"])
    C = None
    if "matrix" in rec:
        C = [[Fraction(v) for v in row.split()] for row in rec["matrix"].split(";")]
    point = tuple(_expr.evaluate_scalar(_expr.parse(p.strip()), {}) for p in rec["point"].split("|"))
    texts = []
    k = 1
    while f"field.{k}" in rec:
        texts.append(tuple(p.strip() for p in rec[f"field.{k}"].split("|")))
        k += 1
    return tag, C, point, texts


def self_check(r: Realization, C=None):
    """Closure, rank 4 at the point and exact agreement with the template."""
    alg = structure_constants_of(r.fields)
    rank = rank_over_R([evaluate_at(X, r.point) for X in r.fields])
    return alg == realize_template(r.tag, C) and rank == 4, alg, rank
