"""The catalog of locally homogeneous surfaces (1.1)-(3.19).

Each :class:`Family` is a parametric entry; :meth:`Family.instance`
produces a concrete :class:`SurfaceSpec` at rational parameter values.
Surfaces are graphs ``v2 = F, v3 = G`` over (x, y, u2, u3), except (3.6)
whose v3 is given implicitly by ``implicit(E)`` meaning E = 0.

The module also owns the line-oriented text format::

    id: 3.3
    name: Ic
    params: alpha=3 gamma=0
    eq.v2: x*y^alpha + gamma*y^(alpha + 1)
    eq.v3: y^alpha
    base: 0 1 0 0 0 1
    field.1: 0 | 1 | 0
    ...
    type: I(1/alpha)
    tags: rigid

Records are separated by one blank line.  ``base`` lists x y u2 v2 u3 v3.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from . import expr as _expr
from .lie import LieAlgebraError, TypeTag
from .series import GaussianRational

TAGS = ("degenerate", "cubic", "rigid", "spherical", "symmetric")
BASE_NAMES = ("x", "y", "u2", "v2", "u3", "v3")


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class Automorphism:
    """Polynomial self-map of a surface fixing a point.  ``law`` gives the
    induced action on the basis as rows (X_i -> sum_j law[i][j] X_j),
    written as expressions in the map parameter ``lam`` if any."""

    name: str
    map: Tuple[str, str, str]
    fixed: Tuple[str, str, str]
    law: Optional[Tuple[Tuple[str, ...], ...]] = None
    params: Tuple[Tuple[str, Fraction], ...] = ()


@dataclass
class SurfaceSpec:
    id: str
    name: str
    params: Dict[str, Fraction]
    eq_v2: str
    eq_v3: str
    base: Tuple[Fraction, ...]
    fields: Tuple[Tuple[str, str, str], ...]
    type: str
    tags: Tuple[str, ...]
    alt_eq_v3: Optional[str] = None
    note: Optional[str] = None
    in_range: bool = True
    range_note: Optional[str] = None

    @property
    def implicit(self) -> bool:
        return self.eq_v3.startswith("implicit(")

    @property
    def base_complex(self):
        x, y, u2, v2, u3, v3 = self.base
        return (GaussianRational(x, y), GaussianRational(u2, v2), GaussianRational(u3, v3))

    def declared_type(self) -> Optional[TypeTag]:
        if not self.type:
            return None
        return resolve_type(self.type, self.params)

    def has_basis(self) -> bool:
        return bool(self.fields)

    def param_string(self) -> str:
        return " ".join(f"{k}={v}" for k, v in self.params.items())

    def label(self) -> str:
        p = self.param_string()
        return f"{self.id} {self.name}" + (f" [{p}]" if p else "")


def resolve_type(text: str, params) -> TypeTag:
    text = text.strip()
    if "(" in text:
        name, rest = text.split("(", 1)
        value = _expr.evaluate_scalar(_expr.parse(rest[:-1]), params)
        if not value.is_real():
            raise CatalogError(f"type parameter {value} is not real")
        return TypeTag(name.strip(), value.re)
    return TypeTag.parse(text)


@dataclass
class Family:
    id: str
    name: str
    eq_v2: str
    eq_v3: str
    base: Tuple[str, ...]
    fields: Tuple[Tuple[str, str, str], ...]
    type: str
    tags: Tuple[str, ...]
    param_names: Tuple[str, ...] = ()
    samples: Tuple[Tuple[Fraction, ...], ...] = ((),)
    constraint: Optional[Callable] = None
    constraint_text: str = ""
    exceptions: Dict[Tuple[Fraction, ...], str] = field(default_factory=dict)
    automorphisms: Tuple[Automorphism, ...] = ()
    alt_eq_v3: Optional[str] = None
    note: Optional[str] = None

    @property
    def parametric(self) -> bool:
        return bool(self.param_names)

    @property
    def default_params(self) -> Dict[str, Fraction]:
        return dict(zip(self.param_names, self.samples[0]))

    def check_params(self, params: Dict[str, Fraction]) -> Tuple[bool, Optional[str]]:
        missing = [p for p in self.param_names if p not in params]
        if missing:
            raise CatalogError(f"{self.id}: missing parameters {missing}")
        extra = [p for p in params if p not in self.param_names]
        if extra:
            raise CatalogError(f"{self.id}: unknown parameters {extra}")
        key = tuple(params[p] for p in self.param_names)
        if key in self.exceptions:
            return False, self.exceptions[key]
        if self.constraint and not self.constraint(**params):
            return False, f"outside the family range {self.constraint_text}"
        return True, None

    def instance(self, params=None, allow_out_of_range=True) -> SurfaceSpec:
        params = dict(self.default_params if params is None else params)
        params = {k: Fraction(v) for k, v in params.items()}
        ok, why = self.check_params(params)
        if not ok and not allow_out_of_range:
            raise CatalogError(f"{self.id}: {why}")
        base = tuple(_scalar_real(b, params) for b in self.base)
        tags = list(self.tags)
        if not ok and why and why.startswith("spherical") and "spherical" not in tags:
            tags.append("spherical")
        return SurfaceSpec(
            id=self.id, name=self.name, params=params, eq_v2=self.eq_v2, eq_v3=self.eq_v3,
            base=base, fields=self.fields, type=self.type, tags=tuple(t for t in TAGS if t in tags),
            alt_eq_v3=self.alt_eq_v3, note=self.note, in_range=ok, range_note=why,
        )

    def sample_instances(self):
        return [self.instance(dict(zip(self.param_names, s))) for s in self.samples]


def _scalar_real(text, params):
    v = _expr.evaluate_scalar(_expr.parse(text), params)
    if not v.is_real():
        raise CatalogError(f"base coordinate {text} is not real")
    return v.re


F = Fraction

T1 = ("0", "1", "0")
T2 = ("0", "0", "1")
TZ = ("1", "0", "0")
HEIS3 = ("1", "w3", "0")  # d/dz + w3 d/dw2
TUBE = (TZ, ("0", "1", "0"), ("0", "0", "1"))

GAMMAS = tuple((g,) for g in (F(0), F(-1), F(-1, 2), F(1, 2), F(1), F(2)))


def _families() -> List[Family]:
    fams = []
    add = fams.append
    add(Family(
        "1.1", "plane", "0", "0", ("0",) * 6,
        (TZ, ("i", "0", "0"), T1, T2), "VI", ("degenerate",),
        note="real plane; direct product of a Levi-flat hypersurface and a line",
    ))
    add(Family(
        "1.2", "sphere x line", "sqrt(1 - x^2 - y^2 - u2^2)", "0", ("0", "0", "0", "1", "0", "0"),
        (("i*z", "-i*w2", "0"), ("w2", "-z", "0"), ("i*w2", "i*z", "0"), T2), "VIII", ("degenerate",),
        note="|z|^2 + |w2|^2 = 1, v3 = 0, written as a graph near (0, i, 0)",
    ))
    add(Family(
        "1.3", "Cartan x line", "", "", (), (), "", ("degenerate",),
        note="M^3 x R for a homogeneous Cartan hypersurface M^3 in C^2; listed only",
    ))
    add(Family(
        "2.1", "cubic", "y^2", "y^3", ("0",) * 6,
        TUBE + (("i", "2*z", "3*w2"),), "VI", ("cubic", "spherical", "symmetric"),
        automorphisms=tuple(
            Automorphism(f"scaling lam={lam}", ("lam*z", "lam^2*w2", "lam^3*w3"), ("0", "0", "0"),
                         (("lam", "0", "0", "0"), ("0", "lam^2", "0", "0"),
                          ("0", "0", "lam^3", "0"), ("0", "0", "0", "lam")),
                         (("lam", lam),))
            for lam in (F(-1), F(2), F(1, 3))
        ),
        note="tube form of v2 = |z|^2, v3 = 2|z|^2 Re z; five-dimensional algebra, four fields listed",
    ))
    add(Family(
        "3.1", "Ia", "x*exp(y) + gamma*y*exp(y)", "exp(y)", ("0", "0", "0", "0", "0", "1"),
        (T1, T2, HEIS3, ("i - gamma", "w2", "w3")), "I(0)", ("rigid",),
        ("gamma",), GAMMAS,
    ))
    add(Family(
        "3.2", "Ib", "x/y + gamma*log(y)", "1/y", ("0", "1", "0", "0", "0", "1"),
        (T1, T2, HEIS3, ("-z", "-i*gamma", "w3")), "I(-1)", ("rigid", "symmetric"),
        ("gamma",), GAMMAS,
        automorphisms=(Automorphism(
            "sigma", ("w3", "-w2 + z*w3 + 1", "z"), ("i", "0", "i"),
            (("-1", "0", "0", "0"), ("0", "0", "1", "0"), ("0", "1", "0", "0"), ("0", "0", "0", "-1")),
        ),),
    ))
    add(Family(
        "3.3", "Ic", "x*y^alpha + gamma*y^(alpha + 1)", "y^alpha", ("0", "1", "0", "gamma", "0", "1"),
        (T1, T2, HEIS3, ("z/alpha", "(1/alpha + 1)*w2", "w3")), "I(1/alpha)", ("rigid",),
        ("alpha", "gamma"), ((F(3), F(0)), (F(-2), F(1, 2)), (F(3, 2), F(-1))),
        lambda alpha, gamma: abs(alpha) > 1 and alpha != 2, "|alpha| > 1, alpha != 2",
        exceptions={(F(2), g): "spherical: alpha = 2 is excluded, the surface is equivalent to the cubic (2.1)"
                    for (g,) in GAMMAS},
    ))
    add(Family(
        "3.4", "II", "x*y*log(y) + gamma*y^2", "y*log(y)", ("0", "1", "0", "gamma", "0", "0"),
        (T1, T2, HEIS3, ("z", "2*w2 + z^2/2", "z + w3")), "II", ("rigid",),
        ("gamma",), GAMMAS,
    ))
    add(Family(
        "3.5", "IIIa", "x*sqrt(1 - y^2) + gamma*arcsin(y)", "sqrt(1 - y^2)", ("0", "0", "0", "0", "0", "1"),
        (T1, T2, HEIS3, ("-w3", "z^2/2 - w3^2/2 - i*gamma", "z")), "III(0)", ("rigid", "symmetric"),
        ("gamma",), GAMMAS,
        automorphisms=(Automorphism(
            "epsilon", ("-z", "-w2", "w3"), ("0", "0", "i"),
            (("-1", "0", "0", "0"), ("0", "1", "0", "0"), ("0", "0", "-1", "0"), ("0", "0", "0", "-1")),
        ),),
    ))
    add(Family(
        "3.6", "IIIb", "x*v3 + gamma*(v3^2 + y^2)", "implicit(exp(2*q*arctan(v3/y)) - v3^2 - y^2)",
        ("0", "1", "0", "gamma", "0", "0"),
        (T1, T2, HEIS3, ("q*z - w3", "2*q*w2 + z^2/2 - w3^2/2", "z + q*w3")), "III(q)", ("rigid",),
        ("q", "gamma"), ((F(1), F(0)), (F(1, 2), F(1)), (F(2), F(-1, 2))),
        lambda q, gamma: q > 0, "q > 0",
        alt_eq_v3="implicit(exp(q*arctan(v3/y)) - v3^2 - y^2)",
        note="the list writes exp(q*arctg(v3/y)); the construction writes exp(2q*arctg(v3/y)). "
             "eq.v3 follows the construction so that the algebra has type III(q); "
             "alt.eq.v3 is the list form, equal to eq.v3 with q replaced by q/2",
    ))
    add(Family(
        "3.7", "IV", "exp(y)", "exp(x + delta*y)", ("0", "0", "0", "1", "0", "1"),
        (T1, T2, ("1", "0", "w3"), ("i - delta", "w2", "0")), "IV", ("rigid",),
        ("delta",), tuple((d,) for d in (F(0), F(-1), F(-1, 2), F(1, 2), F(1), F(2))),
    ))
    add(Family(
        "3.8", "Va", "exp(x + alpha*y)*cos(beta*y)", "exp(x + alpha*y)*sin(beta*y)",
        ("0", "0", "0", "1", "0", "0"),
        (T1, T2, ("1", "w2", "w3"), ("(i - alpha)/beta", "-w3", "w2")), "V", ("rigid",),
        ("alpha", "beta"), ((F(0), F(2)), (F(1), F(1)), (F(-1, 2), F(1, 2))),
        lambda alpha, beta: beta > 0 and (alpha, beta) != (0, 1), "beta > 0, (alpha, beta) != (0, 1)",
    ))
    add(Family(
        "3.9", "Vb", "exp(x)*y*cos(y)", "exp(x)*y*sin(y)", ("0",) * 6,
        (T1, T2, ("1", "w2", "w3"), ("i", "i*exp(z) - w3", "w2 + exp(z)")), "V", ("rigid",),
    ))
    add(Family(
        "3.10", "VIa", "y^alpha", "y^beta", ("0", "1", "0", "1", "0", "1"),
        TUBE + (("z", "alpha*w2", "beta*w3"),), "VI", ("rigid",),
        ("alpha", "beta"), ((F(2), F(4)), (F(3, 2), F(2)), (F(2), F(5, 2)), (F(3), F(4))),
        lambda alpha, beta: 1 < alpha < beta and (alpha, beta) != (2, 3),
        "1 < alpha < beta, (alpha, beta) != (2, 3)",
        exceptions={(F(2), F(3)): "spherical: (alpha, beta) = (2, 3) is the cubic (2.1)"},
    ))
    add(Family(
        "3.11", "VIb", "exp(a*y)", "exp(y)", ("0", "0", "0", "1", "0", "1"),
        TUBE + (("i", "a*w2", "w3"),), "VI", ("rigid",),
        ("a",), ((F(1, 2),), (F(-1, 2),), (F(1, 3),)),
        lambda a: 0 < abs(a) < 1, "0 < |a| < 1",
        exceptions={(F(-1),): "a = -1 is the surface (3.12) after a linear change"},
    ))
    add(Family(
        "3.12", "VIb(-1)", "cosh(y)", "sinh(y)", ("0", "0", "0", "1", "0", "0"),
        TUBE + (("i", "w3", "w2"),), "VI", ("rigid", "symmetric"),
        automorphisms=(Automorphism(
            "involution", ("-z", "w2", "-w3"), ("0", "i", "0"),
            (("-1", "0", "0", "0"), ("0", "1", "0", "0"), ("0", "0", "-1", "0"), ("0", "0", "0", "-1")),
        ),),
    ))
    add(Family(
        "3.13", "VIc", "y*log(y)", "y^alpha", ("0", "1", "0", "0", "0", "1"),
        TUBE + (("z", "w2 + z", "alpha*w3"),), "VI", ("rigid",),
        ("alpha",), ((F(2),), (F(-1),), (F(1, 2),)),
        lambda alpha: alpha not in (0, 1), "alpha not in {0, 1}",
    ))
    add(Family(
        "3.14", "VId", "y*exp(y)", "exp(y)", ("0", "0", "0", "0", "0", "1"),
        TUBE + (("i", "w2 + w3", "w3"),), "VI", ("rigid",),
    ))
    add(Family(
        "3.15", "VIe", "y^2", "exp(y)", ("0", "0", "0", "0", "0", "1"),
        TUBE + (("i", "2*z", "w3"),), "VI", ("rigid",),
    ))
    add(Family(
        "3.16", "VIf", "y*log(y)^2", "y*log(y)", ("0", "1", "0", "0", "0", "0"),
        TUBE + (("z", "w2 + 2*w3", "w3 + z"),), "VI", ("rigid",),
    ))
    add(Family(
        "3.17", "VIg", "exp(y)*cos(beta*y)", "exp(y)*sin(beta*y)", ("0", "0", "0", "1", "0", "0"),
        TUBE + (("i", "w2 - beta*w3", "w3 + beta*w2"),), "VI", ("rigid",),
        ("beta",), ((F(1, 2),), (F(1),), (F(2),)),
        lambda beta: beta > 0, "beta > 0",
    ))
    add(Family(
        "3.18", "VIh", "y^alpha*cos(beta*log(y))", "y^alpha*sin(beta*log(y))", ("0", "1", "0", "1", "0", "0"),
        TUBE + (("z", "alpha*w2 - beta*w3", "alpha*w3 + beta*w2"),), "VI", ("rigid",),
        ("alpha", "beta"), ((F(1), F(1)), (F(2), F(1, 2)), (F(-1), F(2))),
        lambda alpha, beta: beta > 0, "beta > 0",
    ))
    add(Family(
        "3.19", "VIi", "cos(y)", "sin(y)", ("0", "0", "0", "1", "0", "0"),
        TUBE + (("i", "-w3", "w2"),), "VI", ("rigid", "symmetric"),
        automorphisms=(Automorphism(
            "involution", ("-z", "w2", "-w3"), ("0", "i", "0"),
            (("-1", "0", "0", "0"), ("0", "1", "0", "0"), ("0", "0", "-1", "0"), ("0", "0", "0", "-1")),
        ),),
    ))
    return fams


FAMILIES: Tuple[Family, ...] = tuple(_families())
_BY_ID = {f.id: f for f in FAMILIES}
_BY_NAME = {f.name: f for f in FAMILIES}


def _sort_key(fid):
    a, b = fid.split(".")
    return int(a), int(b)


def family(key: str) -> Family:
    """Look up by id ("3.5") or name ("IIIa")."""
    f = _BY_ID.get(key) or _BY_NAME.get(key)
    if f is None:
        raise CatalogError(f"unknown catalog entry {key!r}")
    return f


def families(tag=None, type_name=None) -> List[Family]:
    out = sorted(FAMILIES, key=lambda f: _sort_key(f.id))
    if tag:
        out = [f for f in out if tag in f.tags]
    if type_name:
        out = [f for f in out if family_type_name(f) == type_name]
    return out


_ROMAN = re.compile(r"^(VIII|VII|VI|V|IV|III|II|I)(?![IV])")


def family_type_name(f: Family) -> Optional[str]:
    """Roman type of a classified entry (3.1)-(3.19), read off its name
    (Ia -> I, VIb(-1) -> VI); None for the plane, sphere x line, cubic."""
    m = _ROMAN.match(f.name)
    return m.group(1) if m else None


def default_catalog() -> List[SurfaceSpec]:
    return [f.instance() for f in families()]


def all_samples(nondegenerate_only=False) -> List[SurfaceSpec]:
    out = []
    for f in families():
        if nondegenerate_only and "degenerate" in f.tags:
            continue
        if not f.fields:
            continue
        out.extend(f.sample_instances())
    return out


# ---------------------------------------------------------------- text format
def format_record(s: SurfaceSpec) -> str:
    lines = [
        f"id: {s.id}",
        f"name: {s.name}",
        "params:" + (" " + s.param_string() if s.params else ""),
        f"eq.v2: {s.eq_v2}",
        f"eq.v3: {s.eq_v3}",
    ]
    if s.alt_eq_v3:
        lines.append(f"alt.eq.v3: {s.alt_eq_v3}")
    lines.append("base:" + ("".join(f" {b}" for b in s.base)))
    for k, fld in enumerate(s.fields, 1):
        lines.append(f"field.{k}: " + " | ".join(fld))
    lines.append(f"type: {s.type}")
    lines.append("tags:" + ("".join(f" {t}" for t in s.tags)))
    if s.note:
        lines.append(f"note: {s.note}")
    if not s.in_range:
        lines.append(f"range: {s.range_note}")
    return "\n".join(lines) + "\n"


def dumps(specs) -> str:
    return "\n".join(format_record(s) for s in specs)


def _canonical_expr(text):
    if not text:
        return text
    node = _expr.parse(text, extra_functions=("implicit",))
    out = _expr.serialize(node)
    if out != text:
        raise CatalogError(f"expression is not in canonical form: {text!r} (canonical {out!r})")
    return text


def parse_record(text: str) -> SurfaceSpec:
    rec: Dict[str, str] = {}
    order = []
    for line in text.strip("\n").split("\n"):
        if ":" not in line:
            raise CatalogError(f"malformed line {line!r}")
        key, _, val = line.partition(":")
        key = key.strip()
        if key in rec:
            raise CatalogError(f"duplicate field {key!r}")
        rec[key] = val[1:] if val.startswith(" ") else val
        order.append(key)
    for req in ("id", "name", "params", "eq.v2", "eq.v3", "base", "type", "tags"):
        if req not in rec:
            raise CatalogError(f"record lacks {req!r}")
    params = {}
    for item in rec["params"].split():
        k, _, v = item.partition("=")
        if not _ or not k:
            raise CatalogError(f"bad parameter {item!r}")
        params[k] = Fraction(v)
    base = tuple(Fraction(b) for b in rec["base"].split()) if rec["base"] else ()
    if base and len(base) != 6:
        raise CatalogError("base needs six rationals x y u2 v2 u3 v3")
    fields = []
    k = 1
    while f"field.{k}" in rec:
        parts = tuple(p.strip() for p in rec[f"field.{k}"].split("|"))
        if len(parts) != 3:
            raise CatalogError(f"field.{k} needs three coefficients")
        fields.append(tuple(_canonical_expr(p) for p in parts))
        k += 1
    tags = tuple(rec["tags"].split())
    for t in tags:
        if t not in TAGS:
            raise CatalogError(f"unknown tag {t!r}")
    spec = SurfaceSpec(
        id=rec["id"], name=rec["name"], params=params,
        eq_v2=_canonical_expr(rec["eq.v2"]), eq_v3=_canonical_expr(rec["eq.v3"]),
        base=base, fields=tuple(fields), type=rec["type"], tags=tags,
        alt_eq_v3=rec.get("alt.eq.v3"), note=rec.get("note"),
        in_range="range" not in rec, range_note=rec.get("range"),
    )
    return spec


def loads(text: str) -> List[SurfaceSpec]:
    chunks = [c for c in text.split("\n\n") if c.strip()]
    return [parse_record(c) for c in chunks]


def load(path) -> List[SurfaceSpec]:
    with open(path) as fh:
        return loads(fh.read())


def dump(specs, path):
    with open(path, "w") as fh:
        fh.write(dumps(specs))
